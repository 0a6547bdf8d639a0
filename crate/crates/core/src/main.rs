fn main() {
    std::process::exit(ttp_validity::cli::main_with_args(std::env::args_os()));
}
