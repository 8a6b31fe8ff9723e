fn main() {
    std::process::exit(coverforge::cli::main_with_args(std::env::args_os()));
}
