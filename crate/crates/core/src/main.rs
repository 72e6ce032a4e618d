fn main() {
    std::process::exit(separable::cli::main_with_args(std::env::args_os()));
}
