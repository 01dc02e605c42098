fn main() {
    std::process::exit(mixhelly::cli::main_with_args(std::env::args_os()));
}
