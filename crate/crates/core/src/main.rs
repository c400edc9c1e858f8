fn main() {
    std::process::exit(exitcat::cli::main_with_args(std::env::args_os()));
}
