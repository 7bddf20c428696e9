fn main() {
    std::process::exit(chainspec::cli::main_with_args(std::env::args_os()));
}
