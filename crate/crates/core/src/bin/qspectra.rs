fn main() {
    std::process::exit(qspectra::cli::main_with_args(std::env::args_os()));
}
