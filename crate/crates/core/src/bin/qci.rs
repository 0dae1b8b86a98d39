fn main() {
    std::process::exit(qci::cli::run(std::env::args_os()));
}
