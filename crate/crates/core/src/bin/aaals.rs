fn main() {
    std::process::exit(aaals::cli::run(std::env::args_os()));
}
