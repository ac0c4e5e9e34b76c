fn main() {
    std::process::exit(semiwell::cli::run(std::env::args().collect()));
}
