fn main() {
    let code = acring::cli::main_with_args(std::env::args().collect());
    std::process::exit(code);
}
