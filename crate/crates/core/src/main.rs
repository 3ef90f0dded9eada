fn main() {
    std::process::exit(antifourier::cli::run(std::env::args_os()));
}
