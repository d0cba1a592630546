fn main() {
    std::process::exit(polyshadow::cli::run(std::env::args_os()));
}
