fn main() {
    std::process::exit(pseudolinear::cli::run(std::env::args_os()));
}
