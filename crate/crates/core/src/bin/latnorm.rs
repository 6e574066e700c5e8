fn main() {
    std::process::exit(latnorm::cli::run(std::env::args_os()));
}
