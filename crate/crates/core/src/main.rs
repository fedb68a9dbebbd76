fn main() {
    std::process::exit(coverlab::cli::run(std::env::args_os()));
}
