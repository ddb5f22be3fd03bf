fn main() {
    std::process::exit(parcon::cli::run(std::env::args_os()));
}
