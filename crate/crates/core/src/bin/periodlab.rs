fn main() {
    std::process::exit(periodlab::cli::run(std::env::args_os()));
}
