fn main() {
    std::process::exit(qviterbi::cli::run(std::env::args_os()));
}
