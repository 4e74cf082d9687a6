fn main() {
    std::process::exit(zonalval::cli::run(std::env::args_os()));
}
