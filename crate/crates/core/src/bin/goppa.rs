fn main() {
    std::process::exit(goppa::harness::cli::run(std::env::args_os()));
}
