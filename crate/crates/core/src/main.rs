fn main() {
    std::process::exit(sofic::cli::run(std::env::args_os()));
}
