fn main() {
    std::process::exit(evex::cli::run(std::env::args_os()));
}
