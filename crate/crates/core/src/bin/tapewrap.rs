fn main() {
    std::process::exit(tapewrap::cli::run(std::env::args_os()));
}
