fn main() {
    std::process::exit(qconv::cli::run(std::env::args_os()));
}
