fn main() {
    std::process::exit(concordance_cli::run(std::env::args_os()));
}
