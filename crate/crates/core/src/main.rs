fn main() {
    std::process::exit(limitsort::cli::run_cli(std::env::args_os()));
}
