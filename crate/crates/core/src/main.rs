fn main() {
    std::process::exit(sympunct::cli::run_cli(std::env::args_os()));
}
