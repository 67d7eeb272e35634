fn main() {
    std::process::exit(probident_cli::run(std::env::args_os()));
}
