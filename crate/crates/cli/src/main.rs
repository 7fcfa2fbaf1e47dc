fn main() {
    std::process::exit(pe_cli::run(std::env::args_os()));
}
