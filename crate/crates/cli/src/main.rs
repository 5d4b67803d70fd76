fn main() {
    std::process::exit(diffset_cli::run(std::env::args_os()));
}
