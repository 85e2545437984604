fn main() {
    std::process::exit(exceptional_cli::run(std::env::args_os()));
}
