fn main() {
    std::process::exit(tdual_cli::run(std::env::args_os()));
}
