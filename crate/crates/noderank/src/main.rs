fn main() {
    std::process::exit(noderank::cli::dispatch(std::env::args_os()));
}
