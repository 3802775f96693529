fn main() {
    std::process::exit(symppt::cli::run(std::env::args_os()));
}
