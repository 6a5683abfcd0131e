fn main() {
    std::process::exit(hypercone::cli::run(std::env::args_os()));
}
