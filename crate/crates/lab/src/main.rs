fn main() {
    std::process::exit(sgthresh::cli::run(std::env::args_os()));
}
