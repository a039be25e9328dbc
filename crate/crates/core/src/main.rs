fn main() {
    std::process::exit(wedge_iso::cli::run(std::env::args_os()));
}
