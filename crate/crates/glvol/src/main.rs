fn main() {
    std::process::exit(glvol::cli::run(std::env::args_os()));
}
