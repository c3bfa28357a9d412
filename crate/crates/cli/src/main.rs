fn main() {
    std::process::exit(moshinsky2d_cli::run(std::env::args_os()));
}
