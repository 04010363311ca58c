fn main() {
    std::process::exit(grover_svp::cli::run(std::env::args_os()));
}
