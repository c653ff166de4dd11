fn main() {
    std::process::exit(spinphase_cli::run(std::env::args_os()));
}
