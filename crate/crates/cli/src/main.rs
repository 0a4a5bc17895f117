fn main() {
    std::process::exit(eqcurve_cli::main_with_args(std::env::args_os()));
}
