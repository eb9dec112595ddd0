fn main() {
    std::process::exit(kite_core::run_cli(std::env::args_os()));
}
