fn main() {
    std::process::exit(efn_lab::cli::run_cli(std::env::args_os()));
}
