fn main() {
    std::process::exit(kuramoto_pacemaker::harness::cli::cli_main(std::env::args_os()));
}
