fn main() {
    std::process::exit(dvo_cli::cli_main(std::env::args_os()));
}
