fn main() {
    std::process::exit(charbound::cli::cli_main(std::env::args_os()));
}
