fn main() {
    std::process::exit(bookem_cli::run(std::env::args_os()));
}
