fn main() {
    std::process::exit(polyjoin_core::cli::run(std::env::args_os()));
}
