fn main() {
    std::process::exit(reprostat::cli::run());
}
