fn main() {
    std::process::exit(bipath::cli::run());
}
