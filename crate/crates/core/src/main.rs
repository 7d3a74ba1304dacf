fn main() {
    std::process::exit(stirap_gates::cli::run());
}
