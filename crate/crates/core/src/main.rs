fn main() {
    std::process::exit(laplaceqm::cli::run());
}
