fn main() {
    std::process::exit(gdstar::cli::run());
}
