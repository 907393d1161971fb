fn main() {
    std::process::exit(elliptic_calc::cli::run());
}
