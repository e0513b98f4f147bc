fn main() {
    std::process::exit(spectralab::cli::run(std::env::args()));
}
