fn main() {
    std::process::exit(riblube::cli::run(std::env::args()));
}
