fn main() {
    std::process::exit(logcut::cli::main());
}
