fn main() {
    std::process::exit(kanext::cli::main());
}
