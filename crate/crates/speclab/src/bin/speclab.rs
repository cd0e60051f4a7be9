fn main() {
    std::process::exit(speclab::cli::main());
}
