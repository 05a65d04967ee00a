fn main() {
    std::process::exit(recouple::cli::main());
}
