fn main() {
    std::process::exit(qcousin::cli::main());
}
