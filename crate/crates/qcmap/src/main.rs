fn main() {
    std::process::exit(qcmap::cli::main_entry());
}
