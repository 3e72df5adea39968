fn main() {
    std::process::exit(floercone::cli::main_entry());
}
