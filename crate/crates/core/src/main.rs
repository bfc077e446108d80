fn main() {
    std::process::exit(softupdate::cli::main());
}
