fn main() {
    std::process::exit(subtree_match::cli::run(std::env::args_os()));
}
