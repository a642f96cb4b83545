fn main() {
    std::process::exit(lfvm::cli::main(std::env::args_os()));
}
