fn main() {
    std::process::exit(nhtrack::cli::main_with(std::env::args_os()));
}
