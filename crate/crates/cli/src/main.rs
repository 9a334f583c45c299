fn main() {
    std::process::exit(abelpoly_cli::main_with_stdin());
}
