fn main() {
    std::process::exit(sabban::cli::main_with_env());
}
