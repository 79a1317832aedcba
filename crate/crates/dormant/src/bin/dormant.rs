fn main() {
    std::process::exit(dormant::cli::main_from_env());
}
