fn main() {
    std::process::exit(ap_forge_cli::main_with(std::env::args_os()));
}
