fn main() {
    std::process::exit(susy_ladder::cli::main_with_args(std::env::args_os()));
}
