fn main() {
    std::process::exit(pwfp::cli::main_with_args(std::env::args_os()));
}
