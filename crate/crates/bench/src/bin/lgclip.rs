fn main() {
    std::process::exit(lgclip_bench::cli::main_with_args(std::env::args_os()));
}
