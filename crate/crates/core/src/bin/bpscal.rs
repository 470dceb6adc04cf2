fn main() {
    std::process::exit(bpscal::cli_io::main_with_args(std::env::args_os()));
}
