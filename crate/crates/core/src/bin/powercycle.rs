fn main() {
    std::process::exit(powercycle::cli::dispatch(std::env::args_os()));
}
