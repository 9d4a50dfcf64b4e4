fn main() {
    std::process::exit(planar2::cli::dispatch(std::env::args_os()));
}
