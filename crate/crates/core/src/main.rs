fn main() {
    std::process::exit(slice_bohr::cli::run(std::env::args_os()));
}
