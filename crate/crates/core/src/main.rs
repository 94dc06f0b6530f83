fn main() {
    std::process::exit(cusp_spectra::cli::run(std::env::args_os()));
}
