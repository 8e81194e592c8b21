fn main() {
    std::process::exit(spectral_torsion::cli::run());
}
