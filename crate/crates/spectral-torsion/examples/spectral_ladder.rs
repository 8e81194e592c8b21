//! The spectral ladder of a finite Hodge complex.
//!
//! Every nonzero Laplacian eigenvalue λ in degree q splits into a coexact
//! and an exact part, and the differential maps the degree-q coexact
//! λ-eigenspace isomorphically onto the degree-(q+1) exact one. Listing
//! multiplicities per eigenvalue therefore gives a "ladder": N′_q(λ) =
//! N_{q+1}(λ), and the alternating sum Σ_q (−1)^q N_q(λ) vanishes.
//!
//! Run with: cargo run --example spectral_ladder

use spectral_torsion::hodge::ladder::{check_ladder_identity, spectral_ladder};
use spectral_torsion::sample;
use spectral_torsion::Result;

fn main() -> Result<()> {
    let mut rng = sample::rng(42);
    // three-step complex with Betti numbers (1, 0, 0, 1)
    let cx = sample::complex_with_cohomology(&[2, 3, 2], &[1, 0, 0, 1], &mut rng)?;
    println!(
        "complex of dimensions {:?}, Betti numbers {:?}",
        (0..=cx.top()).map(|q| cx.dim(q)).collect::<Vec<_>>(),
        (0..=cx.top()).map(|q| cx.betti(q)).collect::<Vec<_>>(),
    );

    let clusters = spectral_ladder(&cx)?;
    println!();
    println!(
        "{:>14} {:>24} {:>24} {:>6}",
        "lambda", "multiplicity by degree", "coexact | exact", "alt Σ"
    );
    for c in &clusters {
        let pairs: Vec<String> = c
            .coexact
            .iter()
            .zip(&c.exact)
            .map(|(co, ex)| format!("{co}|{ex}"))
            .collect();
        println!(
            "{:>14.8} {:>24} {:>24} {:>6}",
            c.lambda,
            format!("{:?}", c.mult),
            pairs.join(" "),
            c.alternating_multiplicity()
        );
    }

    check_ladder_identity(&clusters)?;
    println!();
    println!("ladder identity N'_q(λ) = N_(q+1)(λ) holds for every cluster");
    Ok(())
}
