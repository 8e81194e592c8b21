//! Supertraces of the heat kernel: what depends on t and what does not.
//!
//! On a finite Hodge complex the alternating heat trace
//! Σ_q (−1)^q tr e^{−tΔ_q} is constant in t and equals the Euler
//! characteristic (non-harmonic eigenvalues cancel in ladder pairs). On a
//! doubled complex carrying a duality operator, the star-weighted trace is
//! likewise t-independent and computes the signature — the same number the
//! harmonic restriction gives.
//!
//! Run with: cargo run --example heat_traces

use spectral_torsion::hodge::star::DoubledComplex;
use spectral_torsion::hodge::traces::alternating_heat_trace;
use spectral_torsion::sample;
use spectral_torsion::Result;

fn main() -> Result<()> {
    let mut rng = sample::rng(3);
    let cx = sample::complex_with_cohomology(&[2, 2], &[1, 0, 1], &mut rng)?;
    let euler = cx.euler_characteristic();
    println!("two-step complex, Euler characteristic {euler}");
    println!("{:>8} {:>22} {:>14}", "t", "alternating trace", "drift");
    for t in [0.05, 0.2, 1.0, 3.0, 10.0] {
        let tr = alternating_heat_trace(&cx, t);
        println!("{t:>8.2} {tr:>22.15} {:>14.2e}", (tr - euler as f64).abs());
    }

    println!();
    let doubled = DoubledComplex::new(&cx)?;
    let signature = doubled.signature()?;
    println!("doubled complex carrying a duality operator: signature {signature}");
    println!("{:>8} {:>22} {:>14}", "t", "star-weighted trace", "drift");
    for t in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let tr = doubled.signature_trace(t)?;
        println!(
            "{t:>8.2} {tr:>22.15} {:>14.2e}",
            (tr - signature as f64).abs()
        );
    }
    Ok(())
}
