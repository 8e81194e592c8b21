//! How the torsion of a fixed complex responds to a variation of the inner
//! products. With α_q = G_q⁻¹ Ġ_q:
//!
//! * δ̇_q = δ_q α_{q+1} − α_q δ_q, hence
//!   Δ̇_q = d_{q−1}(δ_{q−1} α_q − α_{q−1} δ_{q−1}) + (δ_q α_{q+1} − α_q δ_q) d_q;
//! * the partial alternating sums of q-weighted heat-trace derivatives
//!   telescope, leaving explicit boundary terms that vanish at the top
//!   degree ([`trace_identity`]);
//! * d/du log τ = ½ [Σ (−1)^q tr(P_q α_q) − Σ (−1)^q tr α_q], where P_q is
//!   the harmonic projector — so the derivative of a *difference* of two
//!   torsions with the same inner products depends only on the harmonic
//!   projectors.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hodge::HodgeComplex;
use crate::zeta::accum::Acc;

/// α_q = G_q⁻¹ Ġ_q for a family of inner products.
pub fn alpha_from(grams: &[DMatrix<f64>], gram_dots: &[DMatrix<f64>]) -> Result<Vec<DMatrix<f64>>> {
    if grams.len() != gram_dots.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} inner products but {} derivatives",
            grams.len(),
            gram_dots.len()
        )));
    }
    grams
        .iter()
        .zip(gram_dots.iter())
        .enumerate()
        .map(|(q, (g, gd))| {
            if g.shape() != gd.shape() {
                return Err(Error::DimensionMismatch(format!(
                    "derivative in degree {q} has shape {:?}, inner product {:?}",
                    gd.shape(),
                    g.shape()
                )));
            }
            g.clone().lu().solve(gd).ok_or_else(|| {
                Error::GramNotSpd(format!("inner product in degree {q} is singular"))
            })
        })
        .collect()
}

fn check_alpha(cx: &HodgeComplex, alpha: &[DMatrix<f64>]) -> Result<()> {
    if alpha.len() != cx.degrees() {
        return Err(Error::DimensionMismatch(format!(
            "{} degrees but {} variation matrices",
            cx.degrees(),
            alpha.len()
        )));
    }
    for (q, a) in alpha.iter().enumerate() {
        if a.nrows() != cx.dim(q) || a.ncols() != cx.dim(q) {
            return Err(Error::DimensionMismatch(format!(
                "variation in degree {q} is {}x{}, expected {}",
                a.nrows(),
                a.ncols(),
                cx.dim(q)
            )));
        }
    }
    Ok(())
}

/// Δ̇_q for the variation α.
pub fn laplacian_dot(cx: &HodgeComplex, alpha: &[DMatrix<f64>], q: usize) -> Result<DMatrix<f64>> {
    check_alpha(cx, alpha)?;
    let n = cx.dim(q);
    let mut out = DMatrix::zeros(n, n);
    if q > 0 {
        let d = cx.differential(q - 1);
        let delta = cx.delta(q - 1);
        out += &d * (&delta * &alpha[q] - &alpha[q - 1] * &delta);
    }
    if q < cx.top() {
        let d = cx.differential(q);
        let delta = cx.delta(q);
        out += (&delta * &alpha[q + 1] - &alpha[q] * &delta) * &d;
    }
    Ok(out)
}

/// Both sides of the partial telescoping identity
///
/// Σ_{q≤k} (−1)^q q tr(e^{−tΔ_q} Δ̇_q)
///   = Σ_{q≤k} (−1)^q a_q + Σ_{q≤k−1} (−1)^q b_q + (−1)^k k (a_{k+1} − b_k)
///
/// with a_q = tr(e^{−tΔ_q} d δ α_q) and b_q = tr(e^{−tΔ_q} δ d α_q).
/// At k = N the boundary terms vanish and the right side becomes
/// Σ (−1)^q tr(e^{−tΔ_q} Δ_q α_q).
pub fn trace_identity(
    cx: &HodgeComplex,
    alpha: &[DMatrix<f64>],
    t: f64,
    k: usize,
) -> Result<(f64, f64)> {
    check_alpha(cx, alpha)?;
    let top = cx.top();
    if k > top {
        return Err(Error::DimensionMismatch(format!(
            "partial sum index {k} exceeds top degree {top}"
        )));
    }
    let heat: Vec<DMatrix<f64>> = (0..=top).map(|q| cx.heat_operator(q, t)).collect();
    // a_q = tr(H_q dδ α_q), nonzero for 1 ≤ q ≤ N
    let a = |q: usize| -> f64 {
        if q == 0 || q > top {
            return 0.0;
        }
        (&heat[q] * cx.differential(q - 1) * cx.delta(q - 1) * &alpha[q]).trace()
    };
    // b_q = tr(H_q δd α_q), nonzero for 0 ≤ q ≤ N−1
    let b = |q: usize| -> f64 {
        if q >= top {
            return 0.0;
        }
        (&heat[q] * cx.delta(q) * cx.differential(q) * &alpha[q]).trace()
    };

    let mut lhs = Acc::new();
    for q in 0..=k {
        let dot = laplacian_dot(cx, alpha, q)?;
        let term = q as f64 * (&heat[q] * dot).trace();
        lhs.add(if q % 2 == 0 { term } else { -term });
    }

    let mut rhs = Acc::new();
    for q in 0..=k {
        rhs.add(if q % 2 == 0 { a(q) } else { -a(q) });
    }
    for q in 0..k {
        rhs.add(if q % 2 == 0 { b(q) } else { -b(q) });
    }
    let boundary = k as f64 * (a(k + 1) - b(k));
    rhs.add(if k % 2 == 0 { boundary } else { -boundary });

    Ok((lhs.value(), rhs.value()))
}

/// Exact derivative of log τ along the variation α:
/// ½ [Σ (−1)^q tr(P_q α_q) − Σ (−1)^q tr α_q].
pub fn torsion_derivative(cx: &HodgeComplex, alpha: &[DMatrix<f64>]) -> Result<f64> {
    check_alpha(cx, alpha)?;
    let mut acc = Acc::new();
    for q in 0..cx.degrees() {
        let p = cx.harmonic_projector(q);
        let term = 0.5 * ((&p * &alpha[q]).trace() - alpha[q].trace());
        acc.add(if q % 2 == 0 { term } else { -term });
    }
    Ok(acc.value())
}

/// d/du (log τ₁ − log τ₂) for two complexes sharing the same inner-product
/// family: ½ Σ (−1)^q tr(α_q (P¹_q − P²_q)). Everything except the harmonic
/// projectors cancels.
pub fn pair_derivative_difference(
    cx1: &HodgeComplex,
    cx2: &HodgeComplex,
    alpha: &[DMatrix<f64>],
) -> Result<f64> {
    check_alpha(cx1, alpha)?;
    check_alpha(cx2, alpha)?;
    let mut acc = Acc::new();
    for q in 0..cx1.degrees() {
        let diff = cx1.harmonic_projector(q) - cx2.harmonic_projector(q);
        let term = 0.5 * (&alpha[q] * diff).trace();
        acc.add(if q % 2 == 0 { term } else { -term });
    }
    Ok(acc.value())
}

/// The conformal variation G_q ↦ e^{(N−2q)u} G_q: α_q = (N−2q)·id.
pub fn conformal_alpha(cx: &HodgeComplex) -> Vec<DMatrix<f64>> {
    let n = cx.top() as f64;
    (0..cx.degrees())
        .map(|q| DMatrix::identity(cx.dim(q), cx.dim(q)) * (n - 2.0 * q as f64))
        .collect()
}

/// Conformal derivative of log τ evaluated in integer arithmetic:
/// ½ Σ (−1)^q (N−2q)(betti_q − dim_q), as a check that degree-symmetric
/// complexes have exactly zero conformal drift.
pub fn conformal_drift_integer(cx: &HodgeComplex) -> f64 {
    let n = cx.top() as i64;
    let mut twice: i64 = 0;
    for q in 0..cx.degrees() {
        let w = (n - 2 * q as i64) * (cx.betti(q) as i64 - cx.dim(q) as i64);
        twice += if q % 2 == 0 { w } else { -w };
    }
    twice as f64 / 2.0
}

/// Central-difference derivative of log τ for a family of inner products,
/// with a non-smoothness check: the step-h and step-h/2 estimates must
/// agree to 25%, otherwise the family is rejected.
///
/// With `richardson` the two estimates are combined to cancel the O(h²)
/// error term.
pub fn torsion_log_derivative_fd<F>(
    d: &[DMatrix<f64>],
    family: F,
    u: f64,
    h: f64,
    richardson: bool,
) -> Result<f64>
where
    F: Fn(f64) -> Result<Vec<DMatrix<f64>>>,
{
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Config(format!("step must be positive, got {h}")));
    }
    let log_tau = |x: f64| -> Result<f64> {
        Ok(HodgeComplex::new(d.to_vec(), family(x)?)?.log_torsion())
    };
    let central = |s: f64| -> Result<f64> {
        Ok((log_tau(u + s)? - log_tau(u - s)?) / (2.0 * s))
    };
    let d_h = central(h)?;
    let d_half = central(0.5 * h)?;
    let scale = d_h.abs().max(d_half.abs()).max(1e-6);
    if (d_h - d_half).abs() > 0.25 * scale {
        return Err(Error::NonSmoothFamily {
            u,
            detail: format!(
                "central differences at steps {h:.3e} and {:.3e} disagree: {d_h:.6e} vs {d_half:.6e}",
                0.5 * h
            ),
        });
    }
    Ok(if richardson {
        (4.0 * d_half - d_h) / 3.0
    } else {
        d_h
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::koszul_differentials;
    use crate::hodge::star::DoubledComplex;

    fn spd(n: usize, seed: u64) -> DMatrix<f64> {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(77);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let x = DMatrix::from_fn(n, n, |_, _| next());
        &x * x.transpose() + DMatrix::identity(n, n) * (n as f64)
    }

    fn sym(n: usize, seed: u64) -> DMatrix<f64> {
        let mut state = seed.wrapping_mul(2862933555777941757).wrapping_add(3);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let x = DMatrix::from_fn(n, n, |_, _| next());
        (&x + x.transpose()) * 0.5
    }

    /// Linear-in-u family G_q(u) = G_q + u Ġ_q over a fixed Koszul complex.
    struct Setup {
        d: Vec<DMatrix<f64>>,
        g0: Vec<DMatrix<f64>>,
        gdot: Vec<DMatrix<f64>>,
    }

    fn setup(seed: u64) -> Setup {
        let d = koszul_differentials(&[1.0, -0.7, 0.4]);
        let dims = [1usize, 3, 3, 1];
        let g0: Vec<DMatrix<f64>> = (0..=3).map(|q| spd(dims[q], seed + q as u64)).collect();
        let gdot: Vec<DMatrix<f64>> = (0..=3)
            .map(|q| sym(dims[q], seed + 10 + q as u64))
            .collect();
        Setup { d, g0, gdot }
    }

    fn family_at(s: &Setup, u: f64) -> Vec<DMatrix<f64>> {
        s.g0.iter()
            .zip(s.gdot.iter())
            .map(|(g, gd)| g + gd * u)
            .collect()
    }

    #[test]
    fn laplacian_dot_matches_finite_difference() {
        let s = setup(5);
        let cx = HodgeComplex::new(s.d.clone(), s.g0.clone()).unwrap();
        let alpha = alpha_from(&s.g0, &s.gdot).unwrap();
        let h = 1e-6;
        for q in 0..=3 {
            let plus = HodgeComplex::new(s.d.clone(), family_at(&s, h)).unwrap();
            let minus = HodgeComplex::new(s.d.clone(), family_at(&s, -h)).unwrap();
            let fd = (plus.laplacian(q) - minus.laplacian(q)) / (2.0 * h);
            let exact = laplacian_dot(&cx, &alpha, q).unwrap();
            let err = (fd - &exact).norm();
            assert!(err < 1e-7 * (1.0 + exact.norm()), "degree {q}: {err}");
        }
    }

    #[test]
    fn telescoping_identity_holds_at_every_cutoff() {
        let s = setup(23);
        let cx = HodgeComplex::new(s.d.clone(), s.g0.clone()).unwrap();
        let alpha = alpha_from(&s.g0, &s.gdot).unwrap();
        for &t in &[0.15, 0.8, 3.0] {
            for k in 0..=3 {
                let (lhs, rhs) = trace_identity(&cx, &alpha, t, k).unwrap();
                assert!(
                    (lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()),
                    "t = {t}, k = {k}: {lhs} vs {rhs}"
                );
            }
            // at k = N the right side collapses to Σ(−1)^q tr(H Δ α)
            let (_, rhs) = trace_identity(&cx, &alpha, t, 3).unwrap();
            let mut direct = 0.0;
            for q in 0..=3 {
                let term = (cx.heat_operator(q, t) * cx.laplacian(q) * &alpha[q]).trace();
                direct += if q % 2 == 0 { term } else { -term };
            }
            assert!((rhs - direct).abs() < 1e-10 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn exact_derivative_matches_finite_difference() {
        let s = setup(41);
        let cx = HodgeComplex::new(s.d.clone(), s.g0.clone()).unwrap();
        let alpha = alpha_from(&s.g0, &s.gdot).unwrap();
        let exact = torsion_derivative(&cx, &alpha).unwrap();
        let fd = torsion_log_derivative_fd(&s.d, |u| Ok(family_at(&s, u)), 0.0, 1e-5, false)
            .unwrap();
        assert!((exact - fd).abs() < 1e-8 * (1.0 + exact.abs()), "{exact} vs {fd}");
        // Richardson refinement should do at least as well
        let fd_r =
            torsion_log_derivative_fd(&s.d, |u| Ok(family_at(&s, u)), 0.0, 1e-4, true).unwrap();
        assert!((exact - fd_r).abs() < 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn acyclic_derivative_needs_no_projectors() {
        // for an acyclic complex the derivative is −½ Σ (−1)^q tr α_q
        let s = setup(61);
        let cx = HodgeComplex::new(s.d.clone(), s.g0.clone()).unwrap();
        let alpha = alpha_from(&s.g0, &s.gdot).unwrap();
        let exact = torsion_derivative(&cx, &alpha).unwrap();
        let mut plain = 0.0;
        for (q, a) in alpha.iter().enumerate() {
            plain += if q % 2 == 0 { -0.5 * a.trace() } else { 0.5 * a.trace() };
        }
        assert!((exact - plain).abs() < 1e-11 * (1.0 + plain.abs()));
    }

    #[test]
    fn pair_difference_reduces_to_projector_term() {
        let s = setup(83);
        // second complex: same spaces and grams, scaled differential
        let d2: Vec<DMatrix<f64>> = s.d.iter().map(|m| m * 2.0).collect();
        let cx1 = HodgeComplex::new(s.d.clone(), s.g0.clone()).unwrap();
        let cx2 = HodgeComplex::new(d2, s.g0.clone()).unwrap();
        let alpha = alpha_from(&s.g0, &s.gdot).unwrap();
        let lhs = torsion_derivative(&cx1, &alpha).unwrap()
            - torsion_derivative(&cx2, &alpha).unwrap();
        let rhs = pair_derivative_difference(&cx1, &cx2, &alpha).unwrap();
        assert!((lhs - rhs).abs() < 1e-11 * (1.0 + lhs.abs()));
    }

    #[test]
    fn conformal_variation_of_symmetric_complex_is_exactly_zero() {
        let d = koszul_differentials(&[1.2, -0.5]);
        let grams: Vec<DMatrix<f64>> = (0..=2)
            .map(|q| spd([1usize, 2, 1][q], 101 + q as u64))
            .collect();
        let base = HodgeComplex::new(d, grams).unwrap();
        let dc = DoubledComplex::with_middle(&base, 2, 1).unwrap();
        assert_eq!(conformal_drift_integer(&dc.complex), 0.0);
        let alpha = conformal_alpha(&dc.complex);
        let drift = torsion_derivative(&dc.complex, &alpha).unwrap();
        assert!(drift.abs() < 1e-11, "{drift}");
    }

    #[test]
    fn kinked_family_is_rejected() {
        let s = setup(97);
        // kink inside (u−h, u−h/2): the two central differences straddle it
        let kink = -0.7e-5;
        let family = |u: f64| -> Result<Vec<DMatrix<f64>>> {
            let bend = if u < kink { 3.0 * (u - kink) } else { 0.0 };
            Ok(s.g0
                .iter()
                .zip(s.gdot.iter())
                .map(|(g, gd)| g + gd * (u + bend))
                .collect())
        };
        let err = torsion_log_derivative_fd(&s.d, family, 0.0, 1e-5, false).unwrap_err();
        assert!(matches!(err, Error::NonSmoothFamily { .. }), "{err}");
    }
}
