//! Model geometries with exactly known spectra: flat tori ℝⁿ/(L·ℤⁿ) with a
//! constant metric and a flat twist character θ.
//!
//! Everything reduces to shifted-lattice spectra
//! λ_ξ = scale · (ξ+θ)ᵀ P (ξ+θ), ξ ∈ ℤⁿ, with:
//!
//! * scalar / de Rham q-forms: P = g⁻¹, scale = 4π²/L², fiber multiplicity
//!   C(n, q);
//! * Dolbeault (0,q)-forms on a flat Kähler torus ℂᵐ/Λ: the ∂̄-Laplacian is
//!   half the de Rham one, fiber multiplicity C(m, q);
//! * the self-dual complex 0 → Ω⁰ → Ω¹ → Ω²₊ → 0 on a 4-torus: fiber
//!   multiplicities (1, 4, 3).
//!
//! The twist is acyclic (no harmonic modes in any degree) exactly when
//! θ ∉ ℤⁿ.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::zeta::epstein::{check_spd, points_in_ball, POINT_BUDGET};
use crate::zeta::{epstein, hurwitz, mellin, ZetaMethod, ZetaResult};

/// C(n, k).
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Spectrum λ_ξ = scale · (ξ+θ)ᵀ gram_dual (ξ+θ) over ξ ∈ ℤⁿ, each value
/// taken `multiplicity` times.
#[derive(Debug, Clone)]
pub struct ShiftedLattice {
    pub gram_dual: DMatrix<f64>,
    pub theta: Vec<f64>,
    pub scale: f64,
    pub multiplicity: u64,
}

impl ShiftedLattice {
    pub fn dimension(&self) -> usize {
        self.gram_dual.nrows()
    }

    /// True when no lattice point hits ξ + θ = 0, i.e. the spectrum is
    /// strictly positive.
    pub fn is_acyclic(&self) -> bool {
        self.theta.iter().any(|&t| t.rem_euclid(1.0) != 0.0)
    }

    /// ζ(0), ζ′(0) by the preferred backend for this dimension: the exact
    /// Hurwitz closed form on the line, the theta continuation otherwise.
    pub fn zeta(&self) -> Result<ZetaResult> {
        if self.dimension() == 1 {
            self.zeta_with(ZetaMethod::Hurwitz)
        } else {
            self.zeta_with(ZetaMethod::Epstein)
        }
    }

    pub fn zeta_with(&self, method: ZetaMethod) -> Result<ZetaResult> {
        match method {
            ZetaMethod::Hurwitz => {
                if self.dimension() != 1 {
                    return Err(Error::Config(format!(
                        "hurwitz backend handles dimension 1, got {}",
                        self.dimension()
                    )));
                }
                hurwitz::shifted_lattice_1d(
                    self.gram_dual[(0, 0)],
                    self.theta[0],
                    self.scale,
                    self.multiplicity,
                )
            }
            ZetaMethod::Epstein => epstein::zeta_shifted_lattice(
                &self.gram_dual,
                &self.theta,
                self.scale,
                self.multiplicity,
            ),
            ZetaMethod::MellinQuadrature => mellin::zeta_heat_quadrature(
                &self.gram_dual,
                &self.theta,
                self.scale,
                self.multiplicity,
            ),
        }
    }

    /// Smallest eigenvalue (including 0 when the twist is trivial).
    pub fn min_eigenvalue(&self) -> Result<f64> {
        if !self.is_acyclic() {
            return Ok(0.0);
        }
        let (sig_min, sig_max, _) = check_spd(&self.gram_dual)?;
        let th: Vec<f64> = self
            .theta
            .iter()
            .map(|&v| {
                let mut r = v.rem_euclid(1.0);
                if r >= 0.5 {
                    r -= 1.0;
                }
                r
            })
            .collect();
        let n = self.dimension();
        let rho = (n as f64 * sig_max / (4.0 * sig_min)).sqrt() + 1.0;
        let pts = points_in_ball(&self.gram_dual, &th, rho, POINT_BUDGET)?;
        pts.iter()
            .map(|(q, _)| q * self.scale)
            .min_by(f64::total_cmp)
            .ok_or(Error::EmptySpectrum)
    }

    /// The same spectrum in a different lattice basis: ξ = U ξ′ turns
    /// (P, θ) into (UᵀPU, U⁻¹θ). U must be integral with det ±1.
    pub fn change_of_basis(&self, u: &DMatrix<i64>) -> Result<ShiftedLattice> {
        let n = self.dimension();
        if u.nrows() != n || u.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "basis change is {}x{}, lattice has rank {n}",
                u.nrows(),
                u.ncols()
            )));
        }
        let uf = u.map(|v| v as f64);
        let det = uf.determinant().round();
        if det.abs() != 1.0 {
            return Err(Error::Config(format!(
                "basis change must be unimodular, det = {det}"
            )));
        }
        let uinv = uf
            .clone()
            .try_inverse()
            .expect("unimodular matrix is invertible");
        let theta: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| uinv[(i, j)] * self.theta[j]).sum())
            .collect();
        Ok(ShiftedLattice {
            gram_dual: uf.transpose() * &self.gram_dual * uf,
            theta,
            scale: self.scale,
            multiplicity: self.multiplicity,
        })
    }

    /// Normal form of the twist. The spectrum only sees θ through the coset
    /// ±θ + ℤⁿ (Q(ξ+θ) and Q(ξ−θ) run over the same multiset since ξ ↦ −ξ is
    /// a lattice bijection), so we reduce every component to [0,1) and pick
    /// the lexicographically smaller of the two sign representatives. Twists
    /// that describe the same spectrum then compare — and serialize —
    /// bit-identically.
    pub fn canonicalized(mut self) -> ShiftedLattice {
        let fwd: Vec<f64> = self.theta.iter().map(|&v| v.rem_euclid(1.0)).collect();
        let bwd: Vec<f64> = self.theta.iter().map(|&v| (-v).rem_euclid(1.0)).collect();
        let pick_bwd = bwd
            .iter()
            .zip(&fwd)
            .find_map(|(b, f)| match b.partial_cmp(f) {
                Some(std::cmp::Ordering::Less) => Some(true),
                Some(std::cmp::Ordering::Greater) => Some(false),
                _ => None,
            })
            .unwrap_or(false);
        self.theta = if pick_bwd { bwd } else { fwd };
        self
    }

    /// Heat trace Σ m·e^{−λt} (zero modes included), with a truncation
    /// tolerance far below f64 resolution.
    pub fn heat_trace(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Config(format!("heat time must be positive, got {t}")));
        }
        let (sig_min, _, _) = check_spd(&self.gram_dual)?;
        let th: Vec<f64> = self.theta.iter().map(|&v| v.rem_euclid(1.0)).collect();
        let rho = (50.0 / (sig_min * self.scale * t)).sqrt() + 1.0;
        let pts = points_in_ball(&self.gram_dual, &th, rho, POINT_BUDGET)?;
        let mut acc = crate::zeta::accum::Acc::new();
        for (q, _) in &pts {
            acc.add((-q * self.scale * t).exp());
        }
        Ok(self.multiplicity as f64 * acc.value())
    }
}

/// Which torsion a spectral model feeds. The serialized tokens are the ones
/// used in every output artifact: real, complex, selfdual, antiselfdual,
/// quaternionic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum TorsionKind {
    #[serde(rename = "real")]
    Real,
    #[serde(rename = "complex")]
    Complex,
    #[serde(rename = "selfdual")]
    SelfDual,
    #[serde(rename = "antiselfdual")]
    AntiSelfDual,
    #[serde(rename = "quaternionic")]
    Quaternionic,
}

impl std::fmt::Display for TorsionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TorsionKind::Real => write!(f, "real"),
            TorsionKind::Complex => write!(f, "complex"),
            TorsionKind::SelfDual => write!(f, "selfdual"),
            TorsionKind::AntiSelfDual => write!(f, "antiselfdual"),
            TorsionKind::Quaternionic => write!(f, "quaternionic"),
        }
    }
}

impl std::str::FromStr for TorsionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "de_rham" => Ok(TorsionKind::Real),
            "complex" | "dolbeault" => Ok(TorsionKind::Complex),
            "selfdual" | "self_dual" | "sd" => Ok(TorsionKind::SelfDual),
            "antiselfdual" | "anti_self_dual" | "asd" => Ok(TorsionKind::AntiSelfDual),
            "quaternionic" => Ok(TorsionKind::Quaternionic),
            other => Err(Error::Config(format!("unknown torsion kind `{other}`"))),
        }
    }
}

/// One degree of a model: the shifted lattice carrying that degree's
/// spectrum (fiber multiplicity included in the lattice).
#[derive(Debug, Clone)]
pub struct DegreeSpectrum {
    pub q: usize,
    pub lattice: ShiftedLattice,
}

/// A model geometry resolved into per-degree spectra.
#[derive(Debug, Clone)]
pub struct ModelSpectra {
    pub id: String,
    pub kind: TorsionKind,
    /// Real dimension of the underlying torus.
    pub dimension: usize,
    pub degrees: Vec<DegreeSpectrum>,
}

impl ModelSpectra {
    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().all(|d| d.lattice.is_acyclic())
    }

    /// The same model with metric g ↦ c·g. Every Laplace eigenvalue picks up
    /// the factor 1/c, so each degree's lattice scale is divided by c.
    pub fn conformal_rescale(&self, c: f64) -> Result<ModelSpectra> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::DomainError(format!(
                "conformal factor must be positive and finite, got {c}"
            )));
        }
        let mut out = self.clone();
        for d in &mut out.degrees {
            d.lattice.scale /= c;
        }
        Ok(out)
    }
}

fn dual_of(gram: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_spd(gram)?;
    gram.clone()
        .try_inverse()
        .ok_or_else(|| Error::GramNotSpd("metric is numerically singular".to_string()))
}

/// Scalar Laplacian on ℝⁿ/(L·ℤⁿ) with metric gram and twist θ:
/// λ_ξ = (4π²/L²)·(ξ+θ)ᵀg⁻¹(ξ+θ).
pub fn scalar_torus(gram: &DMatrix<f64>, theta: &[f64], length: f64) -> Result<ShiftedLattice> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::Config(format!("torus length must be positive, got {length}")));
    }
    if theta.len() != gram.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "metric is {}x{} but theta has {} components",
            gram.nrows(),
            gram.ncols(),
            theta.len()
        )));
    }
    Ok(ShiftedLattice {
        gram_dual: dual_of(gram)?,
        theta: theta.to_vec(),
        scale: 4.0 * std::f64::consts::PI.powi(2) / (length * length),
        multiplicity: 1,
    }
    .canonicalized())
}

/// De Rham complex of q-forms on the flat torus: the scalar spectrum with
/// fiber multiplicity C(n, q) in each degree 0..=n.
pub fn de_rham_torus(gram: &DMatrix<f64>, theta: &[f64], length: f64) -> Result<ModelSpectra> {
    let n = gram.nrows();
    let base = scalar_torus(gram, theta, length)?;
    let degrees = (0..=n)
        .map(|q| DegreeSpectrum {
            q,
            lattice: ShiftedLattice {
                multiplicity: binomial(n, q),
                ..base.clone()
            },
        })
        .collect();
    Ok(ModelSpectra {
        id: format!("de_rham_torus_{n}d"),
        kind: TorsionKind::Real,
        dimension: n,
        degrees,
    })
}

/// The standard complex structure on ℝ^{2m} with coordinates interleaved
/// as (x₁, y₁, …, x_m, y_m).
fn standard_j(m: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        j[(2 * i, 2 * i + 1)] = -1.0;
        j[(2 * i + 1, 2 * i)] = 1.0;
    }
    j
}

/// Dolbeault complex of (0,q)-forms on the flat complex torus ℂᵐ/Λ.
///
/// Requires the metric to be compatible with the standard complex
/// structure (JᵀgJ = g); the ∂̄-Laplacian is half the de Rham Laplacian,
/// with fiber multiplicity C(m, q) in degrees 0..=m.
pub fn dolbeault_torus(gram: &DMatrix<f64>, theta: &[f64], length: f64) -> Result<ModelSpectra> {
    let n = gram.nrows();
    if n % 2 != 0 || n == 0 {
        return Err(Error::DimensionError(format!(
            "complex torus needs even real dimension, got {n}"
        )));
    }
    let m = n / 2;
    let j = standard_j(m);
    let twisted = j.transpose() * gram * &j;
    let scale_ref = gram.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let drift = (&twisted - gram)
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()));
    if drift > 1e-12 * scale_ref.max(1.0) {
        return Err(Error::NonKaehlerInput(format!(
            "metric is not invariant under the complex structure (JᵀgJ deviates by {drift:.3e})"
        )));
    }
    let base = scalar_torus(gram, theta, length)?;
    let degrees = (0..=m)
        .map(|q| DegreeSpectrum {
            q,
            lattice: ShiftedLattice {
                scale: 0.5 * base.scale,
                multiplicity: binomial(m, q),
                ..base.clone()
            },
        })
        .collect();
    Ok(ModelSpectra {
        id: format!("dolbeault_torus_{m}c"),
        kind: TorsionKind::Complex,
        dimension: n,
        degrees,
    })
}

/// Self-dual complex 0 → Ω⁰ → Ω¹ → Ω²₊ → 0 on a flat 4-torus: scalar
/// spectrum with fiber multiplicities (1, 4, 3).
pub fn selfdual_torus4(gram: &DMatrix<f64>, theta: &[f64], length: f64) -> Result<ModelSpectra> {
    if gram.nrows() != 4 {
        return Err(Error::DimensionError(format!(
            "self-dual complex lives on a 4-torus, got dimension {}",
            gram.nrows()
        )));
    }
    let base = scalar_torus(gram, theta, length)?;
    let degrees = [1u64, 4, 3]
        .iter()
        .enumerate()
        .map(|(q, &mult)| DegreeSpectrum {
            q,
            lattice: ShiftedLattice {
                multiplicity: mult,
                ..base.clone()
            },
        })
        .collect();
    Ok(ModelSpectra {
        id: "selfdual_torus_4d".to_string(),
        kind: TorsionKind::SelfDual,
        dimension: 4,
        degrees,
    })
}

/// Quaternionic model on T⁴ = ℍ/Λ: spectrally the self-dual complex with
/// fiber multiplicities C(2,q)(q+1) = (1, 4, 3); the torsion assembly
/// applies the quaternionic normalization.
pub fn quaternionic_torus4(gram: &DMatrix<f64>, theta: &[f64], length: f64) -> Result<ModelSpectra> {
    let mut m = selfdual_torus4(gram, theta, length)?;
    m.id = "quaternionic_torus_4d".to_string();
    m.kind = TorsionKind::Quaternionic;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(
            (0..=4).map(|q| binomial(4, q)).collect::<Vec<_>>(),
            vec![1, 4, 6, 4, 1]
        );
        assert_eq!(binomial(2, 1), 2);
        assert_eq!(binomial(5, 7), 0);
    }

    #[test]
    fn smallest_circle_eigenvalue() {
        // unit-length circle, θ = 1/4: λ_min = 4π²·(1/4)² = π²/4
        let g = DMatrix::identity(1, 1);
        let s = scalar_torus(&g, &[0.25], 1.0).unwrap();
        let min = s.min_eigenvalue().unwrap();
        assert!((min - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-12);
        assert!(s.is_acyclic());
        let trivial = scalar_torus(&g, &[0.0], 1.0).unwrap();
        assert_eq!(trivial.min_eigenvalue().unwrap(), 0.0);
        assert!(!trivial.is_acyclic());
    }

    #[test]
    fn de_rham_multiplicities() {
        let g = DMatrix::identity(4, 4);
        let m = de_rham_torus(&g, &[0.25, 0.0, 0.0, 0.0], 1.0).unwrap();
        let mults: Vec<u64> = m.degrees.iter().map(|d| d.lattice.multiplicity).collect();
        assert_eq!(mults, vec![1, 4, 6, 4, 1]);
        assert!(m.is_acyclic());
    }

    #[test]
    fn selfdual_multiplicities() {
        let g = DMatrix::identity(4, 4);
        let m = selfdual_torus4(&g, &[0.25, 0.25, 0.0, 0.0], 1.0).unwrap();
        let mults: Vec<u64> = m.degrees.iter().map(|d| d.lattice.multiplicity).collect();
        assert_eq!(mults, vec![1, 4, 3]);
    }

    #[test]
    fn dolbeault_is_half_the_scalar_spectrum() {
        let g = DMatrix::identity(2, 2) * 2.5;
        let m = dolbeault_torus(&g, &[0.25, 0.4], 1.0).unwrap();
        let s = scalar_torus(&g, &[0.25, 0.4], 1.0).unwrap();
        assert_eq!(m.degrees.len(), 2);
        assert!((m.degrees[0].lattice.scale - 0.5 * s.scale).abs() < 1e-15);
        let mults: Vec<u64> = m.degrees.iter().map(|d| d.lattice.multiplicity).collect();
        assert_eq!(mults, vec![1, 1]);
    }

    #[test]
    fn dolbeault_rejects_incompatible_metric() {
        // on ℂ¹ compatibility forces g = a·I
        let mut g = DMatrix::identity(2, 2);
        g[(0, 0)] = 2.0;
        let err = dolbeault_torus(&g, &[0.25, 0.4], 1.0).unwrap_err();
        assert!(matches!(err, Error::NonKaehlerInput(_)), "{err}");
        // 2x2 blocks scaled differently on ℂ² are fine
        let mut g4 = DMatrix::identity(4, 4);
        g4[(2, 2)] = 3.0;
        g4[(3, 3)] = 3.0;
        assert!(dolbeault_torus(&g4, &[0.1, 0.2, 0.3, 0.4], 1.0).is_ok());
    }

    #[test]
    fn change_of_basis_preserves_zeta() {
        let mut g = DMatrix::identity(2, 2);
        g[(0, 0)] = 1.4;
        g[(0, 1)] = 0.2;
        g[(1, 0)] = 0.2;
        let s = scalar_torus(&g, &[0.25, 0.6], 1.0).unwrap();
        let mut u = DMatrix::zeros(2, 2);
        u[(0, 0)] = 1i64;
        u[(0, 1)] = 1;
        u[(1, 1)] = 1;
        let s2 = s.change_of_basis(&u).unwrap();
        let a = s.zeta().unwrap();
        let b = s2.zeta().unwrap();
        assert!(
            (a.zeta_prime0 - b.zeta_prime0).abs() <= a.error_bound + b.error_bound + 1e-13,
            "{} vs {}",
            a.zeta_prime0,
            b.zeta_prime0
        );
        // non-unimodular changes are rejected
        let mut v = DMatrix::zeros(2, 2);
        v[(0, 0)] = 2i64;
        v[(1, 1)] = 1;
        assert!(s.change_of_basis(&v).is_err());
    }

    #[test]
    fn twist_sign_is_canonicalized() {
        let g = DMatrix::identity(2, 2);
        let plus = scalar_torus(&g, &[0.25, 0.4], 1.0).unwrap();
        let minus = scalar_torus(&g, &[-0.25, -0.4], 1.0).unwrap();
        assert_eq!(plus.theta, minus.theta);
        // the representative with the smaller leading component wins
        assert_eq!(plus.theta, vec![0.25, 0.4]);
        let wrapped = scalar_torus(&g, &[0.75, 0.6], 1.0).unwrap();
        assert_eq!(wrapped.theta, vec![0.25, 0.4]);
        // the flip applies to the whole vector, never componentwise
        let mixed = scalar_torus(&g, &[0.75, 0.4], 1.0).unwrap();
        assert_eq!(mixed.theta, vec![0.25, 0.6]);
        // and must leave the zeta invariants unchanged
        let a = plus.zeta().unwrap();
        let b = ShiftedLattice {
            theta: vec![0.75, 0.6],
            ..plus.clone()
        }
        .zeta()
        .unwrap();
        assert!((a.zeta_prime0 - b.zeta_prime0).abs() <= a.error_bound + b.error_bound + 1e-13);
    }

    #[test]
    fn conformal_rescale_divides_eigenvalues() {
        let g = DMatrix::identity(4, 4);
        let m = de_rham_torus(&g, &[0.25, 0.0, 0.0, 0.0], 1.0).unwrap();
        let r = m.conformal_rescale(3.0).unwrap();
        for (a, b) in m.degrees.iter().zip(&r.degrees) {
            assert!((b.lattice.scale - a.lattice.scale / 3.0).abs() < 1e-18);
        }
        assert!(m.conformal_rescale(0.0).is_err());
        assert!(m.conformal_rescale(-2.0).is_err());
    }

    #[test]
    fn kind_tokens_round_trip() {
        for kind in [
            TorsionKind::Real,
            TorsionKind::Complex,
            TorsionKind::SelfDual,
            TorsionKind::AntiSelfDual,
            TorsionKind::Quaternionic,
        ] {
            let token = kind.to_string();
            assert_eq!(token.parse::<TorsionKind>().unwrap(), kind);
            assert_eq!(serde_json::to_string(&kind).unwrap(), format!("\"{token}\""));
        }
    }

    #[test]
    fn heat_trace_matches_direct_sum() {
        let g = DMatrix::identity(1, 1);
        let s = scalar_torus(&g, &[0.25], 1.0).unwrap();
        // Σ_k exp(−4π²(k+1/4)² t) by brute force
        let t = 0.03;
        let mut direct = 0.0;
        for k in -60i64..=60 {
            let lam = 4.0 * std::f64::consts::PI.powi(2) * (k as f64 + 0.25).powi(2);
            direct += (-lam * t).exp();
        }
        let h = s.heat_trace(t).unwrap();
        assert!((h - direct).abs() < 1e-13, "{h} vs {direct}");
    }
}
