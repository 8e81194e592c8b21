//! Spectral zeta functions ζ(s) = Σᵢ mᵢ λᵢ^{−s} over the positive spectrum,
//! analytically continued to s = 0.
//!
//! Backends: closed-form Hurwitz reduction for one-dimensional shifted
//! lattices ([`hurwitz`]), theta-based analytic continuation for shifted
//! lattices in any dimension ([`epstein`]), and a Mellin heat-kernel
//! quadrature usable as an independent cross-check ([`mellin`]).
//!
//! Convention: for a positive-semidefinite operator Δ with positive
//! eigenvalues λᵢ (multiplicity mᵢ), log det′ Δ = −ζ′(0). Scaling the
//! spectrum by c > 0 shifts ζ′(0) by −ζ(0)·log c.

pub mod accum;
pub mod epstein;
pub mod hurwitz;
pub mod mellin;
pub mod special;

/// How a zeta value was produced. Carried through to reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaMethod {
    /// Closed-form reduction to Hurwitz zeta (1-dimensional lattices).
    Hurwitz,
    /// Theta-function continuation of an Epstein-type zeta.
    Epstein,
    /// Numerical Mellin transform of the heat trace.
    #[serde(rename = "mellin")]
    MellinQuadrature,
}

impl std::fmt::Display for ZetaMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZetaMethod::Hurwitz => write!(f, "hurwitz"),
            ZetaMethod::Epstein => write!(f, "epstein"),
            ZetaMethod::MellinQuadrature => write!(f, "mellin"),
        }
    }
}

/// ζ(0), ζ′(0) and an honest bound on the numerical error of both.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ZetaResult {
    pub zeta0: f64,
    pub zeta_prime0: f64,
    /// Rigorous bound on truncation plus a coarse roundoff allowance.
    pub error_bound: f64,
    pub method: ZetaMethod,
}

impl ZetaResult {
    /// log det′ Δ = −ζ′(0).
    pub fn log_det(&self) -> f64 {
        -self.zeta_prime0
    }

    /// Result for the spectrum scaled by c: ζ_c(s) = c^{−s} ζ(s), so
    /// ζ_c(0) = ζ(0) and ζ_c′(0) = ζ′(0) − ζ(0)·log c.
    pub fn scaled(&self, c: f64) -> ZetaResult {
        ZetaResult {
            zeta0: self.zeta0,
            zeta_prime0: self.zeta_prime0 - self.zeta0 * c.ln(),
            error_bound: self.error_bound,
            method: self.method,
        }
    }
}
