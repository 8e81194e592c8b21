//! Zeta-regularized determinants and analytic torsion on flat model
//! geometries, together with exact finite-dimensional Hodge-complex
//! verification of the algebraic identities behind them.
//!
//! The crate has three layers:
//!
//! * [`zeta`] — spectral zeta functions ζ(s) = Σ mᵢλᵢ^{−s} of shifted
//!   lattices, continued to s = 0 by three independent backends
//!   (closed-form Hurwitz, theta-transform Epstein, heat-trace Mellin
//!   quadrature), each with honest error bounds. Convention throughout:
//!   log det′ Δ = −ζ′(0).
//! * `hodge` — finite-dimensional cochain complexes with inner products:
//!   Laplacians, heat traces, spectral ladders, duality operators, metric
//!   variation, and exact rational torsion.
//! * `models` / `assembly` — flat tori, their de Rham / Dolbeault /
//!   self-dual / quaternionic spectra, and the alternating-sum assembly of
//!   analytic torsion from per-degree zeta data.

pub mod error;
pub mod hodge;
pub mod models;
pub mod assembly;
pub mod cli;
pub mod config;
pub mod quaternionic;
pub mod sample;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
