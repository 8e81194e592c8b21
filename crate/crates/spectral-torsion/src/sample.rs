//! Seeded random inputs for the property suites: orthogonal frames, SPD
//! inner products, cochain complexes with prescribed cohomology, smooth
//! inner-product families, and twisted torus data. Everything is driven by
//! an explicit ChaCha8 generator so identical seeds give identical inputs
//! on every platform.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hodge::variation::alpha_from;
use crate::hodge::HodgeComplex;

/// The deterministic generator every suite draws from.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal deviate (Box–Muller).
fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u.ln()).sqrt() * v.cos()
}

/// Random orthogonal matrix: QR of a Gaussian matrix with the diagonal of
/// R forced positive, so the distribution does not depend on the QR
/// implementation's sign choices.
pub fn orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let g = DMatrix::from_fn(n, n, |_, _| normal(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// Random symmetric positive-definite inner product with eigenvalues in
/// [0.4, 2.5], symmetrized so the matrix is exactly its own transpose.
pub fn spd_gram(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let q = orthogonal(n, rng);
    let evs = DVector::from_fn(n, |_, _| rng.gen_range(0.4..2.5));
    let m = &q * DMatrix::from_diagonal(&evs) * q.transpose();
    (&m + m.transpose()) * 0.5
}

/// Random symmetric matrix with entries of order `size`.
pub fn symmetric(n: usize, size: f64, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let x = DMatrix::from_fn(n, n, |_, _| size * normal(rng));
    (&x + x.transpose()) * 0.5
}

/// Real 2m×2m embedding of a random complex Hermitian positive-definite
/// m×m matrix H = ZZ* + I/2: the entry h_ik = a + ib becomes the 2×2
/// block aI + bJ on the coordinate pair (2i, 2i+1). By construction the
/// result is symmetric positive definite and invariant under the standard
/// interleaved complex structure, so it is accepted as a Dolbeault-torus
/// metric.
pub fn hermitian_gram(m: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let z_re = DMatrix::from_fn(m, m, |_, _| 0.6 * normal(rng));
    let z_im = DMatrix::from_fn(m, m, |_, _| 0.6 * normal(rng));
    // H = Z Z* splits into h_re (symmetric) and h_im (antisymmetric)
    let h_re = &z_re * z_re.transpose() + &z_im * z_im.transpose()
        + DMatrix::identity(m, m) * 0.5;
    let h_im = &z_im * z_re.transpose() - &z_re * z_im.transpose();
    let mut gram = DMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        for k in 0..m {
            gram[(2 * i, 2 * k)] = h_re[(i, k)];
            gram[(2 * i + 1, 2 * k + 1)] = h_re[(i, k)];
            gram[(2 * i, 2 * k + 1)] = -h_im[(i, k)];
            gram[(2 * i + 1, 2 * k)] = h_im[(i, k)];
        }
    }
    (&gram + gram.transpose()) * 0.5
}

/// A twist vector with every component in [0.1, 0.9]: bounded away from
/// the integers, so the associated torus spectra have no zero modes.
pub fn twist(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.1..0.9)).collect()
}

/// A cochain complex with prescribed structure: `pieces[q]` elementary
/// two-term summands 0 → ℝ → ℝ → 0 spanning degrees (q, q+1), plus
/// `harmonic[q]` coordinates untouched by the differential. The degree-q
/// dimension is pieces[q−1] + pieces[q] + harmonic[q], the q-th Betti
/// number is exactly harmonic[q], and the differentials are conjugated by
/// random orthogonal frames with random SPD inner products in every
/// degree — so cohomology is known by construction while the matrices
/// look completely generic.
pub fn complex_with_cohomology(
    pieces: &[usize],
    harmonic: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<HodgeComplex> {
    let top = pieces.len();
    assert_eq!(
        harmonic.len(),
        top + 1,
        "need one harmonic count per degree 0..={top}"
    );
    let k = |q: isize| {
        if q < 0 || q as usize >= pieces.len() {
            0
        } else {
            pieces[q as usize]
        }
    };
    let dims: Vec<usize> = (0..=top)
        .map(|q| k(q as isize - 1) + k(q as isize) + harmonic[q])
        .collect();
    // canonical layout per degree: [incoming | outgoing | harmonic]
    let mut d: Vec<DMatrix<f64>> = Vec::with_capacity(top);
    for q in 0..top {
        let mut m = DMatrix::zeros(dims[q + 1], dims[q]);
        let col0 = k(q as isize - 1);
        for j in 0..pieces[q] {
            let s = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            m[(j, col0 + j)] = s;
        }
        d.push(m);
    }
    let frames: Vec<DMatrix<f64>> = dims.iter().map(|&n| orthogonal(n, rng)).collect();
    let d: Vec<DMatrix<f64>> = d
        .into_iter()
        .enumerate()
        .map(|(q, m)| &frames[q + 1] * m * frames[q].transpose())
        .collect();
    let grams: Vec<DMatrix<f64>> = dims.iter().map(|&n| spd_gram(n, rng)).collect();
    HodgeComplex::new(d, grams)
}

/// An exact (acyclic) complex: [`complex_with_cohomology`] with no
/// harmonic coordinates anywhere.
pub fn acyclic_complex(pieces: &[usize], rng: &mut ChaCha8Rng) -> Result<HodgeComplex> {
    complex_with_cohomology(pieces, &vec![0; pieces.len() + 1], rng)
}

/// A linear family of inner products G_q(u) = G_q + u·S_q over fixed
/// differentials: smooth in u, SPD near u = 0, with constant derivative
/// S_q, so α_q(0) = G_q⁻¹ S_q is exact.
#[derive(Debug, Clone)]
pub struct GramFamily {
    pub d: Vec<DMatrix<f64>>,
    pub base: Vec<DMatrix<f64>>,
    pub dot: Vec<DMatrix<f64>>,
}

impl GramFamily {
    /// Family over the given complex's differentials, starting from its
    /// inner products, with a random symmetric direction scaled to a
    /// third of the smallest base eigenvalue bound (so G(u) stays SPD for
    /// |u| well beyond any finite-difference step).
    pub fn sample(cx: &HodgeComplex, rng: &mut ChaCha8Rng) -> GramFamily {
        let d: Vec<DMatrix<f64>> = (0..cx.top()).map(|q| cx.differential(q)).collect();
        let base: Vec<DMatrix<f64>> = (0..cx.degrees()).map(|q| cx.gram(q).clone()).collect();
        let dot: Vec<DMatrix<f64>> = base
            .iter()
            .map(|g| symmetric(g.nrows(), 0.13, rng))
            .collect();
        GramFamily { d, base, dot }
    }

    pub fn grams_at(&self, u: f64) -> Vec<DMatrix<f64>> {
        self.base
            .iter()
            .zip(&self.dot)
            .map(|(g, s)| g + s * u)
            .collect()
    }

    pub fn complex_at(&self, u: f64) -> Result<HodgeComplex> {
        HodgeComplex::new(self.d.clone(), self.grams_at(u))
    }

    /// α_q(u) = G_q(u)⁻¹ S_q.
    pub fn alpha_at(&self, u: f64) -> Result<Vec<DMatrix<f64>>> {
        alpha_from(&self.grams_at(u), &self.dot)
    }
}
