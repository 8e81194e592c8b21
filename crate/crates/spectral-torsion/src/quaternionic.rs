//! Graded complexes with a duality operator and the codifferential it induces.
//!
//! The graded space runs over degrees `0..=4n`. Differentials come in two
//! halves: `d_first[q]` for `q < 2n` is the complex whose Laplacians define
//! the torsion, and `d_ext[q]` for `2n <= q < 4n` extends the grading to the
//! top degree. A duality operator `gamma[q]: A^q -> A^{4n-q}` pairs
//! complementary degrees, satisfies `gamma . gamma = 1`, and is an isometry
//! for the per-degree inner products. The codifferential is
//!
//! ```text
//! delta_q = gamma[4n-q] . d[4n-q-1] . gamma[q+1] : A^{q+1} -> A^q,
//! ```
//!
//! and the degree-q operator is `laplacian(q) = d delta + delta d`. Because
//! `delta` is built from `gamma` rather than from the inner products, the
//! Laplacian need not be self-adjoint; its determinant is defined through the
//! eigenvalue spectrum, guarded by a validity check that the spectrum is real,
//! nonnegative, and carries no defective zero block.
//!
//! Families `gamma(u) = T(u) gamma T(u)^{-1}` with `T(u) = exp(u K)` an
//! isometry family preserve `gamma^2 = 1` structurally; the module computes
//! the induced variation `alpha = gamma gamma_dot`, the closed-form Laplacian
//! derivative `-D alpha delta + D delta alpha - alpha delta D + delta alpha D`,
//! and the alternating trace identity it satisfies.

use nalgebra::{Complex, DMatrix, DVector};
use num::{BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hodge::rational::{pseudo_det, RMatrix};

/// Relative tolerance for the structural checks (`gamma . gamma = 1`,
/// isometry, `delta . delta = 0`).
const GAMMA_TOL: f64 = 1e-12;

/// Drift tolerance for involution checks along a one-parameter family.
const FAMILY_DRIFT_TOL: f64 = 1e-10;

/// Relative threshold separating zero from nonzero eigenvalues.
const SPECTRUM_RTOL: f64 = 1e-10;

/// Per-degree fiber dimensions of the flat model: `dim A^q = C(2n, q)(q+1)`
/// for `0 <= q <= 2n`, mirrored to the upper half by the duality pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberDims {
    n: usize,
    dims: Vec<usize>,
}

/// Binomial coefficient with u128 accumulation (exact for every size used here).
fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Fiber dimension table `dim A^q = C(2n, q)(q+1)` for the lower half
/// `0 <= q <= 2n` of a duality-graded complex of total degree `4n`.
pub fn fiber_dims(n: usize) -> Result<FiberDims> {
    if n == 0 {
        return Err(Error::DomainError(
            "fiber dimensions require n >= 1".into(),
        ));
    }
    let dims = (0..=2 * n).map(|q| binomial(2 * n, q) * (q + 1)).collect();
    Ok(FiberDims { n, dims })
}

impl FiberDims {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimensions of the lower half `q = 0..=2n`.
    pub fn lower(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension of `A^q` over the full grading `0..=4n`; the upper half
    /// mirrors the lower one because `gamma` pairs `q` with `4n - q`.
    pub fn dim(&self, q: usize) -> usize {
        let top = 4 * self.n;
        assert!(q <= top, "degree {q} out of range 0..={top}");
        let q = q.min(top - q);
        self.dims[q]
    }

    /// Alternating sum over the lower half (vanishes for every `n >= 1`).
    pub fn alternating_sum(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Log-determinant of the nonzero part of a degree operator, together with
/// the count of (numerically) zero eigenvalues.
#[derive(Debug, Clone, Copy)]
pub struct SpectralLogDet {
    pub log_det: f64,
    pub nullity: usize,
    pub dim: usize,
}

/// A finite-dimensional duality-graded complex: inner products, two half
/// differentials, and the pairing operator `gamma`.
#[derive(Debug, Clone)]
pub struct QuaternionicModel {
    n: usize,
    gram: Vec<DMatrix<f64>>,
    d_first: Vec<DMatrix<f64>>,
    d_ext: Vec<DMatrix<f64>>,
    gamma: Vec<DMatrix<f64>>,
}

fn frob(m: &DMatrix<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Eigenvalues of a real square matrix. Symmetric input goes through the
/// symmetric eigensolver (which also covers the all-zero operator, where the
/// general Schur iteration fails to deflate); everything else uses a Schur
/// decomposition with a bounded iteration count.
fn complex_spectrum(m: &DMatrix<f64>) -> Result<Vec<Complex<f64>>> {
    let scale = frob(m);
    let skew = m - m.transpose();
    if frob(&skew) <= 1e-12 * scale.max(1.0) {
        let sym = (m + m.transpose()) * 0.5;
        return Ok(sym
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .map(|&x| Complex::new(x, 0.0))
            .collect());
    }
    let max_iter = 200 * m.nrows().max(1);
    match nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, max_iter) {
        Some(schur) => Ok(schur.complex_eigenvalues().iter().copied().collect()),
        None => Err(Error::ConvergenceBudgetExceeded(format!(
            "eigenvalue iteration did not converge within {max_iter} steps on a {}x{} operator",
            m.nrows(),
            m.ncols()
        ))),
    }
}

impl QuaternionicModel {
    /// Builds a model with identity inner products in every degree.
    pub fn new(
        n: usize,
        d_first: Vec<DMatrix<f64>>,
        d_ext: Vec<DMatrix<f64>>,
        gamma: Vec<DMatrix<f64>>,
    ) -> Result<Self> {
        let gram = gamma
            .iter()
            .map(|g| DMatrix::identity(g.ncols(), g.ncols()))
            .collect();
        Self::with_grams(n, gram, d_first, d_ext, gamma)
    }

    /// Builds a model with explicit SPD inner products per degree.
    pub fn with_grams(
        n: usize,
        gram: Vec<DMatrix<f64>>,
        d_first: Vec<DMatrix<f64>>,
        d_ext: Vec<DMatrix<f64>>,
        gamma: Vec<DMatrix<f64>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::DomainError("model requires n >= 1".into()));
        }
        let top = 4 * n;
        if gram.len() != top + 1 || gamma.len() != top + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} inner products and duality blocks, got {} and {}",
                top + 1,
                gram.len(),
                gamma.len()
            )));
        }
        if d_first.len() != 2 * n || d_ext.len() != 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} differentials per half, got {} and {}",
                2 * n,
                d_first.len(),
                d_ext.len()
            )));
        }
        let dims: Vec<usize> = gram.iter().map(|g| g.ncols()).collect();
        for (q, g) in gram.iter().enumerate() {
            if g.nrows() != g.ncols() {
                return Err(Error::DimensionMismatch(format!(
                    "inner product in degree {q} is not square"
                )));
            }
            if nalgebra::Cholesky::new(g.clone()).is_none() {
                return Err(Error::GramNotSpd(format!("degree {q}")));
            }
        }
        let model = QuaternionicModel {
            n,
            gram,
            d_first,
            d_ext,
            gamma,
        };
        for q in 0..top {
            let d = model.d(q);
            if d.nrows() != dims[q + 1] || d.ncols() != dims[q] {
                return Err(Error::DimensionMismatch(format!(
                    "differential {q} is {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    dims[q + 1],
                    dims[q]
                )));
            }
        }
        for (q, g) in model.gamma.iter().enumerate() {
            if g.nrows() != dims[top - q] || g.ncols() != dims[q] {
                return Err(Error::DimensionMismatch(format!(
                    "duality block {q} is {}x{}, expected {}x{}",
                    g.nrows(),
                    g.ncols(),
                    dims[top - q],
                    dims[q]
                )));
            }
        }
        // d . d = 0 within each half (the seam between the halves is free).
        let d_scale = (0..top).map(|q| frob(model.d(q))).fold(1.0, f64::max);
        for q in 0..top - 1 {
            if q + 1 == 2 * n {
                continue;
            }
            let defect = frob(&(model.d(q + 1) * model.d(q)));
            if defect > 1e-10 * d_scale * d_scale.max(1.0) {
                return Err(Error::NotAComplex(format!(
                    "d[{}] . d[{}] has norm {defect:.3e}",
                    q + 1,
                    q
                )));
            }
        }
        model.check_gamma(GAMMA_TOL)?;
        Ok(model)
    }

    /// Verifies `gamma[4n-q] . gamma[q] = 1` and the isometry property at the
    /// given absolute tolerance.
    fn check_gamma(&self, tol: f64) -> Result<()> {
        let top = 4 * self.n;
        for q in 0..=top {
            let round = self.gamma(top - q) * self.gamma(q);
            let eye = DMatrix::identity(round.nrows(), round.ncols());
            let defect = frob(&(&round - &eye));
            if defect > tol * (1.0 + frob(&eye)) {
                return Err(Error::IncompatibleGamma(format!(
                    "gamma[{}] . gamma[{q}] differs from the identity by {defect:.3e}",
                    top - q
                )));
            }
            let pulled = self.gamma(q).transpose() * &self.gram[top - q] * self.gamma(q);
            let iso = frob(&(&pulled - &self.gram[q]));
            if iso > tol * (1.0 + frob(&self.gram[q])) {
                return Err(Error::IncompatibleGamma(format!(
                    "gamma[{q}] fails to be an isometry by {iso:.3e}"
                )));
            }
        }
        Ok(())
    }

    /// Replaces the duality operator (used by one-parameter families). The
    /// involution and isometry checks run at the family drift tolerance and
    /// report failures as drift rather than as a malformed model.
    pub fn with_gamma(&self, gamma: Vec<DMatrix<f64>>) -> Result<Self> {
        if gamma.len() != self.gamma.len()
            || gamma
                .iter()
                .zip(&self.gamma)
                .any(|(a, b)| a.shape() != b.shape())
        {
            return Err(Error::DimensionMismatch(
                "replacement duality blocks have wrong shapes".into(),
            ));
        }
        let candidate = QuaternionicModel {
            n: self.n,
            gram: self.gram.clone(),
            d_first: self.d_first.clone(),
            d_ext: self.d_ext.clone(),
            gamma,
        };
        candidate.check_gamma(FAMILY_DRIFT_TOL).map_err(|e| {
            Error::GammaSquareDrift(match e {
                Error::IncompatibleGamma(msg) => msg,
                other => other.to_string(),
            })
        })?;
        Ok(candidate)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Top degree `4n` of the grading.
    pub fn top_degree(&self) -> usize {
        4 * self.n
    }

    pub fn dim(&self, q: usize) -> usize {
        self.gram[q].ncols()
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|q| self.dim(q)).collect()
    }

    pub fn gram(&self, q: usize) -> &DMatrix<f64> {
        &self.gram[q]
    }

    /// Differential `A^q -> A^{q+1}`; the lower half for `q < 2n`, the
    /// extension for `2n <= q < 4n`.
    pub fn d(&self, q: usize) -> &DMatrix<f64> {
        if q < 2 * self.n {
            &self.d_first[q]
        } else {
            &self.d_ext[q - 2 * self.n]
        }
    }

    pub fn gamma(&self, q: usize) -> &DMatrix<f64> {
        &self.gamma[q]
    }

    /// Codifferential `delta_q = gamma[4n-q] . d[4n-q-1] . gamma[q+1]`,
    /// mapping `A^{q+1} -> A^q`. Defined for every `q < 4n`; for `q < 2n` the
    /// inner differential always comes from the extension half.
    pub fn delta(&self, q: usize) -> DMatrix<f64> {
        let top = self.top_degree();
        assert!(q < top, "codifferential degree {q} out of range");
        self.gamma(top - q) * self.d(top - q - 1) * self.gamma(q + 1)
    }

    /// All codifferentials `delta[0..2n]` feeding the degree operators,
    /// re-verifying the duality invariants and that `delta . delta = 0`
    /// inside that range (a consequence of `d_ext . d_ext = 0`).
    pub fn build_delta(&self) -> Result<Vec<DMatrix<f64>>> {
        self.check_gamma(GAMMA_TOL)?;
        let deltas: Vec<DMatrix<f64>> = (0..2 * self.n).map(|q| self.delta(q)).collect();
        let scale = deltas.iter().map(frob).fold(1.0, f64::max);
        for q in 1..deltas.len() {
            let defect = frob(&(&deltas[q - 1] * &deltas[q]));
            assert!(
                defect <= GAMMA_TOL * scale * scale.max(1.0),
                "delta[{}] . delta[{}] has norm {defect:.3e}",
                q - 1,
                q
            );
        }
        Ok(deltas)
    }

    /// Degree operator `d delta + delta d` on `A^q` for `0 <= q <= 2n`.
    /// The term with the missing differential drops out at each end.
    pub fn laplacian(&self, q: usize) -> DMatrix<f64> {
        assert!(q <= 2 * self.n, "degree {q} outside the torsion range");
        let mut lap = DMatrix::zeros(self.dim(q), self.dim(q));
        if q > 0 {
            lap += self.d(q - 1) * self.delta(q - 1);
        }
        if q < 2 * self.n {
            lap += self.delta(q) * self.d(q);
        }
        lap
    }

    /// Relative deviation of the degree operator from self-adjointness with
    /// respect to the degree-q inner product. Reported, never asserted: the
    /// codifferential comes from `gamma`, not from the inner products.
    pub fn self_adjointness_residual(&self, q: usize) -> f64 {
        let lap = self.laplacian(q);
        let weighted = &self.gram[q] * &lap;
        let skew = &weighted - weighted.transpose();
        frob(&skew) / frob(&weighted).max(1.0)
    }

    /// Eigenvalue log-determinant of the degree-q operator, excluding the
    /// zero modes. Errors with `NonRealSpectrum` when an eigenvalue leaves
    /// the nonnegative real axis or when the zero eigenvalue is defective
    /// (algebraic multiplicity above the rank deficiency), since either case
    /// invalidates a spectral determinant.
    pub fn spectrum_log_det(&self, q: usize) -> Result<SpectralLogDet> {
        let lap = self.laplacian(q);
        let dim = lap.nrows();
        if dim == 0 {
            return Ok(SpectralLogDet {
                log_det: 0.0,
                nullity: 0,
                dim,
            });
        }
        let eigs = complex_spectrum(&lap)?;
        let scale = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
        let tol = SPECTRUM_RTOL * scale;
        let mut log_det = 0.0;
        let mut nullity = 0usize;
        for z in &eigs {
            if z.im.abs() > tol || z.re < -tol {
                return Err(Error::NonRealSpectrum(format!(
                    "degree {q}: eigenvalue {:.6e} + {:.6e}i leaves the nonnegative real axis",
                    z.re, z.im
                )));
            }
            if z.norm() <= tol {
                nullity += 1;
            } else {
                log_det += z.re.ln();
            }
        }
        let rank = lap
            .svd(false, false)
            .singular_values
            .iter()
            .filter(|&&s| s > tol)
            .count();
        if rank != dim - nullity {
            return Err(Error::NonRealSpectrum(format!(
                "degree {q}: zero eigenvalue is defective (rank {rank}, {} zero eigenvalues in dimension {dim})",
                nullity
            )));
        }
        Ok(SpectralLogDet {
            log_det,
            nullity,
            dim,
        })
    }

    /// Log torsion of the lower-half complex:
    /// `1/2 sum_{q=0}^{2n} (-1)^{q+1} q log det' laplacian(q)`.
    /// Zero differentials give an empty nonzero spectrum and hence 0.
    pub fn torsion_log(&self) -> Result<f64> {
        let mut acc = 0.0;
        for q in 0..=2 * self.n {
            let sign = if q % 2 == 0 { -1.0 } else { 1.0 };
            acc += sign * q as f64 * self.spectrum_log_det(q)?.log_det;
        }
        Ok(0.5 * acc)
    }

    /// The same weighted sum without the one-half factor, the normalization
    /// used by the self-dual torsion; both normalizations are reported
    /// because the two determinant conventions differ exactly by this factor.
    pub fn torsion_log_unhalved(&self) -> Result<f64> {
        Ok(2.0 * self.torsion_log()?)
    }

    /// Heat operator `exp(-t laplacian(q))` (matrix exponential; the degree
    /// operator need not be symmetric).
    pub fn heat_operator(&self, q: usize, t: f64) -> DMatrix<f64> {
        (self.laplacian(q) * (-t)).exp()
    }

    /// Log torsion of an acyclic model through plain determinants:
    /// `1/2 sum (-1)^{q+1} q log det laplacian(q)`. Along a one-parameter
    /// duality family the degree operators leave the symmetric cone and
    /// individual eigenvalues may pair off into complex conjugates, but the
    /// determinant is a real polynomial in the entries and stays positive,
    /// so the acyclic torsion remains well-defined where the eigenvalue
    /// gate of [`Self::spectrum_log_det`] would refuse.
    pub fn torsion_log_acyclic(&self) -> Result<f64> {
        let mut acc = 0.0;
        for q in 1..=2 * self.n {
            let lap = self.laplacian(q);
            let scale = frob(&lap).max(1.0);
            let det = lap.lu().determinant();
            if det.abs() <= 1e-300 * scale {
                return Err(Error::AcyclicityViolation(format!(
                    "degree {q} operator is singular"
                )));
            }
            if det < 0.0 {
                return Err(Error::NonRealSpectrum(format!(
                    "degree {q} operator has negative determinant {det:.6e}"
                )));
            }
            let sign = if q % 2 == 0 { -1.0 } else { 1.0 };
            acc += sign * q as f64 * det.ln();
        }
        Ok(0.5 * acc)
    }

    /// Block-diagonal direct sum; torsions add in log scale.
    pub fn direct_sum(&self, other: &QuaternionicModel) -> Result<QuaternionicModel> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "direct sum requires equal n, got {} and {}",
                self.n, other.n
            )));
        }
        let join = |a: &DMatrix<f64>, b: &DMatrix<f64>| {
            let mut out = DMatrix::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
            out.view_mut((0, 0), a.shape()).copy_from(a);
            out.view_mut(a.shape(), b.shape()).copy_from(b);
            out
        };
        QuaternionicModel::with_grams(
            self.n,
            self.gram
                .iter()
                .zip(&other.gram)
                .map(|(a, b)| join(a, b))
                .collect(),
            self.d_first
                .iter()
                .zip(&other.d_first)
                .map(|(a, b)| join(a, b))
                .collect(),
            self.d_ext
                .iter()
                .zip(&other.d_ext)
                .map(|(a, b)| join(a, b))
                .collect(),
            self.gamma
                .iter()
                .zip(&other.gamma)
                .map(|(a, b)| join(a, b))
                .collect(),
        )
    }

    /// True when every degree operator in the torsion range is invertible.
    pub fn is_acyclic(&self) -> Result<bool> {
        for q in 0..=2 * self.n {
            if self.spectrum_log_det(q)?.nullity > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

// ---------------------------------------------------------------------------
// The flat four-dimensional fiber model.
// ---------------------------------------------------------------------------

/// Integer entry tables for the flat model: each matrix entry is
/// `sign * v[index]` (or a constant for the duality blocks). Shared between
/// the float and the exact-rational constructions.
type EntryTable = &'static [&'static [(i8, usize)]];

/// d0 = v wedge on scalars, in the basis e1..e4.
const D0_ROWS: EntryTable = &[&[(1, 0)], &[(1, 1)], &[(1, 2)], &[(1, 3)]];

/// d1 = sqrt(2) P_+ (v wedge .) from one-forms to the plus part of two-forms,
/// in the orthonormal basis
/// `w1 = (e12 + e34)/sqrt2, w2 = (e13 - e24)/sqrt2, w3 = (e14 + e23)/sqrt2`;
/// the sqrt(2) normalization makes `d1 d1*` agree with the full two-form
/// Laplacian restricted to the plus part, and leaves every entry integral.
const D1_ROWS: EntryTable = &[
    &[(-1, 1), (1, 0), (-1, 3), (1, 2)],
    &[(-1, 2), (1, 3), (1, 0), (-1, 1)],
    &[(-1, 3), (-1, 2), (1, 1), (1, 0)],
];

/// dext2 = sqrt(2) (v wedge .) from the plus part to three-forms, in the
/// basis e123, e124, e134, e234.
const DEXT2_ROWS: EntryTable = &[
    &[(1, 2), (-1, 1), (1, 0)],
    &[(1, 3), (-1, 0), (-1, 1)],
    &[(1, 0), (1, 3), (-1, 2)],
    &[(1, 1), (1, 2), (1, 3)],
];

/// dext3 = v wedge from three-forms to the volume line.
const DEXT3_ROWS: EntryTable = &[&[(-1, 3), (1, 2), (-1, 1), (1, 0)]];

/// Duality blocks: signed Hodge star in the bases above, with per-degree
/// signs chosen so that gamma . gamma = +1 and the induced codifferential is
/// the transpose of the differential. One (row, sign) pair per column of the
/// degree-one block; the degree-three block is its inverse permutation.
const G1_SIGNS: [(usize, i8); 4] = [(3, 1), (2, -1), (1, 1), (0, -1)];

fn table_matrix_f64(rows: EntryTable, cols: usize, v: &[f64; 4]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, &(sign, idx)) in row.iter().enumerate() {
            m[(r, c)] = sign as f64 * v[idx];
        }
    }
    m
}

fn table_matrix_i64(rows: EntryTable, cols: usize, v: &[i64; 4]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; cols]; rows.len()];
    for (r, row) in rows.iter().enumerate() {
        for (c, &(sign, idx)) in row.iter().enumerate() {
            m[r][c] = sign as i64 * v[idx];
        }
    }
    m
}

fn gamma_blocks_f64() -> Vec<DMatrix<f64>> {
    let mut g1 = DMatrix::zeros(4, 4);
    let mut g3 = DMatrix::zeros(4, 4);
    for (c, &(r, s)) in G1_SIGNS.iter().enumerate() {
        g1[(r, c)] = s as f64;
        // gamma3 is the inverse permutation with the same signs.
        g3[(c, r)] = s as f64;
    }
    vec![
        DMatrix::identity(1, 1),
        g1,
        -DMatrix::identity(3, 3),
        g3,
        DMatrix::identity(1, 1),
    ]
}

/// The flat model over a four-dimensional fiber: degrees (1, 4, 3, 4, 1),
/// `d = v wedge` composed with the plus-part projection at the middle, and
/// the signed star as duality operator. For this model the codifferential
/// equals the transpose of the differential exactly, so every degree
/// operator is symmetric with spectrum `|v|^2`.
pub fn flat_model(v: [f64; 4]) -> Result<QuaternionicModel> {
    QuaternionicModel::new(
        1,
        vec![
            table_matrix_f64(D0_ROWS, 1, &v),
            table_matrix_f64(D1_ROWS, 4, &v),
        ],
        vec![
            table_matrix_f64(DEXT2_ROWS, 3, &v),
            table_matrix_f64(DEXT3_ROWS, 4, &v),
        ],
        gamma_blocks_f64(),
    )
}

/// Integer matrices of the flat model for exact-arithmetic work:
/// `(d0, d1, dext2, dext3)` with the same bases and normalizations as
/// [`flat_model`].
pub fn flat_model_int(v: [i64; 4]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>) {
    (
        table_matrix_i64(D0_ROWS, 1, &v),
        table_matrix_i64(D1_ROWS, 4, &v),
        table_matrix_i64(DEXT2_ROWS, 3, &v),
        table_matrix_i64(DEXT3_ROWS, 4, &v),
    )
}

/// Exact squared torsion of the flat model with integer direction `v`:
/// `det' lap(1) / det' lap(2)^2` as a rational number, computed through
/// exact characteristic polynomials. Equals `exp(2 * torsion_log)`.
pub fn flat_model_torsion_squared(v: [i64; 4]) -> Result<BigRational> {
    let (d0, d1, dext2, dext3) = flat_model_int(v);
    let to_r = |rows: &[Vec<i64>]| {
        RMatrix::from_i64(
            &rows
                .iter()
                .map(|r| r.as_slice())
                .collect::<Vec<_>>(),
        )
    };
    let (d0, d1, dext2, dext3) = (to_r(&d0), to_r(&d1), to_r(&dext2), to_r(&dext3));
    // Signed-star duality blocks as exact matrices.
    let mut g1 = RMatrix::zeros(4, 4);
    let mut g3 = RMatrix::zeros(4, 4);
    for (c, &(r, s)) in G1_SIGNS.iter().enumerate() {
        g1[(r, c)] = BigRational::from_integer(s.into());
        g3[(c, r)] = BigRational::from_integer(s.into());
    }
    let mut g2 = RMatrix::zeros(3, 3);
    for i in 0..3 {
        g2[(i, i)] = -BigRational::one();
    }
    let g4 = RMatrix::identity(1);
    // delta_q = gamma[4-q] . d[3-q] . gamma[q+1].
    let delta0 = g4.mul(&dext3).mul(&g1);
    let delta1 = g3.mul(&dext2).mul(&g2);
    let lap1 = d0.mul(&delta0).add(&delta1.mul(&d1));
    let lap2 = d1.mul(&delta1);
    let (det1, null1) = pseudo_det(&lap1);
    let (det2, null2) = pseudo_det(&lap2);
    if null1 > 0 || null2 > 0 {
        return Err(Error::AcyclicityViolation(format!(
            "flat model with v = {v:?} has zero modes ({null1}, {null2})"
        )));
    }
    Ok(det1 / (det2.clone() * det2))
}

// ---------------------------------------------------------------------------
// Seeded random models.
// ---------------------------------------------------------------------------

fn random_orthogonal(dim: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    if dim == 0 {
        return DMatrix::zeros(0, 0);
    }
    let a = DMatrix::from_fn(dim, dim, |_, _| {
        // Box-Muller standard normals from the seeded generator.
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        (-2.0 * u1.ln()).sqrt() * u2.cos()
    });
    let qr = a.qr();
    let mut q = qr.q();
    let r = qr.r();
    // Fix the sign convention so the distribution does not favor reflections.
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            for i in 0..dim {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// A random chain of differentials on spaces of the given dimensions, exact
/// in canonical coordinates (`d[q+1] . d[q] = 0` by block placement) and then
/// conjugated by the per-degree orthogonal maps.
fn random_chain(
    dims: &[usize],
    frames: &[DMatrix<f64>],
    rng: &mut ChaCha8Rng,
) -> Vec<DMatrix<f64>> {
    let mut ranks = vec![0usize; dims.len()];
    let mut out = Vec::with_capacity(dims.len() - 1);
    for q in 0..dims.len() - 1 {
        let prev = if q == 0 { 0 } else { ranks[q - 1] };
        let cap = (dims[q] - prev).min(dims[q + 1]);
        let r = if cap == 0 { 0 } else { rng.gen_range(0..=cap) };
        ranks[q] = r;
        let mut canon = DMatrix::zeros(dims[q + 1], dims[q]);
        for i in 0..r {
            for j in 0..r {
                let jitter: f64 = rng.gen_range(-0.3..0.3);
                canon[(i, dims[q] - r + j)] = if i == j { 1.0 + jitter.abs() } else { jitter };
            }
        }
        out.push(&frames[q + 1] * canon * frames[q].transpose());
    }
    out
}

/// Seeded random model with the flat fiber dimensions for the given `n`:
/// identity inner products, independent random differentials in each half
/// (exactly composing to zero up to roundoff), and a duality operator built
/// by conjugating a canonical involution with random orthogonal frames. The
/// degree operators of such a model are generically not self-adjoint.
pub fn random_model(n: usize, seed: u64) -> Result<QuaternionicModel> {
    let spec = fiber_dims(n)?;
    let top = 4 * n;
    let dims: Vec<usize> = (0..=top).map(|q| spec.dim(q)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frames: Vec<DMatrix<f64>> = dims.iter().map(|&d| random_orthogonal(d, &mut rng)).collect();
    // Independent frames for the duality operator keep gamma unrelated to
    // the transposes of the differentials.
    let pair_frames: Vec<DMatrix<f64>> =
        dims.iter().map(|&d| random_orthogonal(d, &mut rng)).collect();
    let d_first = random_chain(&dims[..=2 * n], &frames[..=2 * n], &mut rng);
    let d_ext = random_chain(&dims[2 * n..], &frames[2 * n..], &mut rng);
    let mut gamma = Vec::with_capacity(top + 1);
    for q in 0..=top {
        let canon = if q == 2 * n {
            DMatrix::from_diagonal(&DVector::from_fn(dims[q], |i, _| {
                if i < dims[q].div_ceil(2) {
                    1.0
                } else {
                    -1.0
                }
            }))
        } else {
            DMatrix::identity(dims[top - q], dims[q])
        };
        gamma.push(&pair_frames[top - q] * canon * pair_frames[q].transpose());
    }
    QuaternionicModel::new(n, d_first, d_ext, gamma)
}

// ---------------------------------------------------------------------------
// One-parameter duality families.
// ---------------------------------------------------------------------------

/// One-parameter family `gamma_q(u) = T_{4n-q}(u) gamma_q T_q(u)^{-1}` with
/// `T_q(u) = exp(u K_q)` an isometry family (each generator `K_q` is
/// skew-adjoint for the degree-q inner product). Conjugation preserves
/// `gamma . gamma = 1` structurally; the family reports drift beyond
/// roundoff instead of silently renormalizing.
#[derive(Debug, Clone)]
pub struct GammaFamily {
    base: QuaternionicModel,
    generators: Vec<DMatrix<f64>>,
}

/// One evaluation of the variation identities at `(u, t)`.
#[derive(Debug, Clone, Copy)]
pub struct VariationCheck {
    /// Largest relative operator-norm gap between the closed-form derivative
    /// of the degree operators and a central finite difference.
    pub formula_residual: f64,
    /// Difference of the two sides of the alternating trace identity
    /// `sum (-1)^q q tr(lap_dot e^{-t lap}) = sum (-1)^q tr(alpha lap e^{-t lap})`.
    pub trace_identity_residual: f64,
}

impl GammaFamily {
    pub fn new(base: QuaternionicModel, generators: Vec<DMatrix<f64>>) -> Result<Self> {
        let top = base.top_degree();
        if generators.len() != top + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} generators, got {}",
                top + 1,
                generators.len()
            )));
        }
        for (q, k) in generators.iter().enumerate() {
            if k.nrows() != base.dim(q) || k.ncols() != base.dim(q) {
                return Err(Error::DimensionMismatch(format!(
                    "generator {q} has shape {}x{}, expected {0}x{0}",
                    k.nrows(),
                    k.ncols()
                )));
            }
            let skew = (base.gram(q) * k) + (base.gram(q) * k).transpose();
            if frob(&skew) > GAMMA_TOL * (1.0 + frob(k)) {
                return Err(Error::DomainError(format!(
                    "generator {q} is not skew-adjoint for the degree inner product"
                )));
            }
        }
        Ok(GammaFamily { base, generators })
    }

    pub fn base(&self) -> &QuaternionicModel {
        &self.base
    }

    fn transport(&self, q: usize, u: f64) -> DMatrix<f64> {
        (&self.generators[q] * u).exp()
    }

    /// The model at parameter `u`, with the conjugated duality operator.
    /// Errors with `GammaSquareDrift` when the involution property drifts
    /// beyond tolerance.
    pub fn model_at(&self, u: f64) -> Result<QuaternionicModel> {
        let top = self.base.top_degree();
        let mut gamma = Vec::with_capacity(top + 1);
        for q in 0..=top {
            let fwd = self.transport(top - q, u);
            let back = self.transport(q, -u);
            gamma.push(fwd * self.base.gamma(q) * back);
        }
        self.base.with_gamma(gamma)
    }

    /// The variation operator `alpha = gamma gamma_dot` per degree, computed
    /// exactly from the generators:
    /// `alpha_q(u) = gamma_{4n-q}(u) K_{4n-q} gamma_q(u) - K_q`.
    pub fn alpha_at(&self, u: f64) -> Result<Vec<DMatrix<f64>>> {
        let model = self.model_at(u)?;
        let top = self.base.top_degree();
        Ok((0..=top)
            .map(|q| {
                model.gamma(top - q) * &self.generators[top - q] * model.gamma(q)
                    - &self.generators[q]
            })
            .collect())
    }

    /// Closed-form derivative of the degree-q operator along the family:
    /// `-D alpha delta + D delta alpha - alpha delta D + delta alpha D`
    /// with the boundary terms dropped where a differential is absent.
    pub fn laplacian_dot(&self, u: f64, q: usize) -> Result<DMatrix<f64>> {
        let model = self.model_at(u)?;
        let alpha = self.alpha_at(u)?;
        let dim = model.dim(q);
        let mut dot = DMatrix::zeros(dim, dim);
        if q > 0 {
            let d = model.d(q - 1);
            let delta = model.delta(q - 1);
            dot += d * (&delta * &alpha[q]) - d * (&alpha[q - 1] * &delta);
        }
        if q < 2 * model.n() {
            let d = model.d(q);
            let delta = model.delta(q);
            dot += (&delta * &alpha[q + 1]) * d - (&alpha[q] * &delta) * d;
        }
        Ok(dot)
    }

    /// Central finite difference of the degree-q operator.
    pub fn laplacian_dot_fd(&self, u: f64, q: usize, h: f64) -> Result<DMatrix<f64>> {
        let plus = self.model_at(u + h)?.laplacian(q);
        let minus = self.model_at(u - h)?.laplacian(q);
        Ok((plus - minus) / (2.0 * h))
    }

    /// Evaluates both variation identities at `(u, t)` with step `h`:
    /// the closed-form versus finite-difference derivative of every degree
    /// operator, and the alternating trace identity.
    pub fn check_at(&self, u: f64, t: f64, h: f64) -> Result<VariationCheck> {
        let model = self.model_at(u)?;
        let alpha = self.alpha_at(u)?;
        let mut formula_residual: f64 = 0.0;
        let mut lhs = 0.0;
        let mut rhs = 0.0;
        for q in 0..=2 * model.n() {
            let dot = self.laplacian_dot(u, q)?;
            let fd = self.laplacian_dot_fd(u, q, h)?;
            let scale = frob(&dot).max(1.0);
            formula_residual = formula_residual.max(frob(&(&dot - &fd)) / scale);
            let heat = model.heat_operator(q, t);
            let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
            lhs += sign * q as f64 * (&dot * &heat).trace();
            rhs += sign * (&alpha[q] * model.laplacian(q) * &heat).trace();
        }
        Ok(VariationCheck {
            formula_residual,
            trace_identity_residual: lhs - rhs,
        })
    }
}

/// Finite-difference derivative of the log-torsion difference of two
/// equal-dimension acyclic families driven by the same generators. The
/// per-model derivative depends only on the variation operator, so the
/// difference must be flat in `u`.
pub fn acyclic_pair_drift(
    first: &GammaFamily,
    second: &GammaFamily,
    u: f64,
    h: f64,
) -> Result<f64> {
    if first.base().dims() != second.base().dims() {
        return Err(Error::DimensionMismatch(
            "paired families must have equal per-degree dimensions".into(),
        ));
    }
    for (model, name) in [(first, "first"), (second, "second")] {
        if !model.base().is_acyclic()? {
            return Err(Error::AcyclicityViolation(format!(
                "{name} family has zero modes at u = 0"
            )));
        }
    }
    let gap = |u: f64| -> Result<f64> {
        Ok(first.model_at(u)?.torsion_log_acyclic()?
            - second.model_at(u)?.torsion_log_acyclic()?)
    };
    Ok((gap(u + h)? - gap(u - h)?) / (2.0 * h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn fiber_dimension_tables() {
        let f1 = fiber_dims(1).unwrap();
        assert_eq!(f1.lower(), &[1, 4, 3]);
        assert_eq!(f1.alternating_sum(), 0);
        let f2 = fiber_dims(2).unwrap();
        assert_eq!(f2.lower(), &[1, 8, 18, 16, 5]);
        assert_eq!(f2.alternating_sum(), 0);
        for n in 1..=4 {
            let f = fiber_dims(n).unwrap();
            assert_eq!(f.dim(0), 1);
            assert_eq!(f.dim(2 * n), 2 * n + 1);
            assert_eq!(f.dim(4 * n), 1, "upper half mirrors the lower half");
            assert_eq!(f.alternating_sum(), 0);
        }
        assert!(fiber_dims(0).is_err());
    }

    #[test]
    fn flat_model_codifferential_is_the_adjoint() {
        let model = flat_model([0.7, -1.3, 0.4, 2.1]).unwrap();
        for q in 0..2 {
            let delta = model.delta(q);
            let adjoint = model.d(q).transpose();
            assert!(
                frob(&(&delta - &adjoint)) <= 1e-12 * frob(&adjoint),
                "delta[{q}] differs from the transpose of d[{q}]"
            );
        }
        for q in 0..=2 {
            assert!(model.self_adjointness_residual(q) < 1e-14);
        }
        model.build_delta().unwrap();
    }

    #[test]
    fn flat_model_torsion_matches_closed_form() {
        let v = [0.9f64, -0.2, 1.1, 0.6];
        let a2: f64 = v.iter().map(|x| x * x).sum();
        let model = flat_model(v).unwrap();
        // Every degree operator is a2 times the identity, so the log torsion
        // collapses to (1/2)(4 - 2*3) log a2 = -log a2.
        for q in 0..=2 {
            let lap = model.laplacian(q);
            let eye = DMatrix::identity(lap.nrows(), lap.ncols());
            assert!(frob(&(&lap - &(eye * a2))) < 1e-12 * a2);
        }
        let log_t = model.torsion_log().unwrap();
        assert_relative_eq!(log_t, -a2.ln(), max_relative = 1e-12);
        assert_relative_eq!(
            model.torsion_log_unhalved().unwrap(),
            -2.0 * a2.ln(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn flat_model_matches_three_term_complex_torsion() {
        let v = [1.4f64, 0.3, -0.8, 0.5];
        let model = flat_model(v).unwrap();
        let cx = crate::hodge::HodgeComplex::with_identity_grams(vec![
            model.d(0).clone(),
            model.d(1).clone(),
        ])
        .unwrap();
        // The half-weighted spectral torsion of the three-term complex equals
        // the duality-model torsion: same spectra, same half normalization.
        assert_relative_eq!(
            model.torsion_log().unwrap(),
            cx.log_torsion(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn exact_rational_torsion_squared_matches_three_term_complex() {
        let v = [2i64, -1, 3, 1];
        let squared = flat_model_torsion_squared(v).unwrap();
        let (d0, d1, _, _) = flat_model_int(v);
        let d0_rows: Vec<&[i64]> = d0.iter().map(|r| r.as_slice()).collect();
        let d1_rows: Vec<&[i64]> = d1.iter().map(|r| r.as_slice()).collect();
        let cx = crate::hodge::rational::RationalComplex::with_identity_grams(vec![
            RMatrix::from_i64(&d0_rows),
            RMatrix::from_i64(&d1_rows),
        ])
        .unwrap();
        assert_eq!(squared, cx.torsion_squared().unwrap());
        // a^2 = 15 here, and the squared torsion is a^{-4} = 1/50625.
        let a2 = BigRational::from_integer(15.into());
        assert_eq!(squared, (a2.clone() * a2).recip().clone());
    }

    #[test]
    fn zero_differentials_give_zero_torsion() {
        let dims = [1usize, 4, 3, 4, 1];
        let zeros = |r: usize, c: usize| DMatrix::<f64>::zeros(r, c);
        let model = QuaternionicModel::new(
            1,
            vec![zeros(dims[1], dims[0]), zeros(dims[2], dims[1])],
            vec![zeros(dims[3], dims[2]), zeros(dims[4], dims[3])],
            gamma_blocks_f64(),
        )
        .unwrap();
        assert_eq!(model.torsion_log().unwrap(), 0.0);
    }

    #[test]
    fn direct_sum_adds_torsions() {
        let a = flat_model([1.0, 0.5, -0.5, 0.25]).unwrap();
        let b = flat_model([0.3, -1.1, 0.8, 0.9]).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        assert_relative_eq!(
            sum.torsion_log().unwrap(),
            a.torsion_log().unwrap() + b.torsion_log().unwrap(),
            max_relative = 1e-10
        );
    }

    #[test]
    fn random_models_validate_and_report_asymmetry() {
        let mut saw_non_self_adjoint = false;
        for seed in 0..6u64 {
            let model = random_model(1, seed).unwrap();
            model.build_delta().unwrap();
            let worst = (0..=2)
                .map(|q| model.self_adjointness_residual(q))
                .fold(0.0f64, f64::max);
            if worst > 1e-3 {
                saw_non_self_adjoint = true;
            }
        }
        assert!(
            saw_non_self_adjoint,
            "expected at least one seed with a visibly non-self-adjoint degree operator"
        );
        // Larger fibers validate as well.
        random_model(2, 11).unwrap().build_delta().unwrap();
    }

    #[test]
    fn sign_flip_in_gamma_is_rejected() {
        let mut gamma = gamma_blocks_f64();
        gamma[1][(0, 3)] = 1.0; // breaks gamma[3] . gamma[1] = 1
        let v = [0.7, -1.3, 0.4, 2.1];
        let err = QuaternionicModel::new(
            1,
            vec![
                table_matrix_f64(D0_ROWS, 1, &v),
                table_matrix_f64(D1_ROWS, 4, &v),
            ],
            vec![
                table_matrix_f64(DEXT2_ROWS, 3, &v),
                table_matrix_f64(DEXT3_ROWS, 4, &v),
            ],
            gamma,
        )
        .unwrap_err();
        assert!(matches!(err, Error::IncompatibleGamma(_)));
    }

    #[test]
    fn gamma_drift_is_detected() {
        let model = flat_model([1.0, 0.0, 0.0, 0.0]).unwrap();
        let mut gamma: Vec<DMatrix<f64>> = (0..=4).map(|q| model.gamma(q).clone()).collect();
        gamma[2][(0, 0)] += 3e-10;
        let err = model.with_gamma(gamma).unwrap_err();
        assert!(matches!(err, Error::GammaSquareDrift(_)));
    }

    fn rotation_family(model: &QuaternionicModel, seed: u64) -> GammaFamily {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let generators = (0..=model.top_degree())
            .map(|q| {
                let d = model.dim(q);
                let raw = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
                (&raw - raw.transpose()) * 0.5
            })
            .collect();
        GammaFamily::new(model.clone(), generators).unwrap()
    }

    #[test]
    fn constant_family_has_zero_residuals() {
        let model = flat_model([0.9, -0.2, 1.1, 0.6]).unwrap();
        let zeros = (0..=4)
            .map(|q| DMatrix::zeros(model.dim(q), model.dim(q)))
            .collect();
        let family = GammaFamily::new(model, zeros).unwrap();
        let check = family.check_at(0.3, 1.0, 1e-5).unwrap();
        assert_eq!(check.formula_residual, 0.0);
        assert_eq!(check.trace_identity_residual, 0.0);
    }

    #[test]
    fn rotation_family_satisfies_variation_identities() {
        let model = flat_model([0.9, -0.2, 1.1, 0.6]).unwrap();
        let family = rotation_family(&model, 42);
        for &t in &[0.5, 1.0, 2.0] {
            let check = family.check_at(0.2, t, 1e-5).unwrap();
            assert!(
                check.formula_residual < 1e-6,
                "formula residual {} at t = {t}",
                check.formula_residual
            );
            assert!(
                check.trace_identity_residual.abs() < 1e-6,
                "trace identity residual {} at t = {t}",
                check.trace_identity_residual
            );
        }
    }

    #[test]
    fn variation_identities_hold_on_random_models() {
        for seed in [3u64, 17, 29] {
            let model = random_model(1, seed).unwrap();
            let family = rotation_family(&model, seed ^ 0xabcd);
            let check = family.check_at(0.1, 1.0, 1e-5).unwrap();
            assert!(check.formula_residual < 1e-6, "seed {seed}");
            assert!(check.trace_identity_residual.abs() < 1e-6, "seed {seed}");
        }
    }

    #[test]
    fn finite_difference_residual_decays_quadratically() {
        let model = flat_model([0.9, -0.2, 1.1, 0.6]).unwrap();
        let family = rotation_family(&model, 7);
        let res = |h: f64| family.check_at(0.15, 1.0, h).unwrap().formula_residual;
        let coarse = res(1e-2);
        let fine = res(1e-3);
        let ratio = coarse / fine;
        assert!(
            (20.0..500.0).contains(&ratio),
            "expected roughly quadratic decay, got ratio {ratio}"
        );
    }

    #[test]
    fn single_degree_generator_keeps_identities() {
        let model = flat_model([0.9, -0.2, 1.1, 0.6]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let generators: Vec<DMatrix<f64>> = (0..=4)
            .map(|q| {
                let d = model.dim(q);
                if q == 1 {
                    let raw = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
                    (&raw - raw.transpose()) * 0.5
                } else {
                    DMatrix::zeros(d, d)
                }
            })
            .collect();
        let family = GammaFamily::new(model, generators).unwrap();
        // The variation operator lives in degrees 1 and 3 only; inside the
        // torsion range that is the single degree 1.
        let alpha = family.alpha_at(0.2).unwrap();
        for (q, a) in alpha.iter().enumerate().take(3) {
            if q == 1 {
                assert!(frob(a) > 1e-3);
            } else {
                assert!(frob(a) < 1e-14);
            }
        }
        let check = family.check_at(0.2, 1.0, 1e-5).unwrap();
        assert!(check.formula_residual < 1e-6);
        assert!(check.trace_identity_residual.abs() < 1e-6);
    }

    #[test]
    fn acyclic_pair_difference_is_flat() {
        let first_model = flat_model([0.9, -0.2, 1.1, 0.6]).unwrap();
        let second_model = flat_model([1.7, 0.4, -0.3, 0.2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let generators: Vec<DMatrix<f64>> = (0..=4)
            .map(|q| {
                let d = first_model.dim(q);
                let raw = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
                (&raw - raw.transpose()) * 0.5
            })
            .collect();
        let first = GammaFamily::new(first_model, generators.clone()).unwrap();
        let second = GammaFamily::new(second_model, generators).unwrap();
        let drift = acyclic_pair_drift(&first, &second, 0.1, 1e-4).unwrap();
        assert!(drift.abs() < 1e-6, "pair drift {drift}");
    }

    #[test]
    fn twisted_extension_gives_non_real_spectrum_error() {
        // Replace the extension differentials with a rotated copy: still a
        // complex, still duality-compatible, but the induced codifferential
        // is no longer tied to the adjoint and the middle degree operator
        // picks up complex eigenvalues.
        let v = [1.0, 0.0, 0.0, 0.0];
        let theta: f64 = std::f64::consts::FRAC_PI_2;
        let (c, s) = (theta.cos(), theta.sin());
        let mut rot = DMatrix::identity(3, 3);
        rot[(0, 0)] = c;
        rot[(0, 1)] = -s;
        rot[(1, 0)] = s;
        rot[(1, 1)] = c;
        let dext2 = table_matrix_f64(DEXT2_ROWS, 3, &v) * rot;
        let model = QuaternionicModel::new(
            1,
            vec![
                table_matrix_f64(D0_ROWS, 1, &v),
                table_matrix_f64(D1_ROWS, 4, &v),
            ],
            vec![dext2, table_matrix_f64(DEXT3_ROWS, 4, &v)],
            gamma_blocks_f64(),
        )
        .unwrap();
        let outcome = (0..=2).map(|q| model.spectrum_log_det(q)).collect::<Result<Vec<_>>>();
        assert!(
            matches!(outcome, Err(Error::NonRealSpectrum(_))),
            "expected a non-real spectrum, got {outcome:?}"
        );
    }
}
