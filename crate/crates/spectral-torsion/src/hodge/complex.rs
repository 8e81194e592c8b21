//! A bounded cochain complex of finite-dimensional real vector spaces with
//! chosen inner products, together with the operators the torsion
//! identities are built from.
//!
//! Degrees run 0..=N. The differential d_q: C_q → C_{q+1} is stored as a
//! dim(q+1) × dim(q) matrix; the inner product on C_q is an SPD Gram
//! matrix G_q. The codifferential is the metric adjoint
//! δ_q = G_q⁻¹ d_qᵀ G_{q+1} : C_{q+1} → C_q, and the Laplacian is
//! Δ_q = d_{q−1} δ_{q−1} + δ_q d_q.
//!
//! Numerically everything routes through the orthonormalizing change of
//! basis G = L Lᵀ (Cholesky): d̃_q = L_{q+1}ᵀ d_q L_q⁻ᵀ, and the whitened
//! Laplacian M_q = d̃_{q−1} d̃_{q−1}ᵀ + d̃_qᵀ d̃_q is symmetric PSD with the
//! same spectrum as Δ_q.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::zeta::accum::Acc;

/// Relative threshold below which an eigenvalue counts as harmonic.
pub const KERNEL_RTOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct HodgeComplex {
    d: Vec<DMatrix<f64>>,
    gram: Vec<DMatrix<f64>>,
    /// Lower Cholesky factors of the Gram matrices.
    chol_l: Vec<DMatrix<f64>>,
}

fn cholesky_lower(g: &DMatrix<f64>, q: usize) -> Result<DMatrix<f64>> {
    let n = g.nrows();
    if n == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let scale = g.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let asym = (g - g.transpose())
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()));
    if asym > 1e-12 * scale.max(1.0) {
        return Err(Error::GramNotSpd(format!(
            "inner product in degree {q} is not symmetric (max asymmetry {asym:.3e})"
        )));
    }
    let sym = (g + g.transpose()) * 0.5;
    nalgebra::Cholesky::new(sym)
        .map(|c| c.l())
        .ok_or_else(|| {
            Error::GramNotSpd(format!("inner product in degree {q} is not positive definite"))
        })
}

impl HodgeComplex {
    /// Build and validate a complex. `d[q]` maps degree q to q+1 and must be
    /// dim(q+1) × dim(q); `gram` has one SPD matrix per degree (one more
    /// entry than `d`); consecutive differentials must compose to zero.
    pub fn new(d: Vec<DMatrix<f64>>, gram: Vec<DMatrix<f64>>) -> Result<Self> {
        if gram.len() != d.len() + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} differentials need {} inner products, got {}",
                d.len(),
                d.len() + 1,
                gram.len()
            )));
        }
        for (q, g) in gram.iter().enumerate() {
            if g.nrows() != g.ncols() {
                return Err(Error::DimensionMismatch(format!(
                    "inner product in degree {q} is {}x{}",
                    g.nrows(),
                    g.ncols()
                )));
            }
        }
        for (q, dq) in d.iter().enumerate() {
            if dq.ncols() != gram[q].nrows() || dq.nrows() != gram[q + 1].nrows() {
                return Err(Error::DimensionMismatch(format!(
                    "differential {q} is {}x{}, expected {}x{}",
                    dq.nrows(),
                    dq.ncols(),
                    gram[q + 1].nrows(),
                    gram[q].nrows()
                )));
            }
        }
        for q in 0..d.len().saturating_sub(1) {
            let dd = &d[q + 1] * &d[q];
            let err = dd.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            let scale = d[q + 1].norm() * d[q].norm();
            if err > 1e-10 * (1.0 + scale) {
                return Err(Error::NotAComplex(format!(
                    "d_{} ∘ d_{} has max entry {err:.3e}",
                    q + 1,
                    q
                )));
            }
        }
        let chol_l = gram
            .iter()
            .enumerate()
            .map(|(q, g)| cholesky_lower(g, q))
            .collect::<Result<Vec<_>>>()?;
        Ok(HodgeComplex { d, gram, chol_l })
    }

    /// Build a complex with the standard inner product in every degree.
    /// The degree dimensions are read off the differential shapes.
    pub fn with_identity_grams(d: Vec<DMatrix<f64>>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::DimensionMismatch(
                "need at least one differential to infer the grading".into(),
            ));
        }
        let mut gram: Vec<DMatrix<f64>> =
            d.iter().map(|m| DMatrix::identity(m.ncols(), m.ncols())).collect();
        let last = d.last().unwrap().nrows();
        gram.push(DMatrix::identity(last, last));
        Self::new(d, gram)
    }

    /// Number of degrees (N + 1).
    pub fn degrees(&self) -> usize {
        self.gram.len()
    }

    /// Top degree N.
    pub fn top(&self) -> usize {
        self.d.len()
    }

    pub fn dim(&self, q: usize) -> usize {
        self.gram[q].nrows()
    }

    pub fn total_dim(&self) -> usize {
        (0..self.degrees()).map(|q| self.dim(q)).sum()
    }

    /// d_q, with empty matrices standing in for the maps off either end.
    pub fn differential(&self, q: usize) -> DMatrix<f64> {
        if q < self.d.len() {
            self.d[q].clone()
        } else {
            DMatrix::zeros(0, self.dim(self.top()))
        }
    }

    pub fn gram(&self, q: usize) -> &DMatrix<f64> {
        &self.gram[q]
    }

    fn lower(&self, q: usize) -> &DMatrix<f64> {
        &self.chol_l[q]
    }

    /// X ↦ L_q⁻ᵀ X (out of the orthonormal frame).
    fn unwhiten(&self, q: usize, x: &DMatrix<f64>) -> DMatrix<f64> {
        self.lower(q)
            .transpose()
            .solve_upper_triangular(x)
            .expect("cholesky factor is invertible")
    }

    /// d̃_q = L_{q+1}ᵀ d_q L_q⁻ᵀ, the differential between orthonormal frames.
    pub fn whitened_d(&self, q: usize) -> DMatrix<f64> {
        if q >= self.d.len() {
            return DMatrix::zeros(0, self.dim(self.top()));
        }
        // right-solve: (L_q⁻¹ d_qᵀ)ᵀ = d_q L_q⁻ᵀ
        let right = self
            .lower(q)
            .solve_lower_triangular(&self.d[q].transpose())
            .expect("cholesky factor is invertible")
            .transpose();
        self.lower(q + 1).transpose() * right
    }

    /// δ_q = G_q⁻¹ d_qᵀ G_{q+1} : C_{q+1} → C_q in the original frames.
    pub fn delta(&self, q: usize) -> DMatrix<f64> {
        if q >= self.d.len() {
            return DMatrix::zeros(self.dim(self.top()), 0);
        }
        let rhs = self.d[q].transpose() * &self.gram[q + 1];
        let y = self
            .lower(q)
            .solve_lower_triangular(&rhs)
            .expect("cholesky factor is invertible");
        self.lower(q)
            .transpose()
            .solve_upper_triangular(&y)
            .expect("cholesky factor is invertible")
    }

    /// Δ_q = d_{q−1} δ_{q−1} + δ_q d_q in the original frame.
    pub fn laplacian(&self, q: usize) -> DMatrix<f64> {
        let n = self.dim(q);
        let mut lap = DMatrix::zeros(n, n);
        if q > 0 && q <= self.d.len() {
            lap += &self.d[q - 1] * self.delta(q - 1);
        }
        if q < self.d.len() {
            lap += self.delta(q) * &self.d[q];
        }
        lap
    }

    /// M_q = d̃_{q−1} d̃_{q−1}ᵀ + d̃_qᵀ d̃_q — symmetric PSD, isospectral to Δ_q.
    pub fn whitened_laplacian(&self, q: usize) -> DMatrix<f64> {
        let n = self.dim(q);
        let mut m = DMatrix::zeros(n, n);
        if q > 0 && q <= self.d.len() {
            let w = self.whitened_d(q - 1);
            m += &w * w.transpose();
        }
        if q < self.d.len() {
            let w = self.whitened_d(q);
            m += w.transpose() * &w;
        }
        (&m + m.transpose()) * 0.5
    }

    /// Eigenvalues (ascending) and orthonormal-frame eigenvectors of Δ_q.
    pub fn eigen(&self, q: usize) -> (Vec<f64>, DMatrix<f64>) {
        let n = self.dim(q);
        if n == 0 {
            return (Vec::new(), DMatrix::zeros(0, 0));
        }
        let se = SymmetricEigen::new(self.whitened_laplacian(q));
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
        let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i].max(0.0)).collect();
        let vecs = DMatrix::from_fn(n, n, |r, c| se.eigenvectors[(r, order[c])]);
        (vals, vecs)
    }

    /// Sorted spectrum of Δ_q.
    pub fn spectrum(&self, q: usize) -> Vec<f64> {
        self.eigen(q).0
    }

    /// Absolute eigenvalue threshold separating harmonic modes from the
    /// rest: KERNEL_RTOL times the largest eigenvalue across all degrees.
    pub fn kernel_threshold(&self) -> f64 {
        let mut top = 0.0f64;
        for q in 0..self.degrees() {
            if let Some(&l) = self.spectrum(q).last() {
                top = top.max(l);
            }
        }
        KERNEL_RTOL * top
    }

    /// dim ker Δ_q (numerical).
    pub fn betti(&self, q: usize) -> usize {
        let thresh = self.kernel_threshold();
        self.spectrum(q).iter().filter(|&&l| l <= thresh).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.degrees())
            .map(|q| {
                let d = self.dim(q) as i64;
                if q % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }

    /// G-orthogonal projector onto ker Δ_q, in the original frame.
    pub fn harmonic_projector(&self, q: usize) -> DMatrix<f64> {
        let thresh = self.kernel_threshold();
        let (vals, vecs) = self.eigen(q);
        let k = vals.iter().filter(|&&l| l <= thresh).count();
        let v0 = vecs.columns(0, k).into_owned();
        let p_white = &v0 * v0.transpose();
        let half = self.unwhiten(q, &p_white);
        half * self.lower(q).transpose()
    }

    /// e^{−tΔ_q} in the original frame.
    pub fn heat_operator(&self, q: usize, t: f64) -> DMatrix<f64> {
        let (vals, vecs) = self.eigen(q);
        let n = vals.len();
        let mut core = DMatrix::zeros(n, n);
        for (i, &l) in vals.iter().enumerate() {
            core[(i, i)] = (-t * l).exp();
        }
        let white = &vecs * core * vecs.transpose();
        let half = self.unwhiten(q, &white);
        half * self.lower(q).transpose()
    }

    /// tr e^{−tΔ_q}, zero modes included.
    pub fn heat_trace(&self, q: usize, t: f64) -> f64 {
        let mut acc = Acc::new();
        for l in self.spectrum(q) {
            acc.add((-t * l).exp());
        }
        acc.value()
    }

    /// Σ log λ over the nonzero spectrum of Δ_q.
    pub fn log_det_prime(&self, q: usize) -> f64 {
        let thresh = self.kernel_threshold();
        let mut acc = Acc::new();
        for l in self.spectrum(q) {
            if l > thresh {
                acc.add(l.ln());
            }
        }
        acc.value()
    }

    /// log v_q for v_q = Π σ² over the nonzero singular values of d_q —
    /// the determinant of δ_q d_q on the orthogonal complement of ker d_q.
    pub fn log_volume_ratio(&self, q: usize) -> f64 {
        if q >= self.d.len() {
            return 0.0;
        }
        let thresh = self.kernel_threshold();
        let svals = self.whitened_d(q).singular_values();
        let mut acc = Acc::new();
        for s in svals.iter() {
            if s * s > thresh {
                acc.add(2.0 * s.ln());
            }
        }
        acc.value()
    }

    /// log τ = ½ Σ_q (−1)^q log v_q.
    pub fn log_torsion(&self) -> f64 {
        let mut acc = Acc::new();
        for q in 0..self.d.len() {
            let v = self.log_volume_ratio(q);
            acc.add(if q % 2 == 0 { 0.5 * v } else { -0.5 * v });
        }
        acc.value()
    }

    /// log τ assembled from the Laplacians instead:
    /// ½ Σ_q (−1)^{q+1} q · log det′ Δ_q. Equal to [`Self::log_torsion`]
    /// because det′ Δ_q = v_q · v_{q−1}.
    pub fn log_torsion_from_laplacians(&self) -> f64 {
        let mut acc = Acc::new();
        for q in 0..self.degrees() {
            let w = 0.5 * q as f64 * if q % 2 == 0 { -1.0 } else { 1.0 };
            if w != 0.0 {
                acc.add(w * self.log_det_prime(q));
            }
        }
        acc.value()
    }
}
