//! Duality-symmetric complexes built by doubling: given a base complex K
//! of top degree N, the doubled complex has C_q = K_q ⊕ K_{N−q} with
//! differential d ⊕ δ, and the swap star_q(x, y) = (y, x) : C_q → C_{N−q}
//! is an isometric involution conjugating d into its adjoint exactly.
//! An optional harmonic middle summand with star = diag(±1) produces a
//! nonzero signature.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hodge::HodgeComplex;

#[derive(Debug, Clone)]
pub struct DoubledComplex {
    pub complex: HodgeComplex,
    /// star[q] : C_q → C_{N−q}.
    star: Vec<DMatrix<f64>>,
    /// Assembled adjoints blockdiag(δ_q, d_{N−q−1}) kept for exact checks.
    adjoint: Vec<DMatrix<f64>>,
    middle: Option<(usize, usize)>,
}

fn block_diag(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    m.view_mut((a.nrows(), a.ncols()), (b.nrows(), b.ncols()))
        .copy_from(b);
    m
}

fn swap_matrix(first: usize, second: usize) -> DMatrix<f64> {
    // (x, y) ↦ (y, x) for x of length `first`, y of length `second`
    let mut s = DMatrix::zeros(first + second, first + second);
    for i in 0..second {
        s[(i, first + i)] = 1.0;
    }
    for i in 0..first {
        s[(second + i, i)] = 1.0;
    }
    s
}

impl DoubledComplex {
    pub fn new(base: &HodgeComplex) -> Result<Self> {
        Self::build(base, None)
    }

    /// Add a harmonic middle summand of dimension plus + minus on which the
    /// star acts as diag(+1, …, −1, …); requires an even top degree.
    pub fn with_middle(base: &HodgeComplex, plus: usize, minus: usize) -> Result<Self> {
        Self::build(base, Some((plus, minus)))
    }

    fn build(base: &HodgeComplex, middle: Option<(usize, usize)>) -> Result<Self> {
        let n = base.top();
        if middle.is_some() && n % 2 != 0 {
            return Err(Error::MiddleDegreeMissing);
        }
        let h_dim = middle.map_or(0, |(p, m)| p + m);
        let mid = n / 2;
        let has_mid = |q: usize| middle.is_some() && q == mid;

        let deltas: Vec<DMatrix<f64>> = (0..n).map(|q| base.delta(q)).collect();

        let mut d = Vec::with_capacity(n);
        let mut adjoint = Vec::with_capacity(n);
        for q in 0..n {
            // d^C_q = d_q ⊕ δ_{N−q−1} : K_q ⊕ K_{N−q} → K_{q+1} ⊕ K_{N−q−1}
            let mut dq = block_diag(&base.differential(q), &deltas[n - q - 1]);
            // δ^C_q = δ_q ⊕ d_{N−q−1} : K_{q+1} ⊕ K_{N−q−1} → K_q ⊕ K_{N−q}
            let mut aq = block_diag(&deltas[q], &base.differential(n - q - 1));
            if has_mid(q) {
                // middle summand is harmonic: d kills it, nothing maps onto it
                let (dc, ar) = (dq.ncols(), aq.nrows());
                dq = dq.insert_columns(dc, h_dim, 0.0);
                aq = aq.insert_rows(ar, h_dim, 0.0);
            }
            if has_mid(q + 1) {
                let (dr, ac) = (dq.nrows(), aq.ncols());
                dq = dq.insert_rows(dr, h_dim, 0.0);
                aq = aq.insert_columns(ac, h_dim, 0.0);
            }
            d.push(dq);
            adjoint.push(aq);
        }

        let mut gram = Vec::with_capacity(n + 1);
        let mut star = Vec::with_capacity(n + 1);
        for q in 0..=n {
            let mut gq = block_diag(base.gram(q), base.gram(n - q));
            let mut sq = swap_matrix(base.dim(q), base.dim(n - q));
            if has_mid(q) {
                let (p, m) = middle.unwrap();
                let mut h_star = DMatrix::identity(p + m, p + m);
                for i in p..p + m {
                    h_star[(i, i)] = -1.0;
                }
                gq = block_diag(&gq, &DMatrix::identity(p + m, p + m));
                sq = block_diag(&sq, &h_star);
            }
            gram.push(gq);
            star.push(sq);
        }

        let complex = HodgeComplex::new(d, gram)?;
        Ok(DoubledComplex {
            complex,
            star,
            adjoint,
            middle,
        })
    }

    /// star_q : C_q → C_{N−q}.
    pub fn star(&self, q: usize) -> &DMatrix<f64> {
        &self.star[q]
    }

    /// Largest entry of star_{N−q} star_q − I over all degrees.
    pub fn star_square_defect(&self) -> f64 {
        let n = self.complex.top();
        (0..=n)
            .map(|q| {
                let m = &self.star[n - q] * &self.star[q];
                let eye = DMatrix::identity(m.nrows(), m.ncols());
                (m - eye)
                    .iter()
                    .fold(0.0f64, |a, v| a.max(v.abs()))
            })
            .fold(0.0, f64::max)
    }

    /// Largest entry of star_qᵀ G_{N−q} star_q − G_q over all degrees.
    pub fn star_isometry_defect(&self) -> f64 {
        let n = self.complex.top();
        (0..=n)
            .map(|q| {
                let m = self.star[q].transpose() * self.complex.gram(n - q) * &self.star[q];
                (m - self.complex.gram(q))
                    .iter()
                    .fold(0.0f64, |a, v| a.max(v.abs()))
            })
            .fold(0.0, f64::max)
    }

    /// Largest entry of star_{N−q} d_{N−q−1} star_{q+1} − δ_q over all
    /// degrees, with δ the assembled block adjoint. Zero by construction.
    pub fn duality_defect(&self) -> f64 {
        let n = self.complex.top();
        (0..n)
            .map(|q| {
                // star_{N−q} ∘ d_{N−q−1} ∘ star_{q+1} : C_{q+1} → C_q
                let conj = &self.star[n - q] * &self.complex.differential(n - q - 1)
                    * &self.star[q + 1];
                (conj - &self.adjoint[q])
                    .iter()
                    .fold(0.0f64, |a, v| a.max(v.abs()))
            })
            .fold(0.0, f64::max)
    }

    /// Largest deviation of the assembled block adjoint from the complex's
    /// own metric adjoint δ_q = G_q⁻¹ d_qᵀ G_{q+1} (numerical round-trip).
    pub fn adjoint_consistency(&self) -> f64 {
        let n = self.complex.top();
        (0..n)
            .map(|q| {
                (self.complex.delta(q) - &self.adjoint[q])
                    .iter()
                    .fold(0.0f64, |a, v| a.max(v.abs()))
            })
            .fold(0.0, f64::max)
    }

    fn middle_degree(&self) -> Result<usize> {
        let n = self.complex.top();
        if n % 2 != 0 {
            return Err(Error::MiddleDegreeMissing);
        }
        Ok(n / 2)
    }

    /// tr(star_m e^{−tΔ_m}) at the middle degree — independent of t, equal
    /// to the signature.
    pub fn signature_trace(&self, t: f64) -> Result<f64> {
        let m = self.middle_degree()?;
        Ok((&self.star[m] * self.complex.heat_operator(m, t)).trace())
    }

    /// tr(star_m restricted to the middle harmonics), rounded: the number
    /// of +1 minus the number of −1 star-eigenvectors among harmonics.
    pub fn signature(&self) -> Result<i64> {
        let m = self.middle_degree()?;
        let tr = (&self.star[m] * self.complex.harmonic_projector(m)).trace();
        Ok(tr.round() as i64)
    }

    /// The (plus, minus) middle summand, if one was attached.
    pub fn middle_summand(&self) -> Option<(usize, usize)> {
        self.middle
    }
}
