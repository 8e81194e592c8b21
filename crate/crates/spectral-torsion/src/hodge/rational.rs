//! Exact rational linear algebra: for complexes whose differentials and
//! inner products have rational entries, the squared torsion
//! τ² = Π v_q^{(−1)^q} is a rational number and every identity can be
//! checked with no rounding at all.
//!
//! v_q is the determinant of δ_q d_q on the orthogonal complement of
//! ker d_q. Picking the pivot columns J of d_qᵀ, the columns of
//! A = G_q⁻¹ d_qᵀ[:, J] span that complement exactly, and with B = d_q A:
//! v_q = det(Bᵀ G_{q+1} B) / det(Aᵀ G_q A).

use nalgebra::DMatrix;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hodge::HodgeComplex;

/// Dense row-major matrix over ℚ.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(
                "ragged rows in rational matrix".to_string(),
            ));
        }
        Ok(RMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        RMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&v| BigRational::from_integer(v.into())))
                .collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, rhs.rows, "rational matrix shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let term = a * &rhs[(k, c)];
                    let cur = &out[(r, c)] + term;
                    out[(r, c)] = cur;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &RMatrix) -> RMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "rational matrix shape mismatch"
        );
        let mut out = Self::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = &self[(r, c)] + &rhs[(r, c)];
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..r {
                if self[(r, c)] != self[(c, r)] {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot else {
                return BigRational::zero();
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pv = m[(col, col)].clone();
            det *= pv.clone();
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &pv;
                for c in col..n {
                    let sub = &m[(r, c)] - &f * &m[(col, c)];
                    m[(r, c)] = sub;
                }
            }
        }
        det
    }

    /// Indices of the pivot columns in a row-echelon reduction: a maximal
    /// independent column set.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    m.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            pivots.push(col);
            let pv = m[(row, col)].clone();
            for r in row + 1..self.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &pv;
                for c in col..self.cols {
                    let sub = &m[(r, c)] - &f * &m[(row, c)];
                    m[(r, c)] = sub;
                }
            }
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.independent_columns().len()
    }

    /// Solve A X = B exactly for square invertible A.
    pub fn solve(&self, b: &RMatrix) -> Option<RMatrix> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.clone();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if p != col {
                for c in 0..n {
                    a.data.swap(p * n + c, col * n + c);
                }
                for c in 0..x.cols {
                    x.data.swap(p * x.cols + c, col * x.cols + c);
                }
            }
            let pv = a[(col, col)].clone();
            for c in 0..n {
                let v = &a[(col, c)] / &pv;
                a[(col, c)] = v;
            }
            for c in 0..x.cols {
                let v = &x[(col, c)] / &pv;
                x[(col, c)] = v;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    let sub = &a[(r, c)] - &f * &a[(col, c)];
                    a[(r, c)] = sub;
                }
                for c in 0..x.cols {
                    let sub = &x[(r, c)] - &f * &x[(col, c)];
                    x[(r, c)] = sub;
                }
            }
        }
        Some(x)
    }

    pub fn select_columns(&self, idx: &[usize]) -> RMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for (j, &c) in idx.iter().enumerate() {
            for r in 0..self.rows {
                out[(r, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Sylvester criterion: all leading principal minors positive.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        for k in 1..=self.rows {
            let mut sub = Self::zeros(k, k);
            for r in 0..k {
                for c in 0..k {
                    sub[(r, c)] = self[(r, c)].clone();
                }
            }
            if sub.det() <= BigRational::zero() {
                return false;
            }
        }
        true
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| rational_to_f64(&self[(r, c)]))
    }
}

impl std::ops::Index<(usize, usize)> for RMatrix {
    type Output = BigRational;
    fn index(&self, (r, c): (usize, usize)) -> &BigRational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigRational {
        &mut self.data[r * self.cols + c]
    }
}

fn ln_big_int(n: &BigInt) -> f64 {
    debug_assert!(n.is_positive());
    let bits = n.bits();
    if bits <= 1000 {
        return num::ToPrimitive::to_f64(n).expect("fits in f64 range").ln();
    }
    let shift = bits - 900;
    let m: BigInt = n >> shift;
    num::ToPrimitive::to_f64(&m).expect("shifted value fits").ln()
        + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational, safe for huge numerators and
/// denominators.
pub fn ln_rational(r: &BigRational) -> Result<f64> {
    if !r.is_positive() {
        return Err(Error::DomainError(format!("log of non-positive rational {r}")));
    }
    Ok(ln_big_int(r.numer()) - ln_big_int(r.denom()))
}

fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = num::ToPrimitive::to_f64(r) {
        if v.is_finite() {
            return v;
        }
    }
    // fall back through the log for extreme magnitudes
    if r.is_zero() {
        0.0
    } else {
        let sign = if r.is_positive() { 1.0 } else { -1.0 };
        sign * ln_rational(&r.abs()).map(f64::exp).unwrap_or(f64::INFINITY)
    }
}

/// Coefficients (c₀ = 1, c₁, …, c_n) of det(tI − A) = Σ c_k t^{n−k},
/// by the Faddeev–LeVerrier recurrence.
pub fn char_poly(a: &RMatrix) -> Vec<BigRational> {
    assert_eq!(a.nrows(), a.ncols());
    let n = a.nrows();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigRational::one());
    let mut nmat = RMatrix::identity(n);
    for k in 1..=n {
        let m = a.mul(&nmat);
        let ck = -m.trace() / BigRational::from_integer(BigInt::from(k));
        nmat = m;
        for i in 0..n {
            let v = &nmat[(i, i)] + ck.clone();
            nmat[(i, i)] = v;
        }
        coeffs.push(ck);
    }
    coeffs
}

/// Product of the nonzero eigenvalues and the algebraic multiplicity of
/// zero, read off the characteristic polynomial: if r is the largest k
/// with c_k ≠ 0, the product is (−1)^r c_r and zero has multiplicity n−r.
/// Faithful to the spectrum for diagonalizable input.
pub fn pseudo_det(a: &RMatrix) -> (BigRational, usize) {
    let coeffs = char_poly(a);
    let n = a.nrows();
    let r = (0..=n).rev().find(|&k| !coeffs[k].is_zero()).unwrap_or(0);
    let pdet = if r % 2 == 0 {
        coeffs[r].clone()
    } else {
        -coeffs[r].clone()
    };
    (pdet, n - r)
}

/// A cochain complex over ℚ with rational inner products.
#[derive(Debug, Clone)]
pub struct RationalComplex {
    pub d: Vec<RMatrix>,
    pub gram: Vec<RMatrix>,
}

impl RationalComplex {
    pub fn new(d: Vec<RMatrix>, gram: Vec<RMatrix>) -> Result<Self> {
        if gram.len() != d.len() + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} differentials need {} inner products, got {}",
                d.len(),
                d.len() + 1,
                gram.len()
            )));
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
            if !d[q + 1].mul(&d[q]).is_zero_matrix() {
                return Err(Error::NotAComplex(format!(
                    "d_{} ∘ d_{} is not exactly zero",
                    q + 1,
                    q
                )));
            }
        }
        for (q, g) in gram.iter().enumerate() {
            if !g.is_positive_definite() {
                return Err(Error::GramNotSpd(format!(
                    "inner product in degree {q} is not positive definite over ℚ"
                )));
            }
        }
        Ok(RationalComplex { d, gram })
    }

    pub fn with_identity_grams(d: Vec<RMatrix>) -> Result<Self> {
        let mut gram: Vec<RMatrix> = Vec::with_capacity(d.len() + 1);
        for (q, dq) in d.iter().enumerate() {
            if q == 0 {
                gram.push(RMatrix::identity(dq.ncols()));
            }
            gram.push(RMatrix::identity(dq.nrows()));
        }
        if d.is_empty() {
            return Err(Error::DimensionMismatch(
                "complex needs at least one differential".to_string(),
            ));
        }
        Self::new(d, gram)
    }

    pub fn degrees(&self) -> usize {
        self.gram.len()
    }

    pub fn dim(&self, q: usize) -> usize {
        self.gram[q].nrows()
    }

    pub fn rank_d(&self, q: usize) -> usize {
        if q < self.d.len() {
            self.d[q].rank()
        } else {
            0
        }
    }

    /// dim H^q = dim − rank d_q − rank d_{q−1}, exactly.
    pub fn betti(&self, q: usize) -> usize {
        let below = if q > 0 { self.rank_d(q - 1) } else { 0 };
        self.dim(q) - self.rank_d(q) - below
    }

    /// v_q: the determinant of δ_q d_q on the orthogonal complement of
    /// ker d_q, as an exact positive rational.
    pub fn volume_ratio(&self, q: usize) -> Result<BigRational> {
        if q >= self.d.len() {
            return Ok(BigRational::one());
        }
        let dt = self.d[q].transpose();
        let pivots = dt.independent_columns();
        if pivots.is_empty() {
            return Ok(BigRational::one());
        }
        let picked = dt.select_columns(&pivots);
        let a = self.gram[q]
            .solve(&picked)
            .ok_or_else(|| Error::GramNotSpd(format!("inner product {q} is singular")))?;
        let b = self.d[q].mul(&a);
        let num = b.transpose().mul(&self.gram[q + 1]).mul(&b).det();
        let den = a.transpose().mul(&self.gram[q]).mul(&a).det();
        if den.is_zero() {
            return Err(Error::GramNotSpd(format!(
                "degenerate restriction in degree {q}"
            )));
        }
        let v = num / den;
        if !v.is_positive() {
            return Err(Error::VerifyFailure(format!(
                "volume ratio in degree {q} is not positive: {v}"
            )));
        }
        Ok(v)
    }

    /// τ² = Π_q v_q^{(−1)^q}, exactly.
    pub fn torsion_squared(&self) -> Result<BigRational> {
        let mut out = BigRational::one();
        for q in 0..self.d.len() {
            let v = self.volume_ratio(q)?;
            if q % 2 == 0 {
                out *= v;
            } else {
                out /= v;
            }
        }
        Ok(out)
    }

    /// log τ = ½ log τ².
    pub fn log_torsion(&self) -> Result<f64> {
        Ok(0.5 * ln_rational(&self.torsion_squared()?)?)
    }

    pub fn to_float(&self) -> Result<HodgeComplex> {
        HodgeComplex::new(
            self.d.iter().map(RMatrix::to_f64).collect(),
            self.gram.iter().map(RMatrix::to_f64).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn determinant_and_rank() {
        let m = RMatrix::from_i64(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        assert_eq!(m.det(), rat(4, 1));
        assert_eq!(m.rank(), 3);
        let s = RMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.independent_columns(), vec![0, 1]);
        assert!(s.det().is_zero());
    }

    #[test]
    fn solve_recovers_exact_inverse_action() {
        let a = RMatrix::from_i64(&[&[3, 1], &[1, 2]]);
        let b = RMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let x = a.solve(&b).unwrap();
        let prod = a.mul(&x);
        assert_eq!(prod, RMatrix::identity(2));
        assert_eq!(x[(0, 0)], rat(2, 5));
    }

    #[test]
    fn positive_definiteness_by_minors() {
        assert!(RMatrix::from_i64(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!RMatrix::from_i64(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!RMatrix::from_i64(&[&[1, 2], &[3, 1]]).is_positive_definite());
    }

    #[test]
    fn char_poly_and_pseudo_det() {
        let a = RMatrix::from_i64(&[&[2, 0], &[0, 0]]);
        let c = char_poly(&a);
        assert_eq!(c, vec![rat(1, 1), rat(-2, 1), rat(0, 1)]);
        let (pdet, zeros) = pseudo_det(&a);
        assert_eq!(pdet, rat(2, 1));
        assert_eq!(zeros, 1);

        // det(A) = (−1)^n c_n for invertible A
        let b = RMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let cb = char_poly(&b);
        assert_eq!(cb[2], b.det());
        let (pdet_b, zeros_b) = pseudo_det(&b);
        assert_eq!(pdet_b, b.det());
        assert_eq!(zeros_b, 0);
    }

    #[test]
    fn one_step_torsion_in_closed_form() {
        // d = (3), grams (2) and (5): τ² = 9·5/2
        let d = vec![RMatrix::from_i64(&[&[3]])];
        let gram = vec![RMatrix::from_i64(&[&[2]]), RMatrix::from_i64(&[&[5]])];
        let cx = RationalComplex::new(d, gram).unwrap();
        assert_eq!(cx.torsion_squared().unwrap(), rat(45, 2));
    }

    #[test]
    fn rejects_non_complex_and_indefinite_gram() {
        let d0 = RMatrix::from_i64(&[&[1], &[1]]);
        let d1 = RMatrix::from_i64(&[&[1, 1]]);
        let gram = vec![
            RMatrix::identity(1),
            RMatrix::identity(2),
            RMatrix::identity(1),
        ];
        assert!(matches!(
            RationalComplex::new(vec![d0.clone(), d1], gram).unwrap_err(),
            Error::NotAComplex(_)
        ));
        let bad = vec![RMatrix::identity(1), RMatrix::from_i64(&[&[-1, 0], &[0, 1]])];
        assert!(matches!(
            RationalComplex::new(vec![d0], bad).unwrap_err(),
            Error::GramNotSpd(_)
        ));
    }

    #[test]
    fn exact_and_floating_torsion_agree() {
        // Koszul differentials for v = (1, −2, 3) with rational grams
        let dmats = crate::hodge::koszul_differentials(&[1.0, -2.0, 3.0]);
        let d: Vec<RMatrix> = dmats
            .iter()
            .map(|m| {
                RMatrix::from_rows(
                    (0..m.nrows())
                        .map(|r| {
                            (0..m.ncols())
                                .map(|c| BigRational::from_integer((m[(r, c)] as i64).into()))
                                .collect()
                        })
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        // diagonal rational grams
        let dims = [1usize, 3, 3, 1];
        let gram: Vec<RMatrix> = dims
            .iter()
            .enumerate()
            .map(|(q, &n)| {
                let mut g = RMatrix::identity(n);
                for i in 0..n {
                    g[(i, i)] = rat(2 * q as i64 + i as i64 + 1, q as i64 + 2);
                }
                g
            })
            .collect();
        let rcx = RationalComplex::new(d, gram).unwrap();
        assert_eq!(rcx.betti(0), 0);
        assert_eq!(rcx.betti(1), 0);
        let fcx = rcx.to_float().unwrap();
        let exact = rcx.log_torsion().unwrap();
        let float = fcx.log_torsion();
        assert!(
            (exact - float).abs() < 1e-10 * (1.0 + exact.abs()),
            "{exact} vs {float}"
        );
    }

    #[test]
    fn huge_rational_logs_stay_finite() {
        let big = BigRational::new(BigInt::from(7).pow(2000), BigInt::from(3).pow(1500));
        let ln = ln_rational(&big).unwrap();
        let expect = 2000.0 * 7f64.ln() - 1500.0 * 3f64.ln();
        assert!((ln - expect).abs() < 1e-9 * expect.abs());
    }
}
