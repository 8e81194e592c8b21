//! Finite-dimensional cochain complexes with inner products: Laplacians,
//! harmonic projectors, heat traces, spectral ladders, duality operators,
//! metric variation, and exact rational torsion.

pub mod complex;
pub mod io;
pub mod ladder;
pub mod rational;
pub mod star;
pub mod traces;
pub mod variation;

pub use complex::HodgeComplex;
pub use ladder::{spectral_ladder, LadderCluster};
pub use star::DoubledComplex;

use nalgebra::DMatrix;

/// Index of each size-q subset of {0, …, n−1} in lexicographic order.
pub(crate) fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    if q > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..q).collect();
    loop {
        out.push(cur.clone());
        // advance to the next lex subset
        let mut i = q;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - q {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..q {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Differentials of the exterior-multiplication complex (Λ•ℝⁿ, v∧·) in the
/// lexicographic subset basis: d_q e_S = Σ_{i∉S} (−1)^{#{j∈S: j<i}} v_i e_{S∪i}.
///
/// For v ≠ 0 the complex is exact, and with the standard inner products the
/// Laplacian is |v|²·id in every degree.
pub fn koszul_differentials(v: &[f64]) -> Vec<DMatrix<f64>> {
    let n = v.len();
    (0..n)
        .map(|q| {
            let lo = subsets(n, q);
            let hi = subsets(n, q + 1);
            let mut d = DMatrix::zeros(hi.len(), lo.len());
            for (col, s) in lo.iter().enumerate() {
                for i in 0..n {
                    if s.contains(&i) {
                        continue;
                    }
                    let sign = if s.iter().filter(|&&j| j < i).count() % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    let mut t = s.clone();
                    t.push(i);
                    t.sort_unstable();
                    let row = hi.binary_search(&t).expect("target subset exists");
                    d[(row, col)] = sign * v[i];
                }
            }
            d
        })
        .collect()
}
