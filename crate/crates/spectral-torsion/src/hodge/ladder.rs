//! Per-eigenvalue structure of the nonzero spectrum: within each
//! eigenvalue λ > 0, the eigenspace E^λ_q splits into a d-exact part
//! (raised from degree q−1) and a δ-exact part (which d maps isomorphically
//! onto the exact part one degree up). Counting both yields the ladder
//! identities the alternating-sum manipulations rely on.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::hodge::HodgeComplex;

/// Relative gap below which adjacent eigenvalues are treated as one cluster.
pub const CLUSTER_RTOL: f64 = 1e-9;

/// One eigenvalue cluster of a complex, with its per-degree mode counts.
#[derive(Debug, Clone)]
pub struct LadderCluster {
    /// Cluster mean eigenvalue.
    pub lambda: f64,
    /// Largest in-cluster deviation from the mean.
    pub spread: f64,
    /// m^λ_q: eigenvalue multiplicity in degree q.
    pub mult: Vec<usize>,
    /// Dimension of the d-exact part of E^λ_q.
    pub exact: Vec<usize>,
    /// Dimension of the δ-exact part of E^λ_q (rank of d on E^λ_q).
    pub coexact: Vec<usize>,
}

impl LadderCluster {
    /// Σ_q (−1)^q m^λ_q — zero by supersymmetric pairing.
    pub fn alternating_multiplicity(&self) -> i64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(q, &m)| if q % 2 == 0 { m as i64 } else { -(m as i64) })
            .sum()
    }

    /// Σ_q (−1)^q q m^λ_q.
    pub fn weighted_multiplicity(&self) -> i64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(q, &m)| {
                let v = (q * m) as i64;
                if q % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }
}

/// Decompose the positive spectrum into clusters and count, per degree,
/// the exact and coexact dimensions of each eigenspace.
///
/// Fails with [`Error::EigenvalueClusterAmbiguity`] when the clustering is
/// not clean: in-cluster spread comparable to the gap to the next cluster,
/// or a restricted projector trace that is not close to an integer.
pub fn spectral_ladder(cx: &HodgeComplex) -> Result<Vec<LadderCluster>> {
    let degrees = cx.degrees();
    let thresh = cx.kernel_threshold();

    // gather (λ, q, whitened eigenvector) for the positive spectrum
    let mut modes: Vec<(f64, usize, usize)> = Vec::new(); // (λ, q, column index)
    let mut eigs: Vec<(Vec<f64>, DMatrix<f64>)> = Vec::new();
    for q in 0..degrees {
        let e = cx.eigen(q);
        for (i, &l) in e.0.iter().enumerate() {
            if l > thresh {
                modes.push((l, q, i));
            }
        }
        eigs.push(e);
    }
    modes.sort_by(|a, b| a.0.total_cmp(&b.0));

    // greedy chaining: a new cluster starts at a relative gap > CLUSTER_RTOL
    let mut clusters: Vec<Vec<(f64, usize, usize)>> = Vec::new();
    for m in modes {
        match clusters.last_mut() {
            Some(c) if m.0 - c.last().unwrap().0 <= CLUSTER_RTOL * m.0 => c.push(m),
            _ => clusters.push(vec![m]),
        }
    }

    // cluster separation sanity: spread ≪ gap to neighbours
    let stats: Vec<(f64, f64)> = clusters
        .iter()
        .map(|c| {
            let mean = c.iter().map(|m| m.0).sum::<f64>() / c.len() as f64;
            let spread = c
                .iter()
                .map(|m| (m.0 - mean).abs())
                .fold(0.0, f64::max);
            (mean, spread)
        })
        .collect();
    for i in 0..stats.len() {
        let (mean, spread) = stats[i];
        if spread > 5.0 * CLUSTER_RTOL * mean {
            return Err(Error::EigenvalueClusterAmbiguity(format!(
                "cluster at λ ≈ {mean:.6e} has spread {spread:.3e}"
            )));
        }
        if i + 1 < stats.len() {
            let gap = stats[i + 1].0 - mean;
            if gap < 10.0 * CLUSTER_RTOL * mean {
                return Err(Error::EigenvalueClusterAmbiguity(format!(
                    "clusters at λ ≈ {mean:.6e} and {:.6e} are nearly merged",
                    stats[i + 1].0
                )));
            }
        }
    }

    let whitened_d: Vec<DMatrix<f64>> = (0..degrees).map(|q| cx.whitened_d(q)).collect();

    let mut out = Vec::with_capacity(clusters.len());
    for (ci, cluster) in clusters.iter().enumerate() {
        let (mean, spread) = stats[ci];
        let mut mult = vec![0usize; degrees];
        let mut coexact = vec![0usize; degrees];
        for q in 0..degrees {
            let cols: Vec<usize> = cluster
                .iter()
                .filter(|m| m.1 == q)
                .map(|m| m.2)
                .collect();
            mult[q] = cols.len();
            if cols.is_empty() {
                continue;
            }
            // W = d̃_q Ṽ / √λ: WᵀW is the projector (in eigenbasis
            // coordinates) onto the part of E^λ_q that d maps up isomorphically
            let (vals, vecs) = &eigs[q];
            let mut w = DMatrix::zeros(whitened_d[q].nrows(), cols.len());
            for (j, &c) in cols.iter().enumerate() {
                let col = &whitened_d[q] * vecs.column(c);
                let scaled = col / vals[c].sqrt();
                w.set_column(j, &scaled);
            }
            let p = w.transpose() * &w;
            let idem = (&p * &p - &p).norm();
            if idem > 1e-6 {
                return Err(Error::EigenvalueClusterAmbiguity(format!(
                    "restricted projector at λ ≈ {mean:.6e}, degree {q} is not idempotent \
                     (‖P²−P‖ = {idem:.3e})"
                )));
            }
            let tr = p.trace();
            let n = tr.round();
            if (tr - n).abs() > 1e-6 {
                return Err(Error::EigenvalueClusterAmbiguity(format!(
                    "restricted rank at λ ≈ {mean:.6e}, degree {q} is {tr}, not an integer"
                )));
            }
            coexact[q] = n as usize;
        }
        let exact: Vec<usize> = (0..degrees).map(|q| mult[q] - coexact[q]).collect();
        out.push(LadderCluster {
            lambda: mean,
            spread,
            mult,
            exact,
            coexact,
        });
    }
    Ok(out)
}

/// Check the ladder identity coexact_q = exact_{q+1} on every cluster.
pub fn check_ladder_identity(clusters: &[LadderCluster]) -> Result<()> {
    for c in clusters {
        let n = c.mult.len();
        for q in 0..n {
            let up = if q + 1 < n { c.exact[q + 1] } else { 0 };
            if c.coexact[q] != up {
                return Err(Error::VerifyFailure(format!(
                    "ladder identity fails at λ ≈ {:.6e}: coexact_{q} = {} but exact_{} = {up}",
                    c.lambda,
                    c.coexact[q],
                    q + 1
                )));
            }
            if c.exact[q] + c.coexact[q] != c.mult[q] {
                return Err(Error::VerifyFailure(format!(
                    "eigenspace at λ ≈ {:.6e} does not split in degree {q}",
                    c.lambda
                )));
            }
        }
        if c.alternating_multiplicity() != 0 {
            return Err(Error::VerifyFailure(format!(
                "alternating multiplicity at λ ≈ {:.6e} is {}, not 0",
                c.lambda,
                c.alternating_multiplicity()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::koszul_differentials;

    fn spd(n: usize, seed: u64) -> DMatrix<f64> {
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(17);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let x = DMatrix::from_fn(n, n, |_, _| next());
        &x * x.transpose() + DMatrix::identity(n, n) * (n as f64)
    }

    #[test]
    fn ladder_on_generic_metric_complex() {
        let d = koszul_differentials(&[1.0, -0.7, 0.4]);
        let dims = [1usize, 3, 3, 1];
        let grams: Vec<DMatrix<f64>> = (0..=3).map(|q| spd(dims[q], 100 + q as u64)).collect();
        let cx = crate::hodge::HodgeComplex::new(d, grams).unwrap();
        let ladder = spectral_ladder(&cx).unwrap();
        check_ladder_identity(&ladder).unwrap();
        let total: usize = ladder.iter().map(|c| c.mult.iter().sum::<usize>()).sum();
        assert_eq!(total, 8); // all of 1+3+3+1 is nonzero (acyclic)
    }

    #[test]
    fn degenerate_koszul_spectrum_forms_one_cluster() {
        // identity grams: Δ = |v|² id, a single cluster with full multiplicity
        let v = [0.6, 0.8];
        let d = koszul_differentials(&v);
        let grams = vec![
            DMatrix::identity(1, 1),
            DMatrix::identity(2, 2),
            DMatrix::identity(1, 1),
        ];
        let cx = crate::hodge::HodgeComplex::new(d, grams).unwrap();
        let ladder = spectral_ladder(&cx).unwrap();
        assert_eq!(ladder.len(), 1);
        let c = &ladder[0];
        assert!((c.lambda - 1.0).abs() < 1e-12);
        assert_eq!(c.mult, vec![1, 2, 1]);
        assert_eq!(c.coexact, vec![1, 1, 0]);
        assert_eq!(c.exact, vec![0, 1, 1]);
        check_ladder_identity(&ladder).unwrap();
        assert_eq!(c.weighted_multiplicity(), 0);
    }

    #[test]
    fn harmonic_modes_stay_out_of_the_ladder() {
        let d0 = DMatrix::from_row_slice(1, 2, &[1.0, 0.0]);
        let cx = crate::hodge::HodgeComplex::new(
            vec![d0],
            vec![DMatrix::identity(2, 2), DMatrix::identity(1, 1)],
        )
        .unwrap();
        let ladder = spectral_ladder(&cx).unwrap();
        assert_eq!(ladder.len(), 1);
        assert_eq!(ladder[0].mult, vec![1, 1]);
        check_ladder_identity(&ladder).unwrap();
    }
}
