//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.
//!
//! The finite-difference oracle produces matrices with up to ~10⁴ rows of
//! which only the lowest few eigenvalues are wanted; bisection on the Sturm
//! count gives each one in O(N log ε) without ever forming a dense matrix.
//! The same solver drives the Golub–Welsch construction of Gauss rules in
//! [`crate::quadrature`].

/// A real symmetric tridiagonal matrix: `diag` on the main diagonal and `off`
/// (length `diag.len() - 1`) on the sub/superdiagonal.
#[derive(Debug, Clone)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(
            !diag.is_empty() && off.len() + 1 == diag.len(),
            "off-diagonal length must be diag length - 1"
        );
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin bounds containing the whole spectrum.
    pub fn spectrum_bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via the LDLᵀ
    /// pivot recurrence). Near-zero pivots are nudged to keep the recurrence
    /// finite; this can shift a count by one exactly at an eigenvalue, which
    /// bisection tolerates.
    pub fn count_below(&self, x: f64) -> usize {
        let max_off2 = self
            .off
            .iter()
            .fold(0.0f64, |acc, &e| acc.max(e * e))
            .max(1.0);
        let pivmin = max_off2 * 1e-290;
        let mut count = 0usize;
        let mut d = self.diag[0] - x;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            d = (self.diag[i] - x) - self.off[i - 1] * self.off[i - 1] / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (k = 0 is the ground level), bisected to
    /// near machine precision relative to the spectrum scale.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.dim());
        let (mut lo, mut hi) = self.spectrum_bounds();
        let scale = lo.abs().max(hi.abs()).max(1.0);
        let tol = 4.0 * f64::EPSILON * scale;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break; // interval no longer representable
            }
            if self.count_below(mid) >= k + 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The lowest `count` eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, count: usize) -> Vec<f64> {
        let count = count.min(self.dim());
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            out.push(self.eigenvalue(k));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn two_by_two_closed_form() {
        // [[2, 1], [1, 3]] has eigenvalues (5 ± sqrt(5)) / 2
        let t = SymTridiag::new(vec![2.0, 3.0], vec![1.0]);
        let got = t.lowest_eigenvalues(2);
        assert_abs_diff_eq!(got[0], (5.0 - 5f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(got[1], (5.0 + 5f64.sqrt()) / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        // tridiag(-1, 2, -1) of size n has eigenvalues 2 - 2 cos(k pi / (n+1))
        let n = 500;
        let t = SymTridiag::new(vec![2.0; n], vec![-1.0; n - 1]);
        let got = t.lowest_eigenvalues(5);
        for (k, val) in got.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert_abs_diff_eq!(*val, exact, epsilon = 1e-11);
        }
    }

    #[test]
    fn count_below_is_monotone() {
        let n = 64;
        let diag: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin() * 3.0).collect();
        let off: Vec<f64> = (0..n - 1).map(|i| (i as f64 * 0.11).cos()).collect();
        let t = SymTridiag::new(diag, off);
        let (lo, hi) = t.spectrum_bounds();
        assert_eq!(t.count_below(lo - 1.0), 0);
        assert_eq!(t.count_below(hi + 1.0), n);
        let mut prev = 0;
        for k in 0..=100 {
            let x = lo + (hi - lo) * k as f64 / 100.0;
            let c = t.count_below(x);
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn eigenvalues_are_sorted_and_consistent_with_count() {
        let n = 200;
        let diag: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64).sqrt()).collect();
        let off: Vec<f64> = (0..n - 1).map(|i| 0.5 + 0.1 * ((i % 7) as f64)).collect();
        let t = SymTridiag::new(diag, off);
        let vals = t.lowest_eigenvalues(8);
        for w in vals.windows(2) {
            assert!(w[0] <= w[1]);
        }
        for (k, v) in vals.iter().enumerate() {
            assert!(t.count_below(v - 1e-8) <= k);
            assert!(t.count_below(v + 1e-8) >= k + 1);
        }
    }
}
