//! Radial bound states in Jacobi-polynomial form, their normalization,
//! probability densities, and node counting.
//!
//! A state is R(s) = 𝒩 s^{√α₈} (1−s)^{√α₉} P_n^{(2√α₈, 2√α₉)}(1−2s) with
//! s = e^{−λr}. Under the map, s → 0 at large r (so √α₈ sets the tail) and
//! s → 1 at the origin (so √α₉ sets the small-r behavior). Normalization
//! defaults to the measure r^{2μ+1} dr, under which the radial operator with
//! drift (2μ+1)/r is symmetric.

use crate::model::{DunklParams, MolecularParams, QuantumNumbers};
use crate::nu::{alpha_chain, energy_closed_form, energy_self_consistent};
use crate::pekeris::{map_to_hypergeometric, PekerisCoefficients};
use crate::quadrature::{adaptive_simpson, gauss_legendre, integrate_panels};
use crate::{Error, Result};

/// Jacobi polynomial P_n^{(a,b)}(x) by forward three-term recurrence.
/// Requires a > −1 and b > −1; stable for the degrees used here (n ≲ 20).
pub fn jacobi(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > -1.0) || !a.is_finite() {
        return Err(Error::InvalidParameter {
            name: "a",
            requirement: "finite and > -1",
            value: a,
        });
    }
    if !(b > -1.0) || !b.is_finite() {
        return Err(Error::InvalidParameter {
            name: "b",
            requirement: "finite and > -1",
            value: b,
        });
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=u64::from(n) {
        let kf = k as f64;
        let c1 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
        let c2 = (2.0 * kf + a + b - 1.0) * (a * a - b * b);
        let c3 = (2.0 * kf + a + b - 2.0) * (2.0 * kf + a + b - 1.0) * (2.0 * kf + a + b);
        let c4 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
        let next = ((c2 + c3 * x) * cur - c4 * prev) / c1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Quadrature scheme for normalization integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadratureScheme {
    #[default]
    CompositeGaussLegendre,
    AdaptiveSimpson,
}

/// Radial integration window and budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Upper limit; extended automatically until the integrand tail is
    /// < 10⁻¹⁴ of its peak.
    pub r_max: f64,
    /// Total node budget (≥ 64).
    pub node_count: u32,
    pub scheme: QuadratureScheme,
}

impl QuadratureSpec {
    /// Default window for a parameter set: r_max = r_e + 40/λ, 4096 nodes,
    /// composite Gauss–Legendre.
    pub fn for_params(p: &MolecularParams) -> Self {
        Self {
            r_max: p.equilibrium_distance + 40.0 / p.screening,
            node_count: 4096,
            scheme: QuadratureScheme::CompositeGaussLegendre,
        }
    }
}

/// A radial state: quantum numbers, the two exponents, the Jacobi parameters
/// they induce, and the normalization constant (1 until normalized).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    pub n: u32,
    pub ell: u32,
    pub mu: f64,
    /// Exponent of s (= √α₈); controls the large-r tail.
    pub exp_s: f64,
    /// Exponent of (1−s) (= √α₉); controls the r → 0 behavior.
    pub exp_1ms: f64,
    /// First Jacobi parameter, 2√α₈.
    pub jacobi_a: f64,
    /// Second Jacobi parameter, 2√α₉.
    pub jacobi_b: f64,
    /// Screening parameter λ of the s-map.
    pub lambda: f64,
    /// Normalization constant 𝒩.
    pub norm: f64,
}

impl RadialState {
    /// Builds a state from an explicit dimensionless energy. Fails with
    /// [`Error::ComplexExponent`] when α₈(ε) < 0.
    pub fn from_eps(
        q: QuantumNumbers,
        p: &MolecularParams,
        d: &DunklParams,
        eps: f64,
    ) -> Result<Self> {
        let d = DunklParams { ell: q.ell, ..*d };
        let mc = map_to_hypergeometric(p, &d, &PekerisCoefficients::standard());
        let ch = alpha_chain(&mc, eps);
        if ch.alpha8 < 0.0 {
            return Err(Error::ComplexExponent { alpha8: ch.alpha8 });
        }
        if ch.alpha9 < 0.0 {
            return Err(Error::ComplexExponent { alpha8: ch.alpha9 });
        }
        let exp_s = ch.alpha8.sqrt();
        let exp_1ms = ch.alpha9.sqrt();
        Ok(Self {
            n: q.n,
            ell: q.ell,
            mu: d.mu,
            exp_s,
            exp_1ms,
            jacobi_a: 2.0 * exp_s,
            jacobi_b: 2.0 * exp_1ms,
            lambda: p.screening,
            norm: 1.0,
        })
    }

    /// State at the closed-form energy for these quantum numbers. Requires a
    /// positive root factor K: for K ≤ 0 the termination condition has no
    /// decaying solution at this n even though K² would formally give a real
    /// exponent.
    pub fn closed_form(q: QuantumNumbers, p: &MolecularParams, d: &DunklParams) -> Result<Self> {
        let d_ell = DunklParams { ell: q.ell, ..*d };
        let k = crate::nu::closed_form_k(q.n, p, &d_ell, &PekerisCoefficients::standard());
        if k <= 0.0 {
            return Err(Error::NoBoundState {
                n: q.n,
                ell: q.ell,
                mu: d.mu,
                detail: format!("closed-form root factor K = {k:.6e} is not positive"),
            });
        }
        let lvl = energy_closed_form(q, p, d);
        Self::from_eps(q, p, d, lvl.eps)
    }

    /// State at the self-consistent root for these quantum numbers.
    pub fn self_consistent(
        q: QuantumNumbers,
        p: &MolecularParams,
        d: &DunklParams,
    ) -> Result<Self> {
        let lvl = energy_self_consistent(q, p, d)?;
        Self::from_eps(q, p, d, lvl.level.eps)
    }

    /// 𝒩 s^{exp_s} (1−s)^{exp_1ms} P_n^{(a,b)}(1−2s) at radius r ≥ 0.
    /// Vanishes at both ends: (1−s) → 0 at the origin, s → 0 at infinity.
    pub fn radial(&self, r: f64) -> f64 {
        let s = (-self.lambda * r).exp();
        let one_minus_s = -(-self.lambda * r).exp_m1();
        let poly = jacobi(self.n, self.jacobi_a, self.jacobi_b, 1.0 - 2.0 * s)
            .expect("jacobi parameters are validated at construction");
        self.norm * s.powf(self.exp_s) * one_minus_s.powf(self.exp_1ms) * poly
    }

    /// Same, with 𝒩 = 1 regardless of the stored constant.
    pub fn radial_unnormalized(&self, r: f64) -> f64 {
        self.radial(r) / self.norm
    }

    /// Approximate mode of the density and a width scale for it, from the
    /// two-exponent factor alone. Lays out quadrature panels and plot grids.
    pub fn localization(&self, weight_exponent: f64) -> (f64, f64) {
        let es = 2.0 * self.exp_s;
        let e1 = 2.0 * self.exp_1ms;
        let s_star = es / (es + e1);
        let r_star = -(s_star.ln()) / self.lambda;
        let curvature =
            e1 * self.lambda * self.lambda * s_star / ((1.0 - s_star) * (1.0 - s_star));
        let mut width = curvature.recip().sqrt();
        if weight_exponent > 0.0 && r_star > 0.0 {
            width = width.min(r_star);
        }
        (r_star.max(1e-6), width.max(1e-6))
    }

    /// Returns the state with 𝒩 set so that
    /// ∫₀^{r_max} |𝒩 R(r)|² r^{weight_exponent} dr = 1.
    ///
    /// Fails with [`Error::DivergentNorm`] when the tail exponent is not
    /// positive. The window is extended until the integrand tail falls below
    /// 10⁻¹⁴ of its peak.
    pub fn normalized(&self, quad: &QuadratureSpec, weight_exponent: f64) -> Result<Self> {
        if self.exp_s <= 0.0 {
            return Err(Error::DivergentNorm {
                reason: "non-positive tail exponent exp_s",
            });
        }
        if self.exp_1ms <= 0.0 && weight_exponent <= -1.0 {
            return Err(Error::DivergentNorm {
                reason: "integrand not integrable at the origin",
            });
        }
        if quad.node_count < 64 {
            return Err(Error::InvalidGrid {
                details: format!("node_count {} < 64", quad.node_count),
            });
        }
        let raw = |r: f64| {
            let v = self.radial_unnormalized(r);
            v * v * r.powf(weight_exponent)
        };

        // extend the window until the tail is negligible
        let (r_peak, _) = self.localization(weight_exponent);
        let mut r_max = quad.r_max.max(r_peak * 2.0);
        let peak_val = raw(r_peak).max(f64::MIN_POSITIVE);
        let mut guard = 0;
        while raw(r_max) > 1e-14 * peak_val && guard < 80 {
            r_max *= 1.25;
            guard += 1;
        }

        let integral = match quad.scheme {
            QuadratureScheme::CompositeGaussLegendre => {
                let edges = self.panel_edges(r_max, quad.node_count, weight_exponent);
                let rule = gauss_legendre(16);
                integrate_panels(&rule, &edges, raw)
            }
            QuadratureScheme::AdaptiveSimpson => {
                // seed the recursion with the dense panel layout so the
                // narrow localization region cannot be stepped over
                let edges = self.panel_edges(r_max, 256, weight_exponent);
                let tol = 1e-13 * peak_val.max(1e-30) / edges.len() as f64;
                edges
                    .windows(2)
                    .map(|w| adaptive_simpson(&raw, w[0], w[1], tol))
                    .sum()
            }
        };
        if !(integral > 0.0) || !integral.is_finite() {
            return Err(Error::DivergentNorm {
                reason: "normalization integral is not finite and positive",
            });
        }
        Ok(Self {
            norm: 1.0 / integral.sqrt(),
            ..*self
        })
    }

    /// Panel layout: dense panels covering the localization region, coarser
    /// ones out to r_max.
    fn panel_edges(&self, r_max: f64, node_count: u32, weight_exponent: f64) -> Vec<f64> {
        let (r_peak, width) = self.localization(weight_exponent);
        let r_dense = (r_peak + 25.0 * width).min(r_max);
        let panels = (node_count / 16).max(4) as usize;
        let dense_panels = (3 * panels / 4).max(2);
        let tail_panels = (panels - dense_panels).max(1);
        let mut edges = Vec::with_capacity(dense_panels + tail_panels + 1);
        for i in 0..=dense_panels {
            edges.push(r_dense * i as f64 / dense_panels as f64);
        }
        if r_dense < r_max {
            for i in 1..=tail_panels {
                edges.push(r_dense + (r_max - r_dense) * i as f64 / tail_panels as f64);
            }
        }
        edges
    }

    /// |𝒩R(r)|² r^{2μ+1} when `weighted`, else |𝒩R(r)|².
    pub fn probability_density(&self, r: f64, weighted: bool) -> f64 {
        let v = self.radial(r);
        if weighted {
            v * v * r.powf(2.0 * self.mu + 1.0)
        } else {
            v * v
        }
    }

    /// Number of strict sign changes of R on (0, r_max), endpoints excluded.
    pub fn node_count(&self, grid: &QuadratureSpec) -> usize {
        let samples = (grid.node_count as usize).max(10_000);
        let mut nodes = 0;
        let mut prev = 0.0f64;
        for i in 1..samples {
            let r = grid.r_max * i as f64 / samples as f64;
            let v = self.radial_unnormalized(r);
            if v == 0.0 {
                continue;
            }
            if prev != 0.0 && v.signum() != prev.signum() {
                nodes += 1;
            }
            prev = v;
        }
        nodes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CentrifugalConvention;
    use approx::assert_abs_diff_eq;

    fn state(mu: f64, n: u32) -> RadialState {
        let p = MolecularParams::default();
        let d = DunklParams::new(mu, 0, CentrifugalConvention::RadialEquation).unwrap();
        RadialState::closed_form(QuantumNumbers::new(n, 0), &p, &d).unwrap()
    }

    #[test]
    fn jacobi_degree_zero_and_one() {
        for &(a, b) in &[(0.0, 0.0), (2.5, 1.0), (140.0, 20.0)] {
            for &x in &[-1.0, -0.3, 0.0, 0.7, 1.0] {
                assert_eq!(jacobi(0, a, b, x).unwrap(), 1.0);
                let expected = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
                assert_abs_diff_eq!(jacobi(1, a, b, x).unwrap(), expected, epsilon = 1e-12);
            }
        }
        assert!(jacobi(2, -1.0, 0.0, 0.5).is_err());
        assert!(jacobi(2, 0.0, -1.5, 0.5).is_err());
    }

    #[test]
    fn jacobi_at_unit_argument_matches_rising_factorial() {
        // P_n^{(a,b)}(1) = prod_{j=1..n} (a + j)/j
        for &(n, a, b) in &[(3u32, 2.0, 1.0), (5, 0.5, 3.0), (4, 11.0, 0.25)] {
            let mut expected = 1.0;
            for j in 1..=n {
                expected *= (a + f64::from(j)) / f64::from(j);
            }
            assert_abs_diff_eq!(jacobi(n, a, b, 1.0).unwrap(), expected, epsilon = 1e-10);
        }
        // pinned: P_3^{(2,1)}(1) = C(5,3) = 10
        assert_abs_diff_eq!(jacobi(3, 2.0, 1.0, 1.0).unwrap(), 10.0, epsilon = 1e-12);
    }

    #[test]
    fn jacobi_legendre_specialization() {
        // a = b = 0 gives Legendre: P_2(x) = (3x^2 - 1)/2
        for &x in &[-0.9, -0.2, 0.3, 0.8] {
            assert_abs_diff_eq!(
                jacobi(2, 0.0, 0.0, x).unwrap(),
                0.5 * (3.0 * x * x - 1.0),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn radial_vanishes_at_both_ends() {
        let st = state(0.0, 0);
        assert_eq!(st.radial_unnormalized(0.0), 0.0);
        assert!(st.radial_unnormalized(500.0).abs() < 1e-200);
        assert!(st.radial_unnormalized(0.2) > 0.0);
    }

    #[test]
    fn small_r_log_slope_is_exp_1ms() {
        // the measured origin exponent is the (1-s) one
        let st = state(1.5, 0);
        let r1 = 1e-4 / st.lambda;
        let r2 = 1e-5 / st.lambda;
        let y = |r: f64| st.radial_unnormalized(r).abs().ln();
        let x = |r: f64| (-(-st.lambda * r).exp_m1()).ln();
        let slope = (y(r1) - y(r2)) / (x(r1) - x(r2));
        let rel = (slope - st.exp_1ms).abs() / st.exp_1ms;
        assert!(rel < 0.01, "slope {slope} vs exp_1ms {}", st.exp_1ms);
    }

    #[test]
    fn normalization_converges_and_is_idempotent() {
        let p = MolecularParams::default();
        let st = state(0.0, 0);
        let w = 2.0 * st.mu + 1.0;
        let quad = QuadratureSpec::for_params(&p);
        let n1 = st.normalized(&quad, w).unwrap();
        assert!(n1.norm.is_finite() && n1.norm > 0.0);
        // doubling the node budget moves the norm by < 1e-8 relative
        let fine = QuadratureSpec {
            node_count: quad.node_count * 2,
            ..quad
        };
        let n2 = st.normalized(&fine, w).unwrap();
        assert!((n1.norm - n2.norm).abs() / n2.norm < 1e-8);
        // renormalizing an already normalized state reproduces the constant
        let again = n1.normalized(&quad, w).unwrap();
        assert!((again.norm - n1.norm).abs() / n1.norm < 1e-10);
        // the two schemes agree
        let simpson = QuadratureSpec {
            scheme: QuadratureScheme::AdaptiveSimpson,
            ..quad
        };
        let n3 = st.normalized(&simpson, w).unwrap();
        assert!((n1.norm - n3.norm).abs() / n1.norm < 1e-7);
    }

    #[test]
    fn weighted_density_integrates_to_one() {
        let p = MolecularParams::default();
        let quad = QuadratureSpec::for_params(&p);
        for mu in [0.0, 1.5, 3.0] {
            let st = state(mu, 0);
            let w = 2.0 * mu + 1.0;
            let n = st.normalized(&quad, w).unwrap();
            let rule = gauss_legendre(16);
            let edges = n.panel_edges(quad.r_max, quad.node_count, w);
            let integral =
                integrate_panels(&rule, &edges, |r| n.probability_density(r, true));
            assert_abs_diff_eq!(integral, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn divergent_norm_is_reported() {
        // eps = mu^2 + gamma C0 makes alpha8 = 0: no decay at infinity
        let p = MolecularParams::default();
        let d = DunklParams::default();
        let st = RadialState::from_eps(QuantumNumbers::new(0, 0), &p, &d, 0.0).unwrap();
        assert_eq!(st.exp_s, 0.0);
        let quad = QuadratureSpec::for_params(&p);
        assert!(matches!(
            st.normalized(&quad, 1.0),
            Err(Error::DivergentNorm { .. })
        ));
    }

    #[test]
    fn node_counts_match_quantum_number() {
        let p = MolecularParams::default();
        let grid = QuadratureSpec::for_params(&p);
        for n in 0..4u32 {
            let st = state(0.5, n);
            assert_eq!(st.node_count(&grid), n as usize, "wrong node count at n={n}");
        }
    }

    #[test]
    fn node_count_equals_jacobi_root_count() {
        // roots of the degree-n Jacobi factor inside s in (0,1), isolated by
        // sign-change bisection in x = 1 - 2s
        let st = state(1.0, 3);
        let f = |x: f64| jacobi(st.n, st.jacobi_a, st.jacobi_b, x).unwrap();
        let mut roots = 0;
        let samples = 4096;
        let mut prev = f(-1.0 + 2e-9);
        for i in 1..samples {
            let x = -1.0 + 2e-9 + (2.0 - 4e-9) * i as f64 / samples as f64;
            let v = f(x);
            if prev.signum() != v.signum() {
                // bisect to confirm an actual crossing
                let (mut a, mut b) = (x - (2.0 - 4e-9) / samples as f64, x);
                for _ in 0..60 {
                    let m = 0.5 * (a + b);
                    if f(a).signum() != f(m).signum() {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                roots += 1;
            }
            prev = v;
        }
        let p = MolecularParams::default();
        assert_eq!(roots, 3);
        assert_eq!(st.node_count(&QuadratureSpec::for_params(&p)), 3);
    }

    #[test]
    fn jacobi_orthogonality_under_matching_weight() {
        // residuals |<P_m, P_n>| / sqrt(<P_m,P_m><P_n,P_n>) with the Gauss-
        // Jacobi rule whose weight matches actual bound-state parameters
        let st = state(1.0, 0);
        let rule = crate::quadrature::gauss_jacobi_unit(256, st.jacobi_a, st.jacobi_b);
        let dot = |m: u32, n: u32| -> f64 {
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&x, &w)| {
                    w * jacobi(m, st.jacobi_a, st.jacobi_b, x).unwrap()
                        * jacobi(n, st.jacobi_a, st.jacobi_b, x).unwrap()
                })
                .sum()
        };
        for m in 0..=5u32 {
            for n in 0..=5u32 {
                if m == n {
                    continue;
                }
                let res = dot(m, n).abs() / (dot(m, m) * dot(n, n)).sqrt();
                assert!(res < 1e-10, "orthogonality residual {res} at ({m},{n})");
            }
        }
    }

    #[test]
    fn density_peak_shifts_right_and_origin_empties_as_mu_grows() {
        let p = MolecularParams::default();
        let quad = QuadratureSpec::for_params(&p);
        let mut prev_peak = -1.0;
        let mut prev_at_origin = f64::INFINITY;
        for mu in [0.0, 1.5, 3.0] {
            let st = state(mu, 0);
            let n = st.normalized(&quad, 2.0 * mu + 1.0).unwrap();
            let mut best = (0.0, -1.0);
            for i in 1..40_000 {
                let r = 12.0 * i as f64 / 40_000.0;
                let dens = n.probability_density(r, true);
                if dens > best.1 {
                    best = (r, dens);
                }
            }
            assert!(best.0 > prev_peak, "peak did not move right at mu={mu}");
            let at_origin = n.probability_density(1e-3 * p.equilibrium_distance, true);
            assert!(
                at_origin < prev_at_origin,
                "origin density did not drop at mu={mu}"
            );
            prev_peak = best.0;
            prev_at_origin = at_origin;
        }
    }
}
