//! The Pekeris approximation and the change of variable s = e^{−λr}, which
//! together turn the radial equation into the hypergeometric master form.
//!
//! The inverse-square factor is replaced by a rational function of s that is
//! exact in ratio as r → 0 (because the coefficients sum to one) and tends to
//! λ²C₀ instead of zero as r → ∞. The mapped equation is then characterized
//! by three geometric constants (c₁, c₂, c₃) and three energy-affine
//! coefficients ξᵢ(ε) = ξᵢ(0) + slopeᵢ·ε with slopes (−1, −2, −1).

use crate::model::{DunklParams, MolecularParams};
use crate::{Error, Result};

/// Expansion coefficients of the inverse-square approximation
/// 1/r² ≈ λ² (C₀ + C₁ s + C₂ s²)/(1−s)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PekerisCoefficients {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl PekerisCoefficients {
    /// The standard coefficient set (1/12, 10/12, 1/12).
    pub const fn standard() -> Self {
        Self {
            c0: 1.0 / 12.0,
            c1: 10.0 / 12.0,
            c2: 1.0 / 12.0,
        }
    }
}

impl Default for PekerisCoefficients {
    fn default() -> Self {
        Self::standard()
    }
}

/// Returns the standard coefficients (1/12, 10/12, 1/12).
pub fn pekeris_coefficients() -> PekerisCoefficients {
    PekerisCoefficients::standard()
}

/// Evaluates the approximation λ²(C₀ + C₁s + C₂s²)/(1−s)² of 1/r² at radius
/// `r` (s = e^{−λr}). Positive for all r > 0.
pub fn inverse_square_approx(r: f64, lambda: f64, c: &PekerisCoefficients) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::NonPositiveRadius { r });
    }
    let s = (-lambda * r).exp();
    let one_minus_s = -(-lambda * r).exp_m1();
    let num = c.c0 + c.c1 * s + c.c2 * s * s;
    Ok(lambda * lambda * num / (one_minus_s * one_minus_s))
}

/// Which first-derivative (drift) coefficient pair of the mapped equation to
/// use. The two candidates are inconsistent with each other; the default is
/// the pair the closed-form spectrum is built on, and the validation pipeline
/// quantifies the consequences of the alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DriftConvention {
    /// c₁ = c₂ = 1 − 2μ. Default; feeds the closed-form spectrum verbatim.
    #[default]
    Equal,
    /// c₁ = 1, c₂ = 1 + 2μ, read off the mapped equation's printed drift term
    /// (1 − s(1+2μ))/(s(1−s)).
    MappedOde,
}

/// Constants of the mapped hypergeometric-form equation.
///
/// The master form is
/// ψ'' + (c₁ − c₂ s)/(s(1 − c₃ s)) ψ' + (−ξ₁ s² + ξ₂ s − ξ₃)/(s²(1 − c₃ s)²) ψ = 0,
/// with ξᵢ affine in the dimensionless energy ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MappedCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    /// Energy-free parts of ξ₁, ξ₂, ξ₃.
    pub xi1_const: f64,
    pub xi2_const: f64,
    pub xi3_const: f64,
    /// Coefficients multiplying ε (fixed at −1, −2, −1).
    pub xi1_eps: f64,
    pub xi2_eps: f64,
    pub xi3_eps: f64,
}

impl MappedCoefficients {
    pub fn xi1(&self, eps: f64) -> f64 {
        self.xi1_const + self.xi1_eps * eps
    }

    pub fn xi2(&self, eps: f64) -> f64 {
        self.xi2_const + self.xi2_eps * eps
    }

    pub fn xi3(&self, eps: f64) -> f64 {
        self.xi3_const + self.xi3_eps * eps
    }
}

/// Maps physical parameters onto the master-form constants with the default
/// drift convention and the supplied Pekeris coefficients.
///
/// With γ_μ the centrifugal eigenvalue and β the dimensionless depth:
/// ξ₁ = β + γ_μ(C₁+C₂) − ε, ξ₂ = 2β + γ_μ(2C₀+C₁) − 2ε, ξ₃ = γ_μC₀ − ε.
pub fn map_to_hypergeometric(
    p: &MolecularParams,
    d: &DunklParams,
    c: &PekerisCoefficients,
) -> MappedCoefficients {
    map_to_hypergeometric_with(p, d, c, DriftConvention::default())
}

/// Same as [`map_to_hypergeometric`] with an explicit drift convention.
pub fn map_to_hypergeometric_with(
    p: &MolecularParams,
    d: &DunklParams,
    c: &PekerisCoefficients,
    drift: DriftConvention,
) -> MappedCoefficients {
    let beta = p.beta();
    let gamma = d.centrifugal_eigenvalue();
    let (c1, c2) = match drift {
        DriftConvention::Equal => (1.0 - 2.0 * d.mu, 1.0 - 2.0 * d.mu),
        DriftConvention::MappedOde => (1.0, 1.0 + 2.0 * d.mu),
    };
    MappedCoefficients {
        c1,
        c2,
        c3: 1.0,
        xi1_const: beta + gamma * (c.c1 + c.c2),
        xi2_const: 2.0 * beta + gamma * (2.0 * c.c0 + c.c1),
        xi3_const: gamma * c.c0,
        xi1_eps: -1.0,
        xi2_eps: -2.0,
        xi3_eps: -1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CentrifugalConvention;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn standard_coefficients() {
        let c = pekeris_coefficients();
        assert_abs_diff_eq!(c.c0, 0.0833333333333, epsilon = 1e-12);
        assert_abs_diff_eq!(c.c1, 0.8333333333333, epsilon = 1e-12);
        assert_abs_diff_eq!(c.c2, 0.0833333333333, epsilon = 1e-12);
        assert_eq!(c.c0, c.c2);
        assert_eq!(c.c0 + c.c1 + c.c2, 1.0);
    }

    #[test]
    fn inverse_square_limits() {
        let c = pekeris_coefficients();
        let lambda = 0.5;
        // r -> infinity: approx -> lambda^2 * C0, not zero
        let far = inverse_square_approx(2000.0, lambda, &c).unwrap();
        assert_abs_diff_eq!(far, lambda * lambda * c.c0, epsilon = 1e-12);
        // r -> 0: exact in ratio because C0 + C1 + C2 = 1
        let r1 = 1e-4 / lambda;
        let r2 = 1e-5 / lambda;
        let ratio1 = inverse_square_approx(r1, lambda, &c).unwrap() * r1 * r1;
        let ratio2 = inverse_square_approx(r2, lambda, &c).unwrap() * r2 * r2;
        assert!((ratio1 - 1.0).abs() < 1e-9, "ratio1 = {ratio1}");
        assert!((ratio2 - 1.0).abs() <= (ratio1 - 1.0).abs() + 1e-13);
        assert!(inverse_square_approx(0.0, lambda, &c).is_err());
    }

    #[test]
    fn inverse_square_positive_everywhere() {
        let c = pekeris_coefficients();
        for k in 1..400 {
            let r = 0.05 * k as f64;
            assert!(inverse_square_approx(r, 0.5, &c).unwrap() > 0.0);
        }
    }

    #[test]
    fn relative_error_at_equilibrium() {
        // lambda * r_e = 0.5; tabulated figure of merit for the default setup
        let c = pekeris_coefficients();
        let approx = inverse_square_approx(1.0, 0.5, &c).unwrap();
        let rel = (approx - 1.0).abs();
        assert!(rel < 5e-4, "relative error {rel} larger than expected");
        assert!(rel > 1e-5, "suspiciously exact: {rel}");
    }

    #[test]
    fn mapped_coefficients_pinned_values() {
        let p = MolecularParams::default();
        let d = DunklParams::default();
        let mc = map_to_hypergeometric(&p, &d, &pekeris_coefficients());
        // mu = 0, l = 0: gamma terms vanish
        assert_eq!(mc.c1, 1.0);
        assert_eq!(mc.c2, 1.0);
        assert_eq!(mc.c3, 1.0);
        assert_eq!(mc.xi3_const, 0.0);
        assert_eq!(mc.xi1_const, 120.0);
        assert_eq!(mc.xi2_const, 240.0);
        assert_eq!((mc.xi1_eps, mc.xi2_eps, mc.xi3_eps), (-1.0, -2.0, -1.0));
    }

    #[test]
    fn xi_combination_equals_beta() {
        // xi2 - xi1 - xi3 = beta + gamma (C0 - C2) = beta for the symmetric set
        let p = MolecularParams::default();
        let c = pekeris_coefficients();
        let mut state = 1u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..100 {
            let mu = -0.4 + 4.0 * next();
            let ell = (next() * 6.0) as u32;
            let eps = -200.0 + 400.0 * next();
            let d = DunklParams::new(mu, ell, CentrifugalConvention::RadialEquation).unwrap();
            let mc = map_to_hypergeometric(&p, &d, &c);
            let combo = mc.xi2(eps) - mc.xi1(eps) - mc.xi3(eps);
            assert_abs_diff_eq!(combo, p.beta(), epsilon = 1e-10);
        }
    }

    #[test]
    fn drift_conventions() {
        let p = MolecularParams::default();
        let d = DunklParams::new(0.75, 1, CentrifugalConvention::RadialEquation).unwrap();
        let c = pekeris_coefficients();
        let eq = map_to_hypergeometric_with(&p, &d, &c, DriftConvention::Equal);
        assert_eq!(eq.c1, -0.5);
        assert_eq!(eq.c2, -0.5);
        let ode = map_to_hypergeometric_with(&p, &d, &c, DriftConvention::MappedOde);
        assert_eq!(ode.c1, 1.0);
        assert_eq!(ode.c2, 2.5);
        // xi's do not depend on the drift choice
        assert_eq!(eq.xi1_const, ode.xi1_const);
        assert_eq!(eq.xi2_const, ode.xi2_const);
        assert_eq!(eq.xi3_const, ode.xi3_const);
    }

    #[test]
    fn same_gamma_same_xis() {
        // (mu=0, l=1) and (mu=2, l=0) share gamma = 2 under the results-section
        // convention; everything except c1 = c2 = 1 - 2 mu must coincide.
        let p = MolecularParams::default();
        let c = pekeris_coefficients();
        let a = DunklParams::new(0.0, 1, CentrifugalConvention::ResultsSection).unwrap();
        let b = DunklParams::new(2.0, 0, CentrifugalConvention::ResultsSection).unwrap();
        assert_eq!(a.centrifugal_eigenvalue(), b.centrifugal_eigenvalue());
        let ma = map_to_hypergeometric(&p, &a, &c);
        let mb = map_to_hypergeometric(&p, &b, &c);
        assert_eq!(ma.xi1_const, mb.xi1_const);
        assert_eq!(ma.xi2_const, mb.xi2_const);
        assert_eq!(ma.xi3_const, mb.xi3_const);
        assert_ne!(ma.c1, mb.c1);
    }

    proptest! {
        #[test]
        fn xi_are_affine_with_pinned_slopes(
            mu in -0.45f64..3.0,
            ell in 0u32..5,
            e1 in -300.0f64..100.0,
            e2 in -300.0f64..100.0,
        ) {
            let p = MolecularParams::default();
            let d = DunklParams::new(mu, ell, CentrifugalConvention::RadialEquation).unwrap();
            let mc = map_to_hypergeometric(&p, &d, &pekeris_coefficients());
            let de = e1 - e2;
            prop_assert!((mc.xi1(e1) - mc.xi1(e2) - (-1.0) * de).abs() < 1e-9);
            prop_assert!((mc.xi2(e1) - mc.xi2(e2) - (-2.0) * de).abs() < 1e-9);
            prop_assert!((mc.xi3(e1) - mc.xi3(e2) - (-1.0) * de).abs() < 1e-9);
        }
    }
}
