//! Independent finite-difference eigensolver for the radial equation, used as
//! ground truth for every analytic mode.
//!
//! The Dunkl drift term (2μ+1)/r is removed exactly by the Liouville
//! substitution u = r^{(2μ+1)/2} R, which adds (4μ²−1)/4 to the inverse-square
//! coefficient and leaves a plain −u'' + W(r)u = 2mE·u problem. Central
//! second differences on a uniform grid then give a symmetric tridiagonal
//! matrix whose lowest eigenvalues are found by Sturm bisection. Each level
//! is solved on three grids (N, 2N, 4N intervals); the two finest are
//! Richardson-combined and the triple yields an empirical convergence order,
//! which must sit near 2 for the result to be trusted.

use crate::linalg::SymTridiag;
use crate::model::{deng_fan_potential, DunklParams, MolecularParams, QuantumNumbers};
use crate::nu::{energy_closed_form, energy_self_consistent, EnergyLevel, StateFlag};
use crate::pekeris::{inverse_square_approx, PekerisCoefficients};
use crate::{Error, Result};

/// Which form of the inverse-square (centrifugal) factor the solver uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleVariant {
    /// γ_μ / r² exactly as it appears in the radial equation.
    ExactCentrifugal,
    /// γ_μ multiplied by the Pekeris rational approximation of 1/r². Only the
    /// centrifugal factor is replaced; the potential and the drift term stay
    /// exact.
    PekerisMapped,
}

/// Uniform radial grid: `points` base intervals on [r_min, r_max].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

/// A fully specified eigenproblem for the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleProblem {
    pub params: MolecularParams,
    pub dunkl: DunklParams,
    pub variant: OracleVariant,
    pub grid: RadialGrid,
}

impl OracleProblem {
    /// Problem with the default grid: r_min = 10⁻⁴ r_e, r_max scaled to the
    /// slowest bound-state decay length (r_e + 30/√(2mD_e), falling back to
    /// r_e + 40/λ for a zero-depth well), 2000 base intervals.
    pub fn new(params: MolecularParams, dunkl: DunklParams, variant: OracleVariant) -> Self {
        let kappa = (2.0 * params.mass * params.dissociation_energy).sqrt();
        let r_max = if kappa > 0.0 {
            params.equilibrium_distance + 30.0 / kappa
        } else {
            params.equilibrium_distance + 40.0 / params.screening
        };
        Self {
            params,
            dunkl,
            variant,
            grid: RadialGrid {
                r_min: 1e-4 * params.equilibrium_distance,
                r_max,
                points: 2000,
            },
        }
    }

    /// Same problem on an explicit grid.
    pub fn with_grid(mut self, grid: RadialGrid) -> Self {
        self.grid = grid;
        self
    }
}

/// Extra inverse-square coefficient produced by removing the first-derivative
/// term: with u = r^{(2μ+1)/2} R, the transformed equation reads
/// u'' + [2m(E − V)/ħ² − (γ_μ + (4μ²−1)/4)/r²] u = 0.
pub fn liouville_transform_coefficient(d: &DunklParams) -> f64 {
    (4.0 * d.mu * d.mu - 1.0) / 4.0
}

/// Per-level grid study: raw eigenvalues on the three grids, the Richardson
/// combination of the two finest, and the empirical order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelEstimate {
    pub coarse: f64,
    pub medium: f64,
    pub fine: f64,
    /// (4·fine − medium)/3; the reported eigenvalue.
    pub richardson: f64,
    /// log₂(|coarse−medium| / |medium−fine|); NaN when the differences are at
    /// rounding level (already converged).
    pub convergence_order: f64,
}

/// Result of one eigensolve.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Richardson-extrapolated eigenvalues, ascending, one per level.
    pub eigenvalues: Vec<f64>,
    pub levels: Vec<LevelEstimate>,
    /// Interval counts of the three grids used.
    pub grids: [usize; 3],
}

fn solve_on_grid(prob: &OracleProblem, intervals: usize, count: usize) -> Result<Vec<f64>> {
    let g = prob.grid;
    let h = (g.r_max - g.r_min) / intervals as f64;
    let interior = intervals - 1;
    let gamma = prob.dunkl.centrifugal_eigenvalue();
    let lc = liouville_transform_coefficient(&prob.dunkl);
    let two_m = 2.0 * prob.params.mass;
    let pk = PekerisCoefficients::standard();
    let mut diag = Vec::with_capacity(interior);
    for i in 1..intervals {
        let r = g.r_min + h * i as f64;
        let v = deng_fan_potential(r, &prob.params)?;
        let invsq = match prob.variant {
            OracleVariant::ExactCentrifugal => 1.0 / (r * r),
            OracleVariant::PekerisMapped => inverse_square_approx(r, prob.params.screening, &pk)?,
        };
        let w = two_m * v + gamma * invsq + lc / (r * r);
        diag.push(2.0 / (h * h) + w);
    }
    let off = vec![-1.0 / (h * h); interior - 1];
    let t = SymTridiag::new(diag, off);
    Ok(t.lowest_eigenvalues(count)
        .into_iter()
        .map(|lam| lam / two_m)
        .collect())
}

/// Solves for the lowest `count` levels with the three-grid Richardson
/// procedure. Fails with [`Error::Accuracy`] when a level's empirical
/// convergence order leaves [1.5, 2.5] while its grid differences are still
/// above rounding level, or when the eigenvalues are not strictly increasing.
pub fn fd_eigensolve(prob: &OracleProblem, count: usize) -> Result<OracleResult> {
    let g = prob.grid;
    if !(g.r_min > 0.0 && g.r_min < g.r_max) || g.points < 8 {
        return Err(Error::InvalidGrid {
            details: format!(
                "need 0 < r_min < r_max and at least 8 intervals, got [{}, {}] with {}",
                g.r_min, g.r_max, g.points
            ),
        });
    }
    if count == 0 || count + 1 >= g.points {
        return Err(Error::InvalidGrid {
            details: format!("cannot extract {count} levels from {} intervals", g.points),
        });
    }
    let grids = [g.points, 2 * g.points, 4 * g.points];
    let coarse = solve_on_grid(prob, grids[0], count)?;
    let medium = solve_on_grid(prob, grids[1], count)?;
    let fine = solve_on_grid(prob, grids[2], count)?;

    let mut levels = Vec::with_capacity(count);
    let mut eigenvalues = Vec::with_capacity(count);
    for k in 0..count {
        let (c, m, f) = (coarse[k], medium[k], fine[k]);
        let richardson = (4.0 * f - m) / 3.0;
        let scale = f.abs().max(1.0);
        let d1 = (c - m).abs();
        let d2 = (m - f).abs();
        let converged = d1 < 1e-11 * scale && d2 < 1e-11 * scale;
        let order = if converged { f64::NAN } else { (d1 / d2).log2() };
        if !converged && !(1.5..=2.5).contains(&order) {
            return Err(Error::Accuracy {
                details: format!(
                    "level {k}: convergence order {order:.3} outside [1.5, 2.5] \
                     (eigenvalues {c:.9e} / {m:.9e} / {f:.9e} on grids {grids:?})"
                ),
            });
        }
        levels.push(LevelEstimate {
            coarse: c,
            medium: m,
            fine: f,
            richardson,
            convergence_order: order,
        });
        eigenvalues.push(richardson);
    }
    for pair in eigenvalues.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::Accuracy {
                details: format!("eigenvalues not strictly increasing: {eigenvalues:?}"),
            });
        }
    }
    Ok(OracleResult {
        eigenvalues,
        levels,
        grids,
    })
}

/// One grid point of the mode-comparison study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub n: u32,
    pub ell: u32,
    pub mu: f64,
    pub closed_form: EnergyLevel,
    /// None when the residual has no root in the bracket.
    pub self_consistent: Option<EnergyLevel>,
    /// NaN when the solve failed.
    pub oracle_exact: f64,
    pub oracle_pekeris: f64,
    pub gap_cf_sc_rel: f64,
    pub gap_sc_oracle_pekeris_rel: f64,
    pub gap_cf_oracle_exact_rel: f64,
}

/// Deterministic table of all modes side by side with pairwise relative gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,ell,mu,E_paper,flag_paper,E_self_consistent,flag_self_consistent,\
             E_oracle_exact,E_oracle_pekeris,rel_gap_paper_sc,rel_gap_sc_oracle_pekeris,\
             rel_gap_paper_oracle_exact\n",
        );
        for r in &self.rows {
            let (sc_e, sc_flag) = match &r.self_consistent {
                Some(lvl) => (crate::format_float(lvl.energy), lvl.flag.to_string()),
                None => ("nan".to_string(), StateFlag::NoRoot.to_string()),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.n,
                r.ell,
                crate::format_float(r.mu),
                crate::format_float(r.closed_form.energy),
                r.closed_form.flag,
                sc_e,
                sc_flag,
                crate::format_float(r.oracle_exact),
                crate::format_float(r.oracle_pekeris),
                crate::format_float(r.gap_cf_sc_rel),
                crate::format_float(r.gap_sc_oracle_pekeris_rel),
                crate::format_float(r.gap_cf_oracle_exact_rel),
            ));
        }
        out
    }
}

/// Symmetric relative gap |a−b| / max(|a|, |b|); NaN if either input is NaN.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        return f64::NAN;
    }
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Runs all modes over the (n, ℓ, μ) grid and tabulates pairwise gaps.
/// Failed rows are flagged (NaN energies), never dropped; rows are sorted by
/// (ℓ, n, μ).
pub fn compare_modes(
    p: &MolecularParams,
    d_template: &DunklParams,
    n_values: &[u32],
    ell_values: &[u32],
    mu_values: &[f64],
) -> ComparisonTable {
    let n_max = n_values.iter().copied().max().unwrap_or(0);
    let mut rows = Vec::new();
    for &ell in ell_values {
        for &n in n_values {
            for &mu in mu_values {
                let d = DunklParams {
                    mu,
                    ell,
                    ..*d_template
                };
                let q = QuantumNumbers::new(n, ell);
                let cf = energy_closed_form(q, p, &d);
                let sc = energy_self_consistent(q, p, &d).ok().map(|s| s.level);
                let solve = |variant| {
                    let prob = OracleProblem::new(*p, d, variant);
                    fd_eigensolve(&prob, (n_max + 1) as usize)
                        .map(|res| res.eigenvalues[n as usize])
                        .unwrap_or(f64::NAN)
                };
                let oracle_exact = solve(OracleVariant::ExactCentrifugal);
                let oracle_pekeris = solve(OracleVariant::PekerisMapped);
                let sc_energy = sc.map_or(f64::NAN, |l| l.energy);
                rows.push(ComparisonRow {
                    n,
                    ell,
                    mu,
                    closed_form: cf,
                    self_consistent: sc,
                    oracle_exact,
                    oracle_pekeris,
                    gap_cf_sc_rel: relative_gap(cf.energy, sc_energy),
                    gap_sc_oracle_pekeris_rel: relative_gap(sc_energy, oracle_pekeris),
                    gap_cf_oracle_exact_rel: relative_gap(cf.energy, oracle_exact),
                });
            }
        }
    }
    rows.sort_by(|a, b| {
        (a.ell, a.n)
            .cmp(&(b.ell, b.n))
            .then(a.mu.partial_cmp(&b.mu).unwrap())
    });
    ComparisonTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CentrifugalConvention;
    use approx::assert_abs_diff_eq;

    #[test]
    fn liouville_coefficient_values() {
        let d = |mu| DunklParams::new(mu, 0, CentrifugalConvention::RadialEquation).unwrap();
        assert_eq!(liouville_transform_coefficient(&d(0.5)), 0.0);
        assert_eq!(liouville_transform_coefficient(&d(0.0)), -0.25);
        assert_eq!(liouville_transform_coefficient(&d(1.0)), 0.75);
    }

    #[test]
    fn liouville_transform_removes_drift_term() {
        // With u = r^{(2mu+1)/2} R the identity
        //   R'' + ((2mu+1)/r) R' = r^{-(2mu+1)/2} [u'' - lc/r^2 u]
        // must hold; check both sides by central differences at mu = 1.
        let mu = 1.0;
        let lc = (4.0 * mu * mu - 1.0) / 4.0;
        let r_fn = |r: f64| (-r).exp() * (1.0 + 0.3 * r * r);
        let u_fn = |r: f64| r.powf((2.0 * mu + 1.0) / 2.0) * r_fn(r);
        let h = 1e-4;
        for &r in &[0.7, 1.3, 2.9] {
            let d2r = (r_fn(r + h) - 2.0 * r_fn(r) + r_fn(r - h)) / (h * h);
            let d1r = (r_fn(r + h) - r_fn(r - h)) / (2.0 * h);
            let lhs = d2r + (2.0 * mu + 1.0) / r * d1r;
            let d2u = (u_fn(r + h) - 2.0 * u_fn(r) + u_fn(r - h)) / (h * h);
            let rhs = r.powf(-(2.0 * mu + 1.0) / 2.0) * (d2u - lc / (r * r) * u_fn(r));
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-5 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn particle_in_a_box_sanity() {
        // mu = 1/2 zeroes the transform coefficient, l = 0 zeroes gamma, and a
        // zero-depth well zeroes V: a pure box on [1, 3].
        let p = MolecularParams::new(0.0, 0.5, 2.0, 1.0).unwrap();
        let d = DunklParams::new(0.5, 0, CentrifugalConvention::RadialEquation).unwrap();
        let prob = OracleProblem::new(p, d, OracleVariant::ExactCentrifugal).with_grid(
            RadialGrid {
                r_min: 1.0,
                r_max: 3.0,
                points: 2000,
            },
        );
        let res = fd_eigensolve(&prob, 3).unwrap();
        let length: f64 = 2.0;
        for (k, e) in res.eigenvalues.iter().enumerate() {
            let kf = (k + 1) as f64;
            let exact = kf * kf * std::f64::consts::PI.powi(2) / (2.0 * p.mass * length * length);
            assert!(
                (e - exact).abs() / exact < 1e-6,
                "level {k}: {e} vs {exact}"
            );
        }
        for lvl in &res.levels {
            assert!(
                (1.8..=2.2).contains(&lvl.convergence_order),
                "order {} outside window",
                lvl.convergence_order
            );
        }
    }

    #[test]
    fn default_well_levels_and_interlacing() {
        let p = MolecularParams::default();
        let d = DunklParams::default();
        let prob = OracleProblem::new(p, d, OracleVariant::ExactCentrifugal);
        let res = fd_eigensolve(&prob, 4).unwrap();
        for pair in res.eigenvalues.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        // frozen from two independent discretizations of the same operator
        assert_abs_diff_eq!(res.eigenvalues[0], 2.404563, epsilon = 5e-5);
        assert!(res.eigenvalues[0] > 0.0 && res.eigenvalues[0] < p.dissociation_energy);
    }

    #[test]
    fn exact_and_pekeris_agree_when_gamma_vanishes() {
        // at l = 0 the centrifugal factor is absent, so the two variants build
        // the identical matrix
        let p = MolecularParams::default();
        let d = DunklParams::default();
        let a = fd_eigensolve(&OracleProblem::new(p, d, OracleVariant::ExactCentrifugal), 2)
            .unwrap();
        let b = fd_eigensolve(&OracleProblem::new(p, d, OracleVariant::PekerisMapped), 2).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
    }

    #[test]
    fn pekeris_variant_differs_for_positive_gamma() {
        let p = MolecularParams::default();
        let d = DunklParams::new(0.5, 2, CentrifugalConvention::RadialEquation).unwrap();
        let a = fd_eigensolve(&OracleProblem::new(p, d, OracleVariant::ExactCentrifugal), 2)
            .unwrap();
        let b = fd_eigensolve(&OracleProblem::new(p, d, OracleVariant::PekerisMapped), 2).unwrap();
        let gap = relative_gap(a.eigenvalues[0], b.eigenvalues[0]);
        assert!(gap > 1e-9, "expected a visible Pekeris error, got {gap}");
        assert!(gap < 0.2, "Pekeris error implausibly large: {gap}");
    }

    #[test]
    fn oracle_monotone_in_mu() {
        let p = MolecularParams::default();
        let mut prev = vec![f64::NEG_INFINITY; 3];
        for mu in [0.0, 1.0, 2.0, 3.0] {
            let d = DunklParams::new(mu, 0, CentrifugalConvention::RadialEquation).unwrap();
            let res = fd_eigensolve(&OracleProblem::new(p, d, OracleVariant::ExactCentrifugal), 3)
                .unwrap();
            for (k, e) in res.eigenvalues.iter().enumerate() {
                assert!(*e > prev[k], "level {k} not increasing at mu={mu}");
                prev[k] = *e;
            }
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let p = MolecularParams::default();
        let d = DunklParams::default();
        let prob = OracleProblem::new(p, d, OracleVariant::ExactCentrifugal).with_grid(
            RadialGrid {
                r_min: 1e-4,
                r_max: 7.5,
                points: 12,
            },
        );
        match fd_eigensolve(&prob, 3) {
            Err(Error::Accuracy { .. }) => {}
            other => panic!("expected an accuracy failure, got {other:?}"),
        }
    }

    #[test]
    fn comparison_table_is_deterministic_and_complete() {
        let p = MolecularParams::default();
        let d = DunklParams::default();
        let a = compare_modes(&p, &d, &[0, 1], &[0], &[0.0, 0.5]);
        let b = compare_modes(&p, &d, &[0, 1], &[0], &[0.0, 0.5]);
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.rows.len(), 4);
        for row in &a.rows {
            assert!(row.oracle_exact.is_finite());
            // the closed form sits far below the oracle for these parameters;
            // the gap is the point of the table
            assert!(row.gap_cf_oracle_exact_rel > 0.5);
        }
    }
}
