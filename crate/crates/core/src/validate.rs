//! The verification pipeline behind `ddf validate`: nine numbered checks, the
//! mode-comparison table, the Pekeris error table, convergence diagnostics,
//! and the measured-discrepancy register.
//!
//! Checks split into *hard* ones — invariants the implementation must satisfy
//! (energy-independence of α₉, μ→0 continuity, figure trends, oracle sanity,
//! wavefunction properties, report completeness) — and *informational* ones
//! that record how far the analytic routes sit from the numerical oracle.
//! The informational checks C5 and C6 do not pass for this potential class:
//! the closed form and the termination condition it is said to solve are not
//! mutually consistent, and neither reproduces the mapped equation's
//! spectrum. The report quantifies both gaps instead of hiding them.

use crate::model::{CentrifugalConvention, DunklParams, MolecularParams, QuantumNumbers};
use crate::nu::{
    alpha_chain, energy_closed_form, energy_self_consistent, normalizable_state_count,
    quantization_residual, spectrum, SpectrumMode,
};
use crate::oracle::{
    compare_modes, fd_eigensolve, relative_gap, ComparisonTable, OracleProblem, OracleVariant,
    RadialGrid,
};
use crate::pekeris::{
    map_to_hypergeometric, map_to_hypergeometric_with, pekeris_coefficients, DriftConvention,
};
use crate::quadrature::adaptive_simpson;
use crate::wavefunction::{QuadratureSpec, RadialState};

/// C1: absolute tolerance on |α₉ − (¼ + β)|.
pub const ALPHA9_TOL_ABS: f64 = 1e-12;
/// C2: relative tolerance between μ = 10⁻¹² and μ = 0 closed-form energies.
pub const MU_CONTINUITY_TOL_REL: f64 = 1e-8;
/// C5: relative tolerance between self-consistent roots and the Pekeris-mapped oracle.
pub const SC_VS_ORACLE_TOL_REL: f64 = 1e-6;
/// C6: relative tolerance between the closed form and self-consistent roots at μ = ℓ = 0.
pub const CF_VS_SC_MU0_TOL_REL: f64 = 1e-9;
/// C7: relative tolerance of the box spectrum after Richardson extrapolation.
pub const BOX_TOL_REL: f64 = 1e-6;
/// C7: admissible empirical convergence-order window.
pub const ORDER_WINDOW: (f64, f64) = (1.8, 2.2);
/// C8: tolerance on re-integrated normalization.
pub const NORMALIZATION_TOL: f64 = 1e-8;
/// C8: tolerance on Jacobi orthogonality residuals.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// μ grid of the energy-trend check (C3).
pub fn fig2_mu_grid() -> Vec<f64> {
    (0..=12).map(|k| 0.25 * k as f64).collect()
}

/// μ values of the density-trend check (C4).
pub const FIG3_MU_VALUES: [f64; 3] = [0.0, 1.5, 3.0];

/// (n, ℓ, μ) grid of the consistency checks (C5, C8, C9).
pub fn consistency_grid() -> (Vec<u32>, Vec<u32>, Vec<f64>) {
    (vec![0, 1, 2], vec![0, 1, 2], vec![0.0, 0.5, 1.0])
}

/// What the validation pipeline runs on.
#[derive(Debug, Clone, Copy)]
pub struct ValidationConfig {
    pub params: MolecularParams,
    pub convention: CentrifugalConvention,
    /// Base interval count of oracle grids (the default 2000 satisfies the
    /// accuracy gate; deliberately coarse values make C7 fail).
    pub oracle_points: usize,
    /// Random draws for the α₉ check.
    pub draws: usize,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            params: MolecularParams::default(),
            convention: CentrifugalConvention::RadialEquation,
            oracle_points: 2000,
            draws: 1000,
        }
    }
}

/// One executed check.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: &'static str,
    pub name: &'static str,
    /// Hard checks gate the exit status; informational ones only report.
    pub hard: bool,
    pub passed: bool,
    pub details: String,
}

/// Everything `ddf validate` emits.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub config: ValidationConfig,
    pub outcomes: Vec<CriterionOutcome>,
    pub comparison: ComparisonTable,
    /// (ℓ, μ, n, E_exact, E_pekeris, rel gap)
    pub pekeris_error: Vec<(u32, f64, u32, f64, f64, f64)>,
    /// (label, level, coarse, medium, fine, richardson, order)
    pub convergence: Vec<(String, u32, f64, f64, f64, f64, f64)>,
    /// (μ, n, ε root with equal drift, ε root with mapped-ODE drift)
    pub drift_deltas: Vec<(f64, u32, f64, f64)>,
    pub discrepancies: Vec<String>,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn uniform(state: &mut u64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64
}

/// C1: α₉ from the chain equals ¼ + β over random parameter draws.
/// Returns the worst absolute deviation alongside the verdict.
pub fn criterion_alpha9(cfg: &ValidationConfig) -> CriterionOutcome {
    let mut state = 0x5EED_0001u64;
    let mut worst: f64 = 0.0;
    for _ in 0..cfg.draws {
        let de = uniform(&mut state, 0.1, 25.0);
        let lambda = uniform(&mut state, 0.4, 1.6);
        let mass = uniform(&mut state, 0.25, 1.75);
        let mu = uniform(&mut state, -0.45, 3.0);
        let ell = (uniform(&mut state, 0.0, 5.0)) as u32;
        let eps = uniform(&mut state, -250.0, 80.0);
        let p = MolecularParams::new(de, lambda, 1.0, mass).unwrap();
        let d = DunklParams::new(mu, ell, cfg.convention).unwrap();
        let mc = map_to_hypergeometric(&p, &d, &pekeris_coefficients());
        let a9 = alpha_chain(&mc, eps).alpha9;
        worst = worst.max((a9 - (0.25 + p.beta())).abs());
    }
    CriterionOutcome {
        id: "C1",
        name: "alpha9 energy independence",
        hard: true,
        passed: worst < ALPHA9_TOL_ABS,
        details: format!(
            "max |alpha9 - (1/4 + beta)| = {:.3e} over {} draws (tol {ALPHA9_TOL_ABS:.1e})",
            worst, cfg.draws
        ),
    }
}

/// C2: the closed form is continuous at μ = 0 and the two centrifugal
/// conventions coincide there.
pub fn criterion_mu_zero_reduction(cfg: &ValidationConfig) -> CriterionOutcome {
    let p = cfg.params;
    let mut worst_rel: f64 = 0.0;
    let mut conventions_agree = true;
    for ell in 0..3u32 {
        for n in 0..3u32 {
            let q = QuantumNumbers::new(n, ell);
            let d0 = DunklParams::new(0.0, ell, cfg.convention).unwrap();
            let d_eps = DunklParams::new(1e-12, ell, cfg.convention).unwrap();
            let e0 = energy_closed_form(q, &p, &d0).eps;
            let e1 = energy_closed_form(q, &p, &d_eps).eps;
            worst_rel = worst_rel.max((e0 - e1).abs() / e0.abs());
            let da = DunklParams::new(0.0, ell, CentrifugalConvention::RadialEquation).unwrap();
            let db = DunklParams::new(0.0, ell, CentrifugalConvention::ResultsSection).unwrap();
            if energy_closed_form(q, &p, &da) != energy_closed_form(q, &p, &db) {
                conventions_agree = false;
            }
        }
    }
    CriterionOutcome {
        id: "C2",
        name: "mu -> 0 reduction",
        hard: true,
        passed: worst_rel < MU_CONTINUITY_TOL_REL && conventions_agree,
        details: format!(
            "max rel jump at mu=0: {worst_rel:.3e} (tol {MU_CONTINUITY_TOL_REL:.1e}); \
             conventions coincide at mu=0: {conventions_agree}"
        ),
    }
}

/// C3: every mode's energy is strictly increasing in μ on the sweep grid for
/// n ∈ {0,1,2}, ℓ = 0.
pub fn criterion_energy_trend(cfg: &ValidationConfig) -> CriterionOutcome {
    let p = cfg.params;
    let mus = fig2_mu_grid();
    let mut violations = Vec::new();
    for mode in [
        SpectrumMode::ClosedForm,
        SpectrumMode::SelfConsistent,
        SpectrumMode::Oracle,
    ] {
        let mut prev = [f64::NEG_INFINITY; 3];
        for &mu in &mus {
            let d = DunklParams::new(mu, 0, cfg.convention).unwrap();
            let table = spectrum(&p, &d, 2, 0, mode);
            for row in &table.rows {
                let k = row.n as usize;
                if !(row.energy > prev[k]) {
                    violations.push(format!("{mode} n={} mu={mu}", row.n));
                }
                prev[k] = row.energy;
            }
        }
    }
    CriterionOutcome {
        id: "C3",
        name: "energy strictly increasing in mu (all modes)",
        hard: true,
        passed: violations.is_empty(),
        details: if violations.is_empty() {
            format!(
                "strict increase over mu in {:?} for n in 0..=2 in all three modes",
                (mus[0], *mus.last().unwrap())
            )
        } else {
            format!("violations: {}", violations.join(", "))
        },
    }
}

/// C4: ground-state density peak moves right and the near-origin density
/// drops as μ grows through {0, 1.5, 3}.
pub fn criterion_density_trend(cfg: &ValidationConfig) -> CriterionOutcome {
    let p = cfg.params;
    let quad = QuadratureSpec::for_params(&p);
    let mut peaks = Vec::new();
    let mut at_origin = Vec::new();
    for &mu in &FIG3_MU_VALUES {
        let d = DunklParams::new(mu, 0, cfg.convention).unwrap();
        let st = match RadialState::closed_form(QuantumNumbers::new(0, 0), &p, &d)
            .and_then(|s| s.normalized(&quad, 2.0 * mu + 1.0))
        {
            Ok(s) => s,
            Err(e) => {
                return CriterionOutcome {
                    id: "C4",
                    name: "density peak shift and origin suppression",
                    hard: true,
                    passed: false,
                    details: format!("state construction failed at mu={mu}: {e}"),
                }
            }
        };
        let mut best = (0.0f64, f64::NEG_INFINITY);
        for i in 1..48_000 {
            let r = 12.0 * i as f64 / 48_000.0;
            let dens = st.probability_density(r, true);
            if dens > best.1 {
                best = (r, dens);
            }
        }
        peaks.push(best.0);
        at_origin.push(st.probability_density(1e-3 * p.equilibrium_distance, true));
    }
    let peaks_increase = peaks.windows(2).all(|w| w[0] < w[1]);
    let origin_decreases = at_origin.windows(2).all(|w| w[0] > w[1]);
    CriterionOutcome {
        id: "C4",
        name: "density peak shift and origin suppression",
        hard: true,
        passed: peaks_increase && origin_decreases,
        details: format!(
            "peaks at r = {peaks:.4?} (increasing: {peaks_increase}); \
             density(1e-3 r_e) = [{}] (decreasing: {origin_decreases})",
            at_origin
                .iter()
                .map(|v| format!("{v:.3e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

/// C5 (informational): self-consistent roots vs the Pekeris-mapped oracle on
/// the consistency grid. The two do not solve the same equation in practice;
/// the measured gaps are the product.
pub fn criterion_sc_vs_oracle(cfg: &ValidationConfig) -> CriterionOutcome {
    let p = cfg.params;
    let (ns, ells, mus) = consistency_grid();
    let mut worst: f64 = 0.0;
    let mut missing = 0usize;
    let mut total = 0usize;
    for &ell in &ells {
        for &mu in &mus {
            let d = DunklParams::new(mu, ell, cfg.convention).unwrap();
            let prob = OracleProblem::new(p, d, OracleVariant::PekerisMapped);
            let oracle = fd_eigensolve(&prob, ns.len());
            for &n in &ns {
                total += 1;
                let sc = energy_self_consistent(QuantumNumbers::new(n, ell), &p, &d);
                match (&sc, &oracle) {
                    (Ok(sc), Ok(or)) => {
                        worst = worst.max(relative_gap(sc.level.energy, or.eigenvalues[n as usize]));
                    }
                    _ => missing += 1,
                }
            }
        }
    }
    let passed = missing == 0 && worst < SC_VS_ORACLE_TOL_REL;
    CriterionOutcome {
        id: "C5",
        name: "self-consistent vs oracle(pekeris-mapped)",
        hard: false,
        passed,
        details: format!(
            "max rel gap = {worst:.3e} (tol {SC_VS_ORACLE_TOL_REL:.1e}); \
             {missing}/{total} grid points without a self-consistent root"
        ),
    }
}

/// C6 (informational): closed form vs self-consistent roots at μ = ℓ = 0.
pub fn criterion_mode_agreement_mu0(cfg: &ValidationConfig) -> CriterionOutcome {
    let p = cfg.params;
    let d = DunklParams::new(0.0, 0, cfg.convention).unwrap();
    let mut worst: f64 = 0.0;
    let mut details = Vec::new();
    for n in 0..3u32 {
        let q = QuantumNumbers::new(n, 0);
        let cf = energy_closed_form(q, &p, &d);
        match energy_self_consistent(q, &p, &d) {
            Ok(sc) => {
                let gap = relative_gap(cf.eps, sc.level.eps);
                worst = worst.max(gap);
                details.push(format!(
                    "n={n}: eps_cf={:.6e}, eps_sc={:.6e}, rel={gap:.3e}",
                    cf.eps, sc.level.eps
                ));
            }
            Err(e) => {
                worst = f64::INFINITY;
                details.push(format!("n={n}: no self-consistent root ({e})"));
            }
        }
    }
    CriterionOutcome {
        id: "C6",
        name: "closed form vs self-consistent at mu = ell = 0",
        hard: false,
        passed: worst < CF_VS_SC_MU0_TOL_REL,
        details: format!(
            "max rel gap = {worst:.3e} (tol {CF_VS_SC_MU0_TOL_REL:.1e}); {}",
            details.join("; ")
        ),
    }
}

/// C7: particle-in-a-box sanity of the finite-difference machinery.
pub fn criterion_box_sanity(cfg: &ValidationConfig) -> CriterionOutcome {
    let p = match MolecularParams::new(0.0, 0.5, 2.0, 1.0) {
        Ok(p) => p,
        Err(e) => unreachable!("fixed box parameters are valid: {e}"),
    };
    let d = DunklParams::new(0.5, 0, CentrifugalConvention::RadialEquation).unwrap();
    let prob = OracleProblem::new(p, d, OracleVariant::ExactCentrifugal).with_grid(RadialGrid {
        r_min: 1.0,
        r_max: 3.0,
        points: cfg.oracle_points,
    });
    match fd_eigensolve(&prob, 3) {
        Ok(res) => {
            let length: f64 = 2.0;
            let mut worst_rel: f64 = 0.0;
            for (k, e) in res.eigenvalues.iter().enumerate() {
                let kf = (k + 1) as f64;
                let exact =
                    kf * kf * std::f64::consts::PI.powi(2) / (2.0 * p.mass * length * length);
                worst_rel = worst_rel.max((e - exact).abs() / exact);
            }
            let orders_ok = res.levels.iter().all(|l| {
                l.convergence_order.is_nan()
                    || (ORDER_WINDOW.0..=ORDER_WINDOW.1).contains(&l.convergence_order)
            });
            let orders: Vec<f64> = res.levels.iter().map(|l| l.convergence_order).collect();
            CriterionOutcome {
                id: "C7",
                name: "oracle box sanity and convergence order",
                hard: true,
                passed: worst_rel < BOX_TOL_REL && orders_ok,
                details: format!(
                    "max rel error vs n^2 pi^2/(2mL^2): {worst_rel:.3e} (tol {BOX_TOL_REL:.1e}); \
                     orders {orders:.3?} within {ORDER_WINDOW:?}: {orders_ok}"
                ),
            }
        }
        Err(e) => CriterionOutcome {
            id: "C7",
            name: "oracle box sanity and convergence order",
            hard: true,
            passed: false,
            details: format!("eigensolve failed: {e}"),
        },
    }
}

/// C8: node counts, re-integrated normalization, and Jacobi orthogonality for
/// the normalizable states of the consistency grid.
pub fn criterion_wavefunction_properties(cfg: &ValidationConfig) -> CriterionOutcome {
    let p = cfg.params;
    let (ns, ells, mus) = consistency_grid();
    let quad = QuadratureSpec::for_params(&p);
    let mut node_failures = Vec::new();
    let mut worst_norm_dev: f64 = 0.0;
    let mut worst_orth: f64 = 0.0;
    let mut checked = 0usize;
    for &ell in &ells {
        for &mu in &mus {
            let d = DunklParams::new(mu, ell, cfg.convention).unwrap();
            for &n in &ns {
                if n >= normalizable_state_count(&p, &d) {
                    continue;
                }
                let q = QuantumNumbers::new(n, ell);
                let w = 2.0 * mu + 1.0;
                let st = match RadialState::closed_form(q, &p, &d)
                    .and_then(|s| s.normalized(&quad, w))
                {
                    Ok(s) => s,
                    Err(e) => {
                        node_failures.push(format!("(n={n},l={ell},mu={mu}): {e}"));
                        continue;
                    }
                };
                checked += 1;
                let counted = st.node_count(&quad);
                if counted != n as usize {
                    node_failures.push(format!("(n={n},l={ell},mu={mu}): {counted} nodes"));
                }
                // independent re-integration with the other scheme, on fixed
                // segments fine enough that the peak cannot be stepped over
                let integrand = |r: f64| st.probability_density(r, true);
                let mut integral = 0.0;
                for k in 0..128 {
                    let (a, b) = if k < 96 {
                        (4.0 * k as f64 / 96.0, 4.0 * (k + 1) as f64 / 96.0)
                    } else {
                        let t0 = (k - 96) as f64 / 32.0;
                        let t1 = (k - 95) as f64 / 32.0;
                        (4.0 + (quad.r_max - 4.0) * t0, 4.0 + (quad.r_max - 4.0) * t1)
                    };
                    integral += adaptive_simpson(&integrand, a, b, 1e-13);
                }
                worst_norm_dev = worst_norm_dev.max((integral - 1.0).abs());
            }
            // orthogonality with the weight matching this (ell, mu) ground state
            let d0 = DunklParams::new(mu, ell, cfg.convention).unwrap();
            if let Ok(st) = RadialState::closed_form(QuantumNumbers::new(0, ell), &p, &d0) {
                let rule = crate::quadrature::gauss_jacobi_unit(256, st.jacobi_a, st.jacobi_b);
                let dot = |m: u32, k: u32| -> f64 {
                    rule.nodes
                        .iter()
                        .zip(&rule.weights)
                        .map(|(&x, &wq)| {
                            wq * crate::wavefunction::jacobi(m, st.jacobi_a, st.jacobi_b, x)
                                .unwrap()
                                * crate::wavefunction::jacobi(k, st.jacobi_a, st.jacobi_b, x)
                                    .unwrap()
                        })
                        .sum()
                };
                for m in 0..=5u32 {
                    for k in (m + 1)..=5u32 {
                        let res = dot(m, k).abs() / (dot(m, m) * dot(k, k)).sqrt();
                        worst_orth = worst_orth.max(res);
                    }
                }
            }
        }
    }
    let passed = node_failures.is_empty()
        && worst_norm_dev < NORMALIZATION_TOL
        && worst_orth < ORTHOGONALITY_TOL;
    CriterionOutcome {
        id: "C8",
        name: "wavefunction properties (nodes, norm, orthogonality)",
        hard: true,
        passed,
        details: format!(
            "{checked} states checked; node failures: [{}]; \
             max |norm integral - 1| = {worst_norm_dev:.3e} (tol {NORMALIZATION_TOL:.1e}); \
             max orthogonality residual = {worst_orth:.3e} (tol {ORTHOGONALITY_TOL:.1e})",
            node_failures.join(", ")
        ),
    }
}

/// C9: the comparison table covers the whole grid, carries unbound flags where
/// the closed form leaves the physical window, and renders deterministically.
pub fn criterion_report_completeness(
    cfg: &ValidationConfig,
    comparison: &ComparisonTable,
) -> CriterionOutcome {
    let (ns, ells, mus) = consistency_grid();
    let expected = ns.len() * ells.len() * mus.len();
    let complete = comparison.rows.len() == expected;
    let all_populated = comparison
        .rows
        .iter()
        .all(|r| r.closed_form.energy.is_finite() && r.oracle_exact.is_finite());
    // for the reference parameters the closed form sits below the window, so
    // unbound flags must be present
    let unbound_rows = comparison
        .rows
        .iter()
        .filter(|r| {
            r.closed_form.energy < 0.0 || r.closed_form.energy >= cfg.params.dissociation_energy
        })
        .count();
    let flags_consistent = comparison.rows.iter().all(|r| {
        let outside = r.closed_form.energy < 0.0
            || r.closed_form.energy >= cfg.params.dissociation_energy;
        !outside || r.closed_form.flag == crate::nu::StateFlag::Unbound
    });
    let deterministic = {
        let again = compare_modes(
            &cfg.params,
            &DunklParams::new(0.0, 0, cfg.convention).unwrap(),
            &ns,
            &ells,
            &mus,
        );
        again.to_csv() == comparison.to_csv()
    };
    CriterionOutcome {
        id: "C9",
        name: "comparison report completeness and determinism",
        hard: true,
        passed: complete && all_populated && flags_consistent && deterministic,
        details: format!(
            "{} rows (expected {expected}); populated: {all_populated}; \
             unbound-flagged closed-form rows: {unbound_rows}; flags consistent: \
             {flags_consistent}; deterministic re-render: {deterministic}",
            comparison.rows.len()
        ),
    }
}

/// Self-consistent root of the residual under an explicit drift convention;
/// used for the drift-sensitivity table.
fn sc_root_with_drift(
    n: u32,
    p: &MolecularParams,
    d: &DunklParams,
    drift: DriftConvention,
) -> Option<f64> {
    let c = pekeris_coefficients();
    let mc = map_to_hypergeometric_with(p, d, &c, drift);
    let gamma = d.centrifugal_eigenvalue();
    let upper = match drift {
        DriftConvention::Equal => d.mu * d.mu + gamma * c.c0 - 1e-14,
        // alpha4 = 0 under the mapped-ODE drift, so alpha8 = gamma C0 - eps
        DriftConvention::MappedOde => gamma * c.c0 - 1e-14,
    };
    let lo = -p.beta();
    if !(upper > lo) {
        return None;
    }
    let f = |eps: f64| quantization_residual(n, eps, &mc).ok();
    let (mut a, mut b) = (lo, upper);
    let (mut fa, fb) = (f(a)?, f(b)?);
    if fa * fb > 0.0 {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Some(0.5 * (a + b))
}

/// Runs the whole pipeline.
pub fn run_validation(cfg: &ValidationConfig) -> ValidationReport {
    let p = cfg.params;
    let d0 = DunklParams::new(0.0, 0, cfg.convention).unwrap();
    let (ns, ells, mus) = consistency_grid();
    let comparison = compare_modes(&p, &d0, &ns, &ells, &mus);

    let mut outcomes = vec![
        criterion_alpha9(cfg),
        criterion_mu_zero_reduction(cfg),
        criterion_energy_trend(cfg),
        criterion_density_trend(cfg),
        criterion_sc_vs_oracle(cfg),
        criterion_mode_agreement_mu0(cfg),
        criterion_box_sanity(cfg),
        criterion_wavefunction_properties(cfg),
    ];
    outcomes.push(criterion_report_completeness(cfg, &comparison));

    // Pekeris error table: exact vs mapped centrifugal factor per level.
    let mut pekeris_error = Vec::new();
    for &ell in &ells {
        for &mu in &mus {
            let d = DunklParams::new(mu, ell, cfg.convention).unwrap();
            let ex = fd_eigensolve(&OracleProblem::new(p, d, OracleVariant::ExactCentrifugal), 3);
            let pk = fd_eigensolve(&OracleProblem::new(p, d, OracleVariant::PekerisMapped), 3);
            if let (Ok(ex), Ok(pk)) = (ex, pk) {
                for n in 0..3u32 {
                    let a = ex.eigenvalues[n as usize];
                    let b = pk.eigenvalues[n as usize];
                    pekeris_error.push((ell, mu, n, a, b, relative_gap(a, b)));
                }
            }
        }
    }

    // Convergence diagnostics for two representative solves.
    let mut convergence = Vec::new();
    for (label, d) in [
        ("well mu=0 l=0", DunklParams::new(0.0, 0, cfg.convention).unwrap()),
        ("well mu=1 l=2", DunklParams::new(1.0, 2, cfg.convention).unwrap()),
    ] {
        if let Ok(res) = fd_eigensolve(
            &OracleProblem::new(p, d, OracleVariant::ExactCentrifugal),
            3,
        ) {
            for (k, lvl) in res.levels.iter().enumerate() {
                convergence.push((
                    label.to_string(),
                    k as u32,
                    lvl.coarse,
                    lvl.medium,
                    lvl.fine,
                    lvl.richardson,
                    lvl.convergence_order,
                ));
            }
        }
    }

    // Drift-convention sensitivity of the self-consistent roots. Missing
    // roots are reported as NaN; their absence is itself a consequence of the
    // coefficient choice.
    let mut drift_deltas = Vec::new();
    for &mu in &[0.0, 0.5, 1.0] {
        let d = DunklParams::new(mu, 0, cfg.convention).unwrap();
        for n in 0..2u32 {
            let eq = sc_root_with_drift(n, &p, &d, DriftConvention::Equal);
            let ode = sc_root_with_drift(n, &p, &d, DriftConvention::MappedOde);
            drift_deltas.push((mu, n, eq.unwrap_or(f64::NAN), ode.unwrap_or(f64::NAN)));
        }
    }

    // Measured discrepancies: the register the comparison exists to fill.
    let mut discrepancies = Vec::new();
    {
        let mc = map_to_hypergeometric(&p, &d0, &pekeris_coefficients());
        let ch = alpha_chain(&mc, 0.0);
        discrepancies.push(format!(
            "termwise alpha-chain sum alpha6 + c3*alpha7 + c3^2*alpha8 = {:.6e} at eps=0, \
             mu=l=0, versus the energy-independent constant 1/4 + beta = {:.6e} the spectral \
             formulas use; the two readings differ in the sign of beta",
            ch.termwise_sum(mc.c3),
            ch.alpha9
        ));
        let cf = energy_closed_form(QuantumNumbers::new(0, 0), &p, &d0);
        let res = quantization_residual(0, cf.eps, &mc);
        discrepancies.push(format!(
            "termination residual evaluated at the closed-form ground energy (mu=l=0): {} \
             (zero would mean the closed form solves the condition it is derived from)",
            match res {
                Ok(v) => format!("{v:.6e}"),
                Err(e) => format!("not evaluable: {e}"),
            }
        ));
        discrepancies.push(format!(
            "closed-form energies for the reference parameters lie below the physical window \
             [0, D_e): E(n=0, mu=l=0) = {:.6e} hartree against a well minimum of 0",
            cf.energy
        ));
        let st = RadialState::closed_form(QuantumNumbers::new(0, 0), &p, &d0).unwrap();
        let r1 = 1e-4 / p.screening;
        let r2 = 1e-5 / p.screening;
        let slope = (st.radial_unnormalized(r1).abs().ln() - st.radial_unnormalized(r2).abs().ln())
            / ((-(-p.screening * r1).exp_m1()).ln() - (-(-p.screening * r2).exp_m1()).ln());
        discrepancies.push(format!(
            "measured small-r exponent of the ground state is {slope:.4} = sqrt(alpha9) \
             = {:.4}, i.e. the (1-s) factor controls the origin, not sqrt(alpha8) = {:.4}",
            st.exp_1ms, st.exp_s
        ));
        let da = DunklParams::new(1.0, 1, CentrifugalConvention::RadialEquation).unwrap();
        let db = DunklParams::new(1.0, 1, CentrifugalConvention::ResultsSection).unwrap();
        discrepancies.push(format!(
            "the two centrifugal conventions differ by exactly mu: gamma({}) = {} vs gamma({}) \
             = {} at mu=1, l=1",
            "radial-eq",
            da.centrifugal_eigenvalue(),
            "results-sec",
            db.centrifugal_eigenvalue()
        ));
        if let Some((_, _, a, b)) = drift_deltas.iter().find(|(mu, n, _, _)| *mu == 1.0 && *n == 0)
        {
            if b.is_nan() {
                discrepancies.push(format!(
                    "drift-coefficient choice matters at mu=1: the equal pair has a ground root \
                     at eps = {a:.6e}, the mapped-ODE pair admits none in the bracket"
                ));
            } else {
                discrepancies.push(format!(
                    "drift-coefficient choice shifts the self-consistent ground root at mu=1: \
                     eps = {a:.6e} (equal pair) vs {b:.6e} (mapped-ODE pair)"
                ));
            }
        }
        discrepancies.push(
            "at mu=0 the radial drift term is 1/r, not the three-dimensional 2/r; the operator \
             is discretized exactly as written"
                .to_string(),
        );
    }

    ValidationReport {
        config: *cfg,
        outcomes,
        comparison,
        pekeris_error,
        convergence,
        drift_deltas,
        discrepancies,
    }
}

impl ValidationReport {
    pub fn all_hard_passed(&self) -> bool {
        self.outcomes.iter().all(|o| !o.hard || o.passed)
    }

    /// First failing hard criterion, if any.
    pub fn failing_hard(&self) -> Option<&CriterionOutcome> {
        self.outcomes.iter().find(|o| o.hard && !o.passed)
    }

    /// Pekeris error table as CSV.
    pub fn pekeris_error_csv(&self) -> String {
        let mut out = String::from("ell,mu,n,E_oracle_exact,E_oracle_pekeris,rel_gap\n");
        for (ell, mu, n, a, b, gap) in &self.pekeris_error {
            out.push_str(&format!(
                "{ell},{},{n},{},{},{}\n",
                crate::format_float(*mu),
                crate::format_float(*a),
                crate::format_float(*b),
                crate::format_float(*gap)
            ));
        }
        out
    }

    /// Convergence diagnostics as CSV.
    pub fn convergence_csv(&self) -> String {
        let mut out = String::from("case,level,coarse,medium,fine,richardson,order\n");
        for (label, level, c, m, f, r, o) in &self.convergence {
            out.push_str(&format!(
                "{label},{level},{},{},{},{},{}\n",
                crate::format_float(*c),
                crate::format_float(*m),
                crate::format_float(*f),
                crate::format_float(*r),
                crate::format_float(*o)
            ));
        }
        out
    }

    /// Human-readable report; deterministic, no timestamps.
    pub fn render_text(&self) -> String {
        let p = self.config.params;
        let mut out = String::new();
        out.push_str("== dunkl-deng-fan validation report ==\n\n");
        out.push_str(&format!(
            "parameters: De = {}, lambda = {}, re = {}, mass = {}\n",
            p.dissociation_energy, p.screening, p.equilibrium_distance, p.mass
        ));
        out.push_str(&format!(
            "convention: {:?}; oracle base grid: {} intervals; alpha9 draws: {}\n\n",
            self.config.convention, self.config.oracle_points, self.config.draws
        ));
        out.push_str("-- criteria --\n");
        for o in &self.outcomes {
            out.push_str(&format!(
                "[{}] [{}] {} ... {}\n      {}\n",
                o.id,
                if o.hard { "hard" } else { "info" },
                o.name,
                if o.passed { "PASS" } else { "FAIL" },
                o.details
            ));
        }
        let hard_total = self.outcomes.iter().filter(|o| o.hard).count();
        let hard_pass = self.outcomes.iter().filter(|o| o.hard && o.passed).count();
        let info_total = self.outcomes.iter().filter(|o| !o.hard).count();
        let info_pass = self.outcomes.iter().filter(|o| !o.hard && o.passed).count();
        out.push_str(&format!(
            "\n-- summary --\nhard criteria: {hard_pass}/{hard_total} passed\n\
             informational: {info_pass}/{info_total} within tolerance\n"
        ));
        out.push_str("\n-- measured discrepancies --\n");
        for d in &self.discrepancies {
            out.push_str(&format!("  * {d}\n"));
        }
        out.push_str("\n-- drift-convention sensitivity (self-consistent eps roots) --\n");
        out.push_str("  mu    n    eps(equal pair)      eps(mapped-ODE pair)\n");
        for (mu, n, a, b) in &self.drift_deltas {
            out.push_str(&format!(
                "  {:<5} {n}    {:<20} {:<20}\n",
                mu,
                crate::format_float(*a),
                crate::format_float(*b)
            ));
        }
        out.push_str(
            "\ntables: mode_comparison.csv, pekeris_error.csv, convergence.csv sit next to \
             this file when produced by `ddf validate`.\n",
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hard_criteria_pass_on_defaults() {
        let cfg = ValidationConfig {
            draws: 200, // keep the unit test quick; acceptance runs the full 1000
            ..ValidationConfig::default()
        };
        let report = run_validation(&cfg);
        for o in &report.outcomes {
            if o.hard {
                assert!(o.passed, "[{}] {} failed: {}", o.id, o.name, o.details);
            }
        }
        assert!(report.all_hard_passed());
        assert!(report.failing_hard().is_none());
    }

    #[test]
    fn informational_criteria_record_the_known_gaps() {
        let cfg = ValidationConfig {
            draws: 50,
            ..ValidationConfig::default()
        };
        let c5 = criterion_sc_vs_oracle(&cfg);
        assert!(!c5.passed, "C5 unexpectedly passed: {}", c5.details);
        let c6 = criterion_mode_agreement_mu0(&cfg);
        assert!(!c6.passed, "C6 unexpectedly passed: {}", c6.details);
    }

    #[test]
    fn report_text_is_deterministic() {
        let cfg = ValidationConfig {
            draws: 50,
            ..ValidationConfig::default()
        };
        let a = run_validation(&cfg).render_text();
        let b = run_validation(&cfg).render_text();
        assert_eq!(a, b);
        assert!(a.contains("measured discrepancies"));
    }

    #[test]
    fn coarse_oracle_grid_fails_box_criterion() {
        let cfg = ValidationConfig {
            oracle_points: 12,
            draws: 10,
            ..ValidationConfig::default()
        };
        let c7 = criterion_box_sanity(&cfg);
        assert!(!c7.passed, "coarse grid should fail, got: {}", c7.details);
    }
}
