//! Parametric Nikiforov–Uvarov machinery: the α-chain, the series-termination
//! (quantization) residual, the closed-form spectrum, self-consistent
//! root-found energies, and bound-state enumeration.
//!
//! Three spectrum modes coexist deliberately. `ClosedForm` evaluates the
//! published closed-form expression verbatim. `SelfConsistent` instead finds
//! the numerical root of the termination condition, making no use of the
//! algebraic shortcut the closed form relies on. `Oracle` delegates to the
//! finite-difference eigensolver. The modes disagree for this potential
//! class; [`crate::validate`] measures by how much.

use crate::model::{DunklParams, MolecularParams, QuantumNumbers};
use crate::pekeris::{map_to_hypergeometric, MappedCoefficients, PekerisCoefficients};
use crate::{Error, Result};
use std::fmt;

/// Residual magnitude at which a self-consistent root is accepted.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// Auxiliary parameters α₄…α₉ of the parametric reduction at one trial
/// energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaChain {
    pub alpha4: f64,
    pub alpha5: f64,
    pub alpha6: f64,
    pub alpha7: f64,
    pub alpha8: f64,
    /// Energy-independent; see [`alpha_chain`].
    pub alpha9: f64,
}

impl AlphaChain {
    /// The termwise sum α₆ + c₃α₇ + c₃²α₈. This is *not* the α₉ used by the
    /// solver: with the ξ sign conventions in force it evaluates to ¼ − β,
    /// whereas the spectral formulas are built on the energy-independent
    /// constant ¼ + β. The validation report tabulates both readings.
    pub fn termwise_sum(&self, c3: f64) -> f64 {
        self.alpha6 + c3 * self.alpha7 + c3 * c3 * self.alpha8
    }
}

/// Evaluates the α-chain at trial dimensionless energy `eps`.
///
/// α₄ = ½(1−c₁), α₅ = ½(c₂−2c₃), α₆ = α₅² + ξ₁, α₇ = 2α₄α₅ − ξ₂,
/// α₈ = α₄² + ξ₃. α₉ is taken as the energy-independent combination
/// (α₄+α₅)² + (ξ₂ − ξ₁ − ξ₃): the ε-slopes (−1, −2, −1) cancel exactly, and
/// for the default drift and Pekeris coefficients the value is ¼ + β, the
/// constant every downstream square root relies on.
pub fn alpha_chain(mc: &MappedCoefficients, eps: f64) -> AlphaChain {
    let a4 = 0.5 * (1.0 - mc.c1);
    let a5 = 0.5 * (mc.c2 - 2.0 * mc.c3);
    let a6 = a5 * a5 + mc.xi1(eps);
    let a7 = 2.0 * a4 * a5 - mc.xi2(eps);
    let a8 = a4 * a4 + mc.xi3(eps);
    let a45 = a4 + a5;
    // constant and slope parts combined separately: the slope combination is
    // exactly zero for the pinned (-1, -2, -1), so eps drops without rounding
    let combo_const = mc.xi2_const - mc.xi1_const - mc.xi3_const;
    let combo_slope = mc.xi2_eps - mc.xi1_eps - mc.xi3_eps;
    let a9 = a45 * a45 + combo_const + combo_slope * eps;
    AlphaChain {
        alpha4: a4,
        alpha5: a5,
        alpha6: a6,
        alpha7: a7,
        alpha8: a8,
        alpha9: a9,
    }
}

/// Left side of the series-termination condition
/// c₂n − (2n+1)α₅ + (2n+1)(√α₉ − c₃√α₈) + n(n−1)c₃ + α₇ + 2c₃α₈ + 2√(α₈α₉);
/// zero at an eigenvalue of the mapped equation.
///
/// Requires α₈(ε) ≥ 0 and α₉ ≥ 0 so both square roots are real.
pub fn quantization_residual(n: u32, eps: f64, mc: &MappedCoefficients) -> Result<f64> {
    let ch = alpha_chain(mc, eps);
    if ch.alpha8 < 0.0 {
        return Err(Error::ComplexExponent { alpha8: ch.alpha8 });
    }
    if ch.alpha9 < 0.0 {
        return Err(Error::ComplexExponent { alpha8: ch.alpha9 });
    }
    let nf = f64::from(n);
    let sqrt8 = ch.alpha8.sqrt();
    let sqrt9 = ch.alpha9.sqrt();
    Ok(mc.c2 * nf - (2.0 * nf + 1.0) * ch.alpha5
        + (2.0 * nf + 1.0) * (sqrt9 - mc.c3 * sqrt8)
        + nf * (nf - 1.0) * mc.c3
        + ch.alpha7
        + 2.0 * mc.c3 * ch.alpha8
        + 2.0 * (ch.alpha8 * ch.alpha9).sqrt())
}

/// How a spectrum is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMode {
    /// The closed-form expression, evaluated verbatim (CLI name `paper`).
    ClosedForm,
    /// Bracketed root of the termination condition (CLI name `self-consistent`).
    SelfConsistent,
    /// Finite-difference eigensolver (CLI name `oracle`).
    Oracle,
}

impl fmt::Display for SpectrumMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumMode::ClosedForm => "paper",
            SpectrumMode::SelfConsistent => "self-consistent",
            SpectrumMode::Oracle => "oracle",
        })
    }
}

/// Per-level classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFlag {
    /// Energy inside the physical window [0, D_e) with a positive decay
    /// exponent.
    Bound,
    /// Energy outside [0, D_e), or non-positive closed-form root K.
    Unbound,
    /// α₈ < 0 at this energy: the state's exponent is not real.
    ComplexExponent,
    /// No residual sign change in the trial bracket (self-consistent mode).
    NoRoot,
}

impl fmt::Display for StateFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateFlag::Bound => "bound",
            StateFlag::Unbound => "unbound",
            StateFlag::ComplexExponent => "complex-exponent",
            StateFlag::NoRoot => "no-root",
        })
    }
}

/// One computed level: dimensionless and physical energy plus its flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub eps: f64,
    pub energy: f64,
    pub flag: StateFlag,
}

fn window_flag(energy: f64, p: &MolecularParams) -> StateFlag {
    if energy >= 0.0 && energy < p.dissociation_energy {
        StateFlag::Bound
    } else {
        StateFlag::Unbound
    }
}

/// The closed-form root factor K entering the published spectrum:
/// K = [β − (2n+1)(μ+½) − n(n+1)] / [2(n + μ + ½ + √(μ² + γ_μ C₀))].
pub fn closed_form_k(
    n: u32,
    p: &MolecularParams,
    d: &DunklParams,
    c: &PekerisCoefficients,
) -> f64 {
    let beta = p.beta();
    let gamma = d.centrifugal_eigenvalue();
    let w2 = d.mu * d.mu + gamma * c.c0;
    let nf = f64::from(n);
    let numerator = beta - (2.0 * nf + 1.0) * (d.mu + 0.5) - nf * (nf + 1.0);
    let denominator = 2.0 * (nf + d.mu + 0.5 + w2.sqrt());
    numerator / denominator
}

/// Closed-form spectrum, evaluated verbatim with the standard Pekeris
/// coefficients: ε = (μ² + γ_μC₀) − K². The flag marks the level unbound when
/// E falls outside [0, D_e) or when K ≤ 0 (no decaying exponent).
pub fn energy_closed_form(q: QuantumNumbers, p: &MolecularParams, d: &DunklParams) -> EnergyLevel {
    energy_closed_form_with(q, p, d, &PekerisCoefficients::standard())
}

/// [`energy_closed_form`] with explicit Pekeris coefficients.
pub fn energy_closed_form_with(
    q: QuantumNumbers,
    p: &MolecularParams,
    d: &DunklParams,
    c: &PekerisCoefficients,
) -> EnergyLevel {
    let d = DunklParams { ell: q.ell, ..*d };
    let gamma = d.centrifugal_eigenvalue();
    let w2 = d.mu * d.mu + gamma * c.c0;
    let k = closed_form_k(q.n, p, &d, c);
    let eps = w2 - k * k;
    let energy = p.eps_to_energy(eps);
    let flag = if k <= 0.0 {
        StateFlag::Unbound
    } else {
        window_flag(energy, p)
    };
    EnergyLevel { eps, energy, flag }
}

/// Diagnostics of a self-consistent root search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootDiagnostics {
    /// Trial-energy bracket searched.
    pub bracket: (f64, f64),
    /// Bisection plus secant iterations spent.
    pub iterations: u32,
    /// Residual magnitude at the accepted root.
    pub residual: f64,
    /// |ε_root − ε_closed-form| for the same quantum numbers.
    pub closed_form_gap: f64,
}

/// A self-consistent level together with its solver diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfConsistentLevel {
    pub level: EnergyLevel,
    pub diagnostics: RootDiagnostics,
}

/// Finds ε with `quantization_residual(n, ε) = 0` by bracketed bisection on
/// ε ∈ (−β, μ² + γ_μC₀ − δ) — the upper end keeps α₈ ≥ 0 — followed by three
/// secant polish steps. Fails with [`Error::NoBoundState`] when the residual
/// does not change sign in the bracket.
pub fn energy_self_consistent(
    q: QuantumNumbers,
    p: &MolecularParams,
    d: &DunklParams,
) -> Result<SelfConsistentLevel> {
    energy_self_consistent_with(q, p, d, &PekerisCoefficients::standard())
}

/// [`energy_self_consistent`] with explicit Pekeris coefficients.
pub fn energy_self_consistent_with(
    q: QuantumNumbers,
    p: &MolecularParams,
    d: &DunklParams,
    c: &PekerisCoefficients,
) -> Result<SelfConsistentLevel> {
    let d = DunklParams { ell: q.ell, ..*d };
    let mc = map_to_hypergeometric(p, &d, c);
    let gamma = d.centrifugal_eigenvalue();
    let lo = -p.beta();
    let hi = d.mu * d.mu + gamma * c.c0 - 1e-14;
    let no_root = || Error::NoBoundState {
        n: q.n,
        ell: q.ell,
        mu: d.mu,
        detail: format!("no residual sign change in eps bracket ({lo:.6e}, {hi:.6e})"),
    };
    if !(hi > lo) {
        return Err(no_root());
    }
    let mut f_lo = quantization_residual(q.n, lo, &mc)?;
    let f_hi = quantization_residual(q.n, hi, &mc)?;
    if f_lo == 0.0 {
        f_lo = -0.0; // treat an exact endpoint hit as a sign change
    }
    if f_lo * f_hi > 0.0 {
        return Err(no_root());
    }

    let (mut a, mut b, mut fa) = (lo, hi, f_lo);
    let mut iterations = 0u32;
    let mut root = 0.5 * (a + b);
    let mut f_root = quantization_residual(q.n, root, &mc)?;
    while f_root.abs() > RESIDUAL_TOL && iterations < 200 {
        if fa * f_root <= 0.0 {
            b = root;
        } else {
            a = root;
            fa = f_root;
        }
        root = 0.5 * (a + b);
        f_root = quantization_residual(q.n, root, &mc)?;
        iterations += 1;
        if b - a < f64::EPSILON * (a.abs().max(b.abs()) + 1.0) {
            break;
        }
    }

    // Secant polish from the final bracket.
    let (mut x0, mut f0) = (a, quantization_residual(q.n, a, &mc)?);
    let (mut x1, mut f1) = (root, f_root);
    for _ in 0..3 {
        if (f1 - f0).abs() < f64::MIN_POSITIVE {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !(x2 > lo && x2 < hi) {
            break;
        }
        let f2 = quantization_residual(q.n, x2, &mc)?;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        iterations += 1;
        if f1.abs() < f_root.abs() {
            root = x1;
            f_root = f1;
        }
    }

    let energy = p.eps_to_energy(root);
    let closed = energy_closed_form_with(q, p, &d, c);
    Ok(SelfConsistentLevel {
        level: EnergyLevel {
            eps: root,
            energy,
            flag: window_flag(energy, p),
        },
        diagnostics: RootDiagnostics {
            bracket: (lo, hi),
            iterations,
            residual: f_root.abs(),
            closed_form_gap: (root - closed.eps).abs(),
        },
    })
}

/// Largest N such that every n < N has a positive closed-form root factor
/// K > 0, i.e. a real, decaying exponent √α₈ = K. This is the count that
/// gates wavefunction construction.
pub fn normalizable_state_count(p: &MolecularParams, d: &DunklParams) -> u32 {
    let c = PekerisCoefficients::standard();
    let mut n = 0u32;
    while n < 10_000 {
        if closed_form_k(n, p, d, &c) <= 0.0 {
            break;
        }
        n += 1;
    }
    n
}

/// Largest N such that every n < N is flagged `Bound` in the selected mode
/// (energy inside [0, D_e) and, for the closed form, K > 0). Stricter than
/// [`normalizable_state_count`]: for deep wells the closed form places every
/// level below the window, making this count zero while normalizable states
/// still exist.
pub fn bound_state_count(p: &MolecularParams, d: &DunklParams, mode: SpectrumMode) -> u32 {
    match mode {
        SpectrumMode::ClosedForm => {
            let mut n = 0u32;
            while n < 10_000 {
                let lvl = energy_closed_form(QuantumNumbers::new(n, d.ell), p, d);
                if lvl.flag != StateFlag::Bound {
                    break;
                }
                n += 1;
            }
            n
        }
        SpectrumMode::SelfConsistent => {
            let mut n = 0u32;
            while n < 10_000 {
                match energy_self_consistent(QuantumNumbers::new(n, d.ell), p, d) {
                    Ok(lvl) if lvl.level.flag == StateFlag::Bound => n += 1,
                    _ => break,
                }
            }
            n
        }
        SpectrumMode::Oracle => {
            let mut want = 16usize;
            loop {
                let prob = crate::oracle::OracleProblem::new(*p, *d,
                    crate::oracle::OracleVariant::ExactCentrifugal);
                let Ok(res) = crate::oracle::fd_eigensolve(&prob, want) else {
                    return 0;
                };
                let bound = res
                    .eigenvalues
                    .iter()
                    .take_while(|&&e| e >= 0.0 && e < p.dissociation_energy)
                    .count() as u32;
                if (bound as usize) < res.eigenvalues.len() || want >= 128 {
                    return bound;
                }
                want *= 2;
            }
        }
    }
}

/// One row of a spectrum table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub n: u32,
    pub ell: u32,
    pub mu: f64,
    pub mode: SpectrumMode,
    pub eps: f64,
    pub energy: f64,
    pub flag: StateFlag,
}

/// Deterministically ordered spectrum rows; failed rows are flagged, never
/// dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    /// CSV rendering with the fixed column set `n,ell,mu,mode,eps,E,flag`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,ell,mu,mode,eps,E,flag\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.n,
                row.ell,
                crate::format_float(row.mu),
                row.mode,
                crate::format_float(row.eps),
                crate::format_float(row.energy),
                row.flag
            ));
        }
        out
    }
}

/// Full table over n ≤ n_max, ℓ ≤ ell_max at the given Dunkl parameters,
/// sorted by (ℓ, n). Rows that cannot be computed carry `no-root` or
/// `complex-exponent` flags with NaN energies.
pub fn spectrum(
    p: &MolecularParams,
    d: &DunklParams,
    n_max: u32,
    ell_max: u32,
    mode: SpectrumMode,
) -> SpectrumTable {
    spectrum_with(p, d, n_max, ell_max, mode, &PekerisCoefficients::standard())
}

/// [`spectrum`] with explicit Pekeris coefficients (the oracle mode does not
/// use them: it discretizes the exact centrifugal factor).
pub fn spectrum_with(
    p: &MolecularParams,
    d: &DunklParams,
    n_max: u32,
    ell_max: u32,
    mode: SpectrumMode,
    c: &PekerisCoefficients,
) -> SpectrumTable {
    let mut rows = Vec::with_capacity(((n_max + 1) * (ell_max + 1)) as usize);
    for ell in 0..=ell_max {
        let d_ell = DunklParams { ell, ..*d };
        match mode {
            SpectrumMode::ClosedForm => {
                for n in 0..=n_max {
                    let lvl = energy_closed_form_with(QuantumNumbers::new(n, ell), p, &d_ell, c);
                    rows.push(SpectrumRow {
                        n,
                        ell,
                        mu: d.mu,
                        mode,
                        eps: lvl.eps,
                        energy: lvl.energy,
                        flag: lvl.flag,
                    });
                }
            }
            SpectrumMode::SelfConsistent => {
                for n in 0..=n_max {
                    let row = match energy_self_consistent_with(
                        QuantumNumbers::new(n, ell),
                        p,
                        &d_ell,
                        c,
                    )
                    {
                        Ok(sc) => SpectrumRow {
                            n,
                            ell,
                            mu: d.mu,
                            mode,
                            eps: sc.level.eps,
                            energy: sc.level.energy,
                            flag: sc.level.flag,
                        },
                        Err(Error::ComplexExponent { .. }) => SpectrumRow {
                            n,
                            ell,
                            mu: d.mu,
                            mode,
                            eps: f64::NAN,
                            energy: f64::NAN,
                            flag: StateFlag::ComplexExponent,
                        },
                        Err(_) => SpectrumRow {
                            n,
                            ell,
                            mu: d.mu,
                            mode,
                            eps: f64::NAN,
                            energy: f64::NAN,
                            flag: StateFlag::NoRoot,
                        },
                    };
                    rows.push(row);
                }
            }
            SpectrumMode::Oracle => {
                let prob = crate::oracle::OracleProblem::new(
                    *p,
                    d_ell,
                    crate::oracle::OracleVariant::ExactCentrifugal,
                );
                match crate::oracle::fd_eigensolve(&prob, (n_max + 1) as usize) {
                    Ok(res) => {
                        for n in 0..=n_max {
                            let energy = res.eigenvalues[n as usize];
                            rows.push(SpectrumRow {
                                n,
                                ell,
                                mu: d.mu,
                                mode,
                                eps: p.energy_to_eps(energy),
                                energy,
                                flag: window_flag(energy, p),
                            });
                        }
                    }
                    Err(_) => {
                        for n in 0..=n_max {
                            rows.push(SpectrumRow {
                                n,
                                ell,
                                mu: d.mu,
                                mode,
                                eps: f64::NAN,
                                energy: f64::NAN,
                                flag: StateFlag::NoRoot,
                            });
                        }
                    }
                }
            }
        }
    }
    SpectrumTable { rows }
}
