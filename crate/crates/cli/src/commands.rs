//! The five subcommands. Each writes one CSV file (or, for `validate`, a
//! directory of tables plus a text report) with fixed headers, 12-significant-
//! digit scientific floats, and LF newlines.

use crate::config::FileSettings;
use crate::{CliError, ModeArg, SharedArgs};
use std::path::{Path, PathBuf};

use dunkl_deng_fan::format_float;
use dunkl_deng_fan::model::{
    deng_fan_potential, morse_potential, morse_range_matched, CentrifugalConvention, DunklParams,
    MolecularParams, QuantumNumbers,
};
use dunkl_deng_fan::nu::{spectrum_with, SpectrumMode};
use dunkl_deng_fan::pekeris::PekerisCoefficients;
use dunkl_deng_fan::validate::{run_validation, ValidationConfig};
use dunkl_deng_fan::wavefunction::{QuadratureSpec, RadialState};

/// Everything shared across subcommands, resolved with flag > file > default
/// precedence and validated before any computation starts.
pub struct Context {
    pub params: MolecularParams,
    pub mu: f64,
    pub ell: u32,
    pub n_max: u32,
    pub ell_max: u32,
    pub mode: SpectrumMode,
    pub convention: CentrifugalConvention,
    pub weighted: bool,
    pub out: Option<PathBuf>,
    pub pekeris: PekerisCoefficients,
    pub file: FileSettings,
}

fn pick<T>(cli: Option<T>, file: Option<T>, default: T) -> T {
    cli.or(file).unwrap_or(default)
}

impl Context {
    pub fn resolve(shared: &SharedArgs) -> Result<Self, CliError> {
        let file = match &shared.config {
            Some(path) => FileSettings::load(path)?,
            None => FileSettings::default(),
        };
        let de = pick(shared.de, file.get_f64("de")?, 15.0);
        let lambda = pick(shared.lambda, file.get_f64("lambda")?, 0.5);
        let re = pick(shared.re, file.get_f64("re")?, 1.0);
        let mass = pick(shared.mass, file.get_f64("mass")?, 1.0);
        let params = MolecularParams::new(de, lambda, re, mass)
            .map_err(|e| CliError::config(e.to_string()))?;

        let mu = pick(shared.mu, file.get_f64("mu")?, 0.0);
        let ell = pick(shared.ell, file.get_u32("ell")?, 0);
        let convention: CentrifugalConvention = match shared.convention {
            Some(c) => c.into(),
            None => match file.get_str("convention") {
                Some("radial-eq") => CentrifugalConvention::RadialEquation,
                Some("results-sec") => CentrifugalConvention::ResultsSection,
                Some(other) => {
                    return Err(CliError::config(format!(
                        "config key `convention`: `{other}` is not radial-eq|results-sec"
                    )))
                }
                None => CentrifugalConvention::RadialEquation,
            },
        };
        // validate mu early; commands construct DunklParams per ell/mu later
        DunklParams::new(mu, ell, convention).map_err(|e| CliError::config(e.to_string()))?;

        let mode: SpectrumMode = match shared.mode {
            Some(m) => m.into(),
            None => match file.get_str("mode") {
                Some("paper") => ModeArg::Paper.into(),
                Some("self-consistent") => ModeArg::SelfConsistent.into(),
                Some("oracle") => ModeArg::Oracle.into(),
                Some(other) => {
                    return Err(CliError::config(format!(
                        "config key `mode`: `{other}` is not paper|self-consistent|oracle"
                    )))
                }
                None => ModeArg::Paper.into(),
            },
        };

        let weighted = if shared.unweighted {
            false
        } else if shared.weighted {
            true
        } else {
            file.get_bool("weighted")?.unwrap_or(true)
        };

        let pekeris = {
            let std = PekerisCoefficients::standard();
            let c0 = file.get_f64("pekeris-c0")?.unwrap_or(std.c0);
            let c1 = file.get_f64("pekeris-c1")?.unwrap_or(std.c1);
            let c2 = file.get_f64("pekeris-c2")?.unwrap_or(std.c2);
            if !(c0.is_finite() && c1.is_finite() && c2.is_finite()) {
                return Err(CliError::config("pekeris coefficients must be finite"));
            }
            PekerisCoefficients { c0, c1, c2 }
        };

        let out = shared
            .out
            .clone()
            .or_else(|| file.get_str("out").map(PathBuf::from));

        Ok(Self {
            params,
            mu,
            ell,
            n_max: pick(shared.n_max, file.get_u32("n-max")?, 2),
            ell_max: pick(shared.ell_max, file.get_u32("ell-max")?, 0),
            mode,
            convention,
            weighted,
            out,
            pekeris,
            file,
        })
    }

    fn dunkl(&self, mu: f64, ell: u32) -> Result<DunklParams, CliError> {
        DunklParams::new(mu, ell, self.convention).map_err(|e| CliError::config(e.to_string()))
    }

    fn out_path(&self, default_name: &str) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from(default_name))
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

/// `ddf potential`: columns `r,V_deng_fan,V_morse` with the Morse range
/// parameter fixed by curvature matching at the minimum. The default grid is
/// r_e·j/20 for j = 1..=120, which places r_e itself on the grid.
pub fn cmd_potential(
    ctx: &Context,
    points: Option<u32>,
    r_min: Option<f64>,
    r_max: Option<f64>,
) -> Result<(), CliError> {
    let p = ctx.params;
    let a = morse_range_matched(&p);
    let points = match points.map(Ok).or_else(|| ctx.file.get_u32("points").transpose()) {
        Some(v) => Some(v?),
        None => None,
    };
    let r_min = match r_min.map(Ok).or_else(|| ctx.file.get_f64("r-min").transpose()) {
        Some(v) => Some(v?),
        None => None,
    };
    let r_max = match r_max.map(Ok).or_else(|| ctx.file.get_f64("r-max").transpose()) {
        Some(v) => Some(v?),
        None => None,
    };
    let grid: Vec<f64> = match (points, r_min, r_max) {
        (None, None, None) => (1..=120)
            .map(|j| p.equilibrium_distance * j as f64 / 20.0)
            .collect(),
        (pts, lo, hi) => {
            let n = pts.unwrap_or(120).max(2);
            let lo = lo.unwrap_or(p.equilibrium_distance / 20.0);
            let hi = hi.unwrap_or(6.0 * p.equilibrium_distance);
            if !(lo > 0.0 && hi > lo) {
                return Err(CliError::config(format!(
                    "potential grid needs 0 < r-min < r-max, got [{lo}, {hi}]"
                )));
            }
            (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect()
        }
    };
    let mut csv = String::from("r,V_deng_fan,V_morse\n");
    for r in grid {
        let v_df = deng_fan_potential(r, &p).map_err(|e| CliError::config(e.to_string()))?;
        let v_mo = morse_potential(r, &p, a).map_err(|e| CliError::config(e.to_string()))?;
        csv.push_str(&format!(
            "{},{},{}\n",
            format_float(r),
            format_float(v_df),
            format_float(v_mo)
        ));
    }
    write_file(&ctx.out_path("potential.csv"), &csv)
}

/// `ddf spectrum`: columns `n,ell,mu,mode,eps,E,flag` over n ≤ n-max,
/// ℓ ≤ ell-max in the selected mode.
pub fn cmd_spectrum(ctx: &Context) -> Result<(), CliError> {
    let d = ctx.dunkl(ctx.mu, ctx.ell)?;
    let table = spectrum_with(
        &ctx.params,
        &d,
        ctx.n_max,
        ctx.ell_max,
        ctx.mode,
        &ctx.pekeris,
    );
    write_file(&ctx.out_path("spectrum.csv"), &table.to_csv())
}

/// `ddf sweep-mu`: columns `mu,E_00,E_10,E_20` over the μ grid (default
/// 0 to 3 in steps of 0.25) in the selected mode.
pub fn cmd_sweep_mu(
    ctx: &Context,
    mu_min: Option<f64>,
    mu_max: Option<f64>,
    mu_step: Option<f64>,
) -> Result<(), CliError> {
    let lo = match mu_min.map(Ok).or_else(|| ctx.file.get_f64("mu-min").transpose()) {
        Some(v) => v?,
        None => 0.0,
    };
    let hi = match mu_max.map(Ok).or_else(|| ctx.file.get_f64("mu-max").transpose()) {
        Some(v) => v?,
        None => 3.0,
    };
    let step = match mu_step.map(Ok).or_else(|| ctx.file.get_f64("mu-step").transpose()) {
        Some(v) => v?,
        None => 0.25,
    };
    if !(step > 0.0) || !(hi > lo) {
        return Err(CliError::config(format!(
            "sweep needs mu-min < mu-max and a positive step, got [{lo}, {hi}] step {step}"
        )));
    }
    let count = ((hi - lo) / step + 1.0 + 1e-9).floor() as usize;
    if count < 2 {
        return Err(CliError::config(
            "sweep grid must contain at least two mu values",
        ));
    }
    let mut csv = String::from("mu,E_00,E_10,E_20\n");
    for k in 0..count {
        let mu = lo + step * k as f64;
        let d = ctx.dunkl(mu, 0)?;
        let table = spectrum_with(&ctx.params, &d, 2, 0, ctx.mode, &ctx.pekeris);
        let mut fields = vec![format_float(mu)];
        for n in 0..3u32 {
            let row = table.rows.iter().find(|r| r.n == n && r.ell == 0);
            fields.push(format_float(row.map_or(f64::NAN, |r| r.energy)));
        }
        csv.push_str(&fields.join(","));
        csv.push('\n');
    }
    write_file(&ctx.out_path("sweep_mu.csv"), &csv)
}

fn mu_column_label(mu: f64) -> String {
    let mut s = format!("{mu}");
    if let Some(stripped) = s.strip_suffix(".0") {
        s = stripped.to_string();
    }
    format!("density_mu{}", s.replace('.', "p").replace('-', "m"))
}

/// `ddf wavefunction`: one density column per μ value (default 0, 1.5, 3)
/// for the selected state, normalized under the selected measure.
pub fn cmd_wavefunction(
    ctx: &Context,
    mu_values: Option<String>,
    n: Option<u32>,
    points: Option<u32>,
    r_max: Option<f64>,
) -> Result<(), CliError> {
    if ctx.mode == SpectrumMode::Oracle {
        return Err(CliError::config(
            "wavefunction supports --mode paper|self-consistent; oracle eigenfunctions are \
             grid vectors, not Jacobi-form states",
        ));
    }
    let mu_list: Vec<f64> = {
        let raw = mu_values
            .or_else(|| ctx.file.get_str("mu-values").map(str::to_string))
            .unwrap_or_else(|| "0,1.5,3".to_string());
        let mut list = Vec::new();
        for piece in raw.split(',') {
            let value: f64 = piece
                .trim()
                .parse()
                .map_err(|_| CliError::config(format!("bad mu value `{piece}` in mu-values")))?;
            list.push(value);
        }
        if list.is_empty() {
            return Err(CliError::config("mu-values must contain at least one value"));
        }
        list
    };
    let n = match n.map(Ok).or_else(|| ctx.file.get_u32("n").transpose()) {
        Some(v) => v?,
        None => 0,
    };
    let points = match points.map(Ok).or_else(|| ctx.file.get_u32("points").transpose()) {
        Some(v) => v?.max(16),
        None => 1200,
    };

    let p = ctx.params;
    let quad = QuadratureSpec::for_params(&p);
    let mut states = Vec::new();
    for &mu in &mu_list {
        let d = ctx.dunkl(mu, ctx.ell)?;
        let q = QuantumNumbers::new(n, ctx.ell);
        let weight = if ctx.weighted { 2.0 * mu + 1.0 } else { 0.0 };
        let built = match ctx.mode {
            SpectrumMode::ClosedForm => RadialState::closed_form(q, &p, &d),
            SpectrumMode::SelfConsistent => RadialState::self_consistent(q, &p, &d),
            SpectrumMode::Oracle => unreachable!("rejected above"),
        };
        let state = built
            .and_then(|s| s.normalized(&quad, weight))
            .map_err(|e| {
                CliError::validation(format!(
                    "no usable bound state at n = {n}, ell = {}, mu = {mu}: {e}",
                    ctx.ell
                ))
            })?;
        states.push(state);
    }

    let r_hi = match r_max.map(Ok).or_else(|| ctx.file.get_f64("r-max").transpose()) {
        Some(v) => v?,
        None => {
            // localization-scaled default: cover every state's peak plus tail
            states
                .iter()
                .map(|s| {
                    let w = if ctx.weighted { 2.0 * s.mu + 1.0 } else { 0.0 };
                    let (peak, width) = s.localization(w);
                    peak + 25.0 * width
                })
                .fold(2.0f64, f64::max)
        }
    };
    if !(r_hi > 0.0) {
        return Err(CliError::config(format!("r-max must be positive, got {r_hi}")));
    }

    // start just off the origin so the first row shows the near-origin
    // suppression instead of an identically-zero boundary value
    let r_lo = 1e-3 * p.equilibrium_distance;
    if !(r_hi > r_lo) {
        return Err(CliError::config(format!(
            "r-max must exceed {r_lo} (1e-3 r_e), got {r_hi}"
        )));
    }
    let mut csv = String::from("r");
    for &mu in &mu_list {
        csv.push(',');
        csv.push_str(&mu_column_label(mu));
    }
    csv.push('\n');
    for i in 0..points {
        let r = r_lo + (r_hi - r_lo) * i as f64 / (points - 1) as f64;
        let mut fields = vec![format_float(r)];
        for st in &states {
            fields.push(format_float(st.probability_density(r, ctx.weighted)));
        }
        csv.push_str(&fields.join(","));
        csv.push('\n');
    }
    write_file(&ctx.out_path("wavefunction.csv"), &csv)
}

/// `ddf validate`: runs the pipeline, writes `validation_report.txt`,
/// `mode_comparison.csv`, `pekeris_error.csv`, and `convergence.csv` into the
/// output directory, prints the report, and exits 0 iff all hard criteria
/// pass.
pub fn cmd_validate(
    ctx: &Context,
    oracle_points: Option<usize>,
    draws: Option<usize>,
) -> Result<(), CliError> {
    let oracle_points = match oracle_points
        .map(Ok)
        .or_else(|| ctx.file.get_usize("oracle-points").transpose())
    {
        Some(v) => v?,
        None => 2000,
    };
    let draws = match draws.map(Ok).or_else(|| ctx.file.get_usize("draws").transpose()) {
        Some(v) => v?,
        None => 1000,
    };
    if oracle_points < 8 {
        return Err(CliError::config("oracle-points must be at least 8"));
    }
    let cfg = ValidationConfig {
        params: ctx.params,
        convention: ctx.convention,
        oracle_points,
        draws: draws.max(1),
    };
    let report = run_validation(&cfg);

    let dir = ctx.out_path("validation");
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::io(format!("cannot create {}: {e}", dir.display())))?;
    let text = report.render_text();
    write_file(&dir.join("validation_report.txt"), &text)?;
    write_file(&dir.join("mode_comparison.csv"), &report.comparison.to_csv())?;
    write_file(&dir.join("pekeris_error.csv"), &report.pekeris_error_csv())?;
    write_file(&dir.join("convergence.csv"), &report.convergence_csv())?;
    print!("{text}");

    match report.failing_hard() {
        None => Ok(()),
        Some(fail) => Err(CliError::validation(format!(
            "hard criterion {} ({}) failed: {}",
            fail.id, fail.name, fail.details
        ))),
    }
}
