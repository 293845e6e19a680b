//! End-to-end tests of the `ddf` binary: headers, pinned rows, determinism,
//! config precedence, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn ddf(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddf"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()))
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .expect("header line")
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|f| f.parse::<f64>().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    (header, rows)
}

#[test]
fn potential_default_grid_contract() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddf(&["potential", "--out", "pot.csv"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = read(&tmp.path().join("pot.csv"));
    assert!(text.starts_with("r,V_deng_fan,V_morse\n"));
    assert!(!text.contains('\r'));
    let (_, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 120);
    // monotone radius column
    for pair in rows.windows(2) {
        assert!(pair[0][0] < pair[1][0]);
    }
    // both wells are zero at r_e (row with r = 1.0)
    let at_re = rows.iter().find(|r| (r[0] - 1.0).abs() < 1e-15).unwrap();
    assert!(at_re[1].abs() < 1e-12 && at_re[2].abs() < 1e-12);
    // the 1/r^2 wall dominates the Morse curve at the first row
    assert!(rows[0][1] > rows[0][2]);
}

#[test]
fn potential_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    ddf(&["potential", "--out", "a.csv"], tmp.path());
    ddf(&["potential", "--out", "b.csv"], tmp.path());
    assert_eq!(read(&tmp.path().join("a.csv")), read(&tmp.path().join("b.csv")));
}

#[test]
fn spectrum_empty_request_has_single_row() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddf(
        &["spectrum", "--n-max", "0", "--ell-max", "0", "--out", "s.csv"],
        tmp.path(),
    );
    assert!(out.status.success());
    let text = read(&tmp.path().join("s.csv"));
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("n,ell,mu,mode,eps,E,flag\n"));
    assert!(text.contains(",paper,"));
}

#[test]
fn spectrum_reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let out = ddf(
            &["spectrum", "--mode", "self-consistent", "--ell-max", "1", "--out", name],
            tmp.path(),
        );
        assert!(out.status.success());
    }
    assert_eq!(read(&tmp.path().join("a.csv")), read(&tmp.path().join("b.csv")));
}

#[test]
fn sweep_mu_shape_and_monotonicity() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddf(&["sweep-mu", "--out", "sweep.csv"], tmp.path());
    assert!(out.status.success());
    let text = read(&tmp.path().join("sweep.csv"));
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["mu", "E_00", "E_10", "E_20"]);
    assert_eq!(rows.len(), 13); // 0 to 3 in steps of 0.25
    for col in 1..4 {
        for pair in rows.windows(2) {
            assert!(pair[0][col] < pair[1][col], "column {col} not increasing");
        }
    }
    // the mu = 0 row agrees with the spectrum command at mu = 0
    let out = ddf(&["spectrum", "--out", "spec.csv"], tmp.path());
    assert!(out.status.success());
    let (_, spec) = parse_csv(&read(&tmp.path().join("spec.csv")));
    for n in 0..3usize {
        let row = spec.iter().find(|r| r[0] as usize == n).unwrap();
        assert_eq!(row[5], rows[0][n + 1]);
    }
}

#[test]
fn sweep_mu_rejects_degenerate_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddf(&["sweep-mu", "--mu-step", "0", "--out", "x.csv"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    let out = ddf(
        &["sweep-mu", "--mu-min", "1", "--mu-max", "1.1", "--mu-step", "0.2", "--out", "x.csv"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wavefunction_density_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddf(&["wavefunction", "--out", "wf.csv"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = read(&tmp.path().join("wf.csv"));
    let (header, rows) = parse_csv(&text);
    assert_eq!(header, ["r", "density_mu0", "density_mu1p5", "density_mu3"]);

    // each column integrates to 1 by trapezoid on the emitted grid
    for col in 1..4 {
        let mut integral = 0.0;
        for pair in rows.windows(2) {
            integral += 0.5 * (pair[1][0] - pair[0][0]) * (pair[0][col] + pair[1][col]);
        }
        assert!(
            (integral - 1.0).abs() < 1e-6,
            "column {col} integrates to {integral}"
        );
    }

    // peak abscissa strictly increases across the three columns
    let argmax = |col: usize| {
        rows.iter()
            .max_by(|a, b| a[col].partial_cmp(&b[col]).unwrap())
            .unwrap()[0]
    };
    assert!(argmax(1) < argmax(2) && argmax(2) < argmax(3));

    // near-origin suppression: the first row decreases across columns
    assert!(rows[0][1] > rows[0][2] && rows[0][2] > rows[0][3]);
}

#[test]
fn wavefunction_rejects_oracle_mode() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddf(&["wavefunction", "--mode", "oracle", "--out", "wf.csv"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wavefunction_no_bound_state_exit_and_message() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddf(&["wavefunction", "--n", "40", "--out", "wf.csv"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("n = 40") && stderr.contains("ell = 0") && stderr.contains("mu = 0"),
        "message must name the quantum numbers: {stderr}");
}

#[test]
fn config_file_precedence() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("run.conf"),
        "# shallow well\nde = 10.0\nlambda = 0.5\n",
    )
    .unwrap();
    // config only: V(r_e/2) = de = 10
    let out = ddf(
        &["potential", "--config", "run.conf", "--out", "a.csv"],
        tmp.path(),
    );
    assert!(out.status.success());
    let (_, rows) = parse_csv(&read(&tmp.path().join("a.csv")));
    let half = rows.iter().find(|r| (r[0] - 0.5).abs() < 1e-12).unwrap();
    assert!((half[1] - 10.0).abs() < 1e-9);
    // flag overrides config
    let out = ddf(
        &["potential", "--config", "run.conf", "--de", "12", "--out", "b.csv"],
        tmp.path(),
    );
    assert!(out.status.success());
    let (_, rows) = parse_csv(&read(&tmp.path().join("b.csv")));
    let half = rows.iter().find(|r| (r[0] - 0.5).abs() < 1e-12).unwrap();
    assert!((half[1] - 12.0).abs() < 1e-9);
}

#[test]
fn bad_config_is_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("bad.conf"), "depth = 10\n").unwrap();
    let out = ddf(&["potential", "--config", "bad.conf"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown config key"));

    std::fs::write(tmp.path().join("bad2.conf"), "de = deep\n").unwrap();
    let out = ddf(&["potential", "--config", "bad2.conf"], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    // invalid physics is a config error before any output appears
    let out = ddf(&["spectrum", "--mu", "-0.6", "--out", "never.csv"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!tmp.path().join("never.csv").exists());
}

#[test]
fn unwritable_output_is_exit_3() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddf(
        &["potential", "--out", "missing_dir/pot.csv"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validate_coarse_grid_fails_with_exit_1() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddf(
        &["validate", "--oracle-points", "12", "--draws", "20", "--out", "val"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("C7"), "failing criterion must be named: {stderr}");
}
