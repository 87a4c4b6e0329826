use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn dsa2d(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsa2d"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Value {
    let out = dsa2d(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("summary on stdout")
}

fn run_err(args: &[&str]) -> Value {
    let out = dsa2d(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    serde_json::from_slice(&out.stderr).expect("error JSON on stderr")
}

fn solve(config: &Path, out: &Path, extra: &[&str]) -> Value {
    let mut args = vec!["solve", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend(extra);
    run_ok(&args)
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn cylinder_solve_matches_mie_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    let summary = solve(&scenario("cylinder.toml"), &a, &[]);
    let run = &summary["runs"][0];
    assert_eq!(run["unknowns"], 63);
    assert!(run["max_rel"].as_f64().unwrap() <= 0.05, "{run}");
    assert!(run["residual_system"].as_f64().unwrap() <= 1e-10);

    solve(&scenario("cylinder.toml"), &b, &["--workers", "2"]);
    for file in ["boundary.csv", "fields.csv", "rcs.csv"] {
        let (x, y) = (std::fs::read(a.join(file)).unwrap(), std::fs::read(b.join(file)).unwrap());
        assert!(x == y, "{file} differs between runs");
    }

    let (header, rows) = read_csv(&a.join("fields.csv"));
    assert_eq!(header, ["frequency_hz", "x_m", "y_m", "re_E_V_per_m", "im_E_V_per_m", "region", "mask"]);
    assert!(rows.iter().any(|r| r[6] == "1") && rows.iter().any(|r| r[5] == "interior"));
    let (header, rows) = read_csv(&a.join("boundary.csv"));
    assert_eq!(header[6], "re_Js_A_per_m");
    assert_eq!(rows.len(), 63);
    let (header, rows) = read_csv(&a.join("rcs.csv"));
    assert_eq!(header, ["frequency_hz", "angle_deg", "sigma_m", "sigma_db"]);
    assert_eq!(rows.len(), 360);
    // 17 significant digits
    let mantissa = rows[1][2].split('e').next().unwrap().replace('.', "");
    assert_eq!(mantissa.trim_start_matches('-').len(), 17);
}

#[test]
fn null_contrast_leaves_the_exterior_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let summary = solve(&scenario("null_contrast.toml"), dir.path(), &[]);
    let run = &summary["runs"][0];
    assert!(run["exterior"]["rms"].as_f64().unwrap() <= 1e-9, "{run}");
    let (header, rows) = read_csv(&dir.path().join("boundary.csv"));
    for name in ["re_Js_A_per_m", "im_Js_A_per_m"] {
        assert!(column(&header, &rows, name).iter().all(|v| *v == 0.0));
    }
    let (header, rows) = read_csv(&dir.path().join("rcs.csv"));
    assert!(column(&header, &rows, "sigma_db").iter().all(|v| *v == -200.0));
}

#[test]
fn cuboid_runs_and_scatters_symmetrically() {
    let dir = tempfile::tempdir().unwrap();
    solve(&scenario("cuboid.toml"), dir.path(), &[]);
    let (header, rows) = read_csv(&dir.path().join("rcs.csv"));
    let sigma = column(&header, &rows, "sigma_m");
    let n = sigma.len();
    for i in 1..n {
        let (a, b) = (sigma[i], sigma[n - i]);
        assert!((a - b).abs() <= 1e-6 * a.max(b), "angle index {i}");
    }
}

#[test]
fn overrides_reach_the_solver() {
    let dir = tempfile::tempdir().unwrap();
    let summary = solve(
        &scenario("cylinder.toml"),
        dir.path(),
        &["--alpha", "1.0", "--quadrature-order", "8"],
    );
    assert_eq!(summary["alpha"], 1.0);
    assert!(summary["runs"][0]["max_rel"].as_f64().unwrap() < 0.1);
}

#[test]
fn permittivity_sweep_trend() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run_ok(&["sweep", "--config", scenario("permittivity_sweep.toml").to_str().unwrap(), "--out", out]);
    let (header, rows) = read_csv(&dir.path().join("sweep.csv"));
    assert_eq!(&header[..3], ["eps_r", "frequency_hz", "status"]);
    let rms = column(&header, &rows, "rms");
    assert_eq!(rms.len(), 5);
    assert!(rms.iter().all(|v| v.is_finite()));
    assert!(rms[0] < rms[4], "{rms:?}");
}

#[test]
fn frequency_sweep_scattering_width_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run_ok(&["sweep", "--config", scenario("frequency_sweep.toml").to_str().unwrap(), "--out", out]);
    let (header, rows) = read_csv(&dir.path().join("sweep.csv"));
    let l2 = column(&header, &rows, "rcs_l2");
    assert_eq!(l2.len(), 10);
    assert!(l2.iter().all(|v| *v <= 0.05), "{l2:?}");
}

const SMALL: &str = r#"
[geometry]
shape = "circle"
radius = 1.0
max_seg_len = 0.2

[object]
eps_r = 4.0

[source]
frequencies = [300e6]

[grid]
extent = 3.0
spacing = 0.1

[reference]
mode = "mie"
"#;

#[test]
fn single_point_sweep_equals_solve() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s.toml", &format!("{SMALL}\n[sweep]\nparameter = \"eps_r\"\nvalues = [4.0]\n"));
    let solved = solve(&config, &dir.path().join("solve"), &[]);
    let swept = run_ok(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().join("sweep").to_str().unwrap(),
    ]);
    for key in ["rms", "max_rel", "rcs_l2", "condition_system", "unknowns"] {
        assert_eq!(solved["runs"][0][key], swept["points"][0][key], "{key}");
    }
}

#[test]
fn failing_sweep_points_are_recorded_per_row() {
    let dir = tempfile::tempdir().unwrap();
    // the Mie series cannot converge at 2e11 Hz for a 1 m cylinder
    let config = write_config(
        dir.path(),
        "s.toml",
        &format!("{SMALL}\n[sweep]\nparameter = \"frequency\"\nvalues = [300e6, 2e11]\n"),
    );
    let summary = run_ok(&["sweep", "--config", config.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(summary["failed"], 1);
    let (header, rows) = read_csv(&dir.path().join("sweep.csv"));
    let status = header.iter().position(|h| h == "status").unwrap();
    assert_eq!(rows[0][status], "ok");
    assert_eq!(rows[1][status], "error");
    assert!(!rows[1].last().unwrap().is_empty());
}

#[test]
fn cylinder_convergence_is_strictly_decreasing() {
    let dir = tempfile::tempdir().unwrap();
    let summary = run_ok(&[
        "convergence",
        "--config",
        scenario("cylinder_convergence.toml").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(summary["strictly_decreasing"], true);
    let (header, rows) = read_csv(&dir.path().join("convergence.csv"));
    assert_eq!(column(&header, &rows, "mesh_m"), vec![0.2, 0.1, 0.05]);
}

#[test]
fn cuboid_self_convergence() {
    let dir = tempfile::tempdir().unwrap();
    let summary = run_ok(&[
        "convergence",
        "--config",
        scenario("cuboid_convergence.toml").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(summary["error_kind"], "successive_difference");
    let rms = summary["rms"][0].as_f64().unwrap();
    assert!(rms <= 0.03, "{rms}");
}

#[test]
fn convergence_needs_two_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "c.toml", &format!("{SMALL}\n[convergence]\nmeshes = [0.1]\n"));
    let err = run_err(&["convergence", "--config", config.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(err["error"], "config");
    assert_eq!(err["field"], "convergence.meshes");
}

#[test]
fn config_errors_are_reported_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "bad.toml", &SMALL.replace("eps_r = 4.0", "eps_r = 4.0\ncolour = 1"));
    let err = run_err(&["solve", "--config", config.to_str().unwrap()]);
    assert_eq!(err["error"], "config");
    assert!(err["message"].as_str().unwrap().contains("colour"));
    assert!(err["field"].as_str().unwrap().starts_with("line "));

    let err = run_err(&["solve", "--config", config.to_str().unwrap(), "--alpha", "2"]);
    assert_eq!(err["error"], "config");

    let missing = dir.path().join("missing.toml");
    let err = run_err(&["solve", "--config", missing.to_str().unwrap()]);
    assert_eq!(err["error"], "config");
}
