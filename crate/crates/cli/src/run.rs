//! The `solve`, `sweep` and `convergence` commands.

use crate::config::{ReferenceMode, Scenario, SweepParameter};
use crate::output::{num, write_json, CsvTable};
use dsa2d::solver::{error_metrics, rcs_relative_l2, uniform_angles, ErrorMetrics, FieldGrid, RcsCurve};
use dsa2d::{Complex64, MieSolution, Point, Region, ScatteringProblem, Solution};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug)]
pub enum CliError {
    Config(crate::config::ConfigError),
    Solver { context: String, source: dsa2d::Error },
    Io { path: PathBuf, source: std::io::Error },
    Reference(String),
    /// Acceptance criteria that failed, by number.
    Acceptance(Vec<u32>),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Solver { .. } => "solver",
            CliError::Io { .. } => "io",
            CliError::Reference(_) => "reference",
            CliError::Acceptance(_) => "acceptance",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.kind(), "message": self.to_string() });
        match self {
            CliError::Config(c) => v["field"] = json!(c.field),
            CliError::Solver { source, .. } => v["solver_error"] = json!(source.kind()),
            CliError::Io { path, .. } => v["path"] = json!(path.display().to_string()),
            CliError::Reference(_) => {}
            CliError::Acceptance(ids) => v["failed"] = json!(ids),
        }
        v
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(c) => write!(f, "invalid configuration: {c}"),
            CliError::Solver { context, source } => write!(f, "{context}: {source}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Reference(m) => write!(f, "reference: {m}"),
            CliError::Acceptance(ids) => write!(f, "acceptance criteria failed: {ids:?}"),
        }
    }
}

impl From<crate::config::ConfigError> for CliError {
    fn from(e: crate::config::ConfigError) -> Self {
        CliError::Config(e)
    }
}

fn solver_err(context: impl Into<String>) -> impl FnOnce(dsa2d::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Solver { context, source }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// One solved frequency with its diagnostics and, if a reference exists,
/// its errors.
pub struct PointRun {
    pub frequency: f64,
    pub solution: Solution,
    pub grid: Option<FieldGrid>,
    pub rcs: RcsCurve,
    pub errors: Option<ReferenceErrors>,
    pub wall_time: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct ReferenceErrors {
    pub all: ErrorMetrics,
    pub exterior: Option<ErrorMetrics>,
    pub interior: Option<ErrorMetrics>,
    /// Scattering-width curve error, Mie references only.
    pub rcs_l2: Option<f64>,
}

/// Reference field values keyed by frequency, in grid order.
pub struct FileReference {
    rows: Vec<(f64, Point, Complex64)>,
}

impl FileReference {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::Reference(format!("{}: {e}", path.display())))?;
        let headers = reader
            .headers()
            .map_err(|e| CliError::Reference(e.to_string()))?
            .clone();
        let col = |name: &str| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| CliError::Reference(format!("{} lacks column {name}", path.display())))
        };
        let idx = [
            col("frequency_hz")?,
            col("x_m")?,
            col("y_m")?,
            col("re_E_V_per_m")?,
            col("im_E_V_per_m")?,
        ];
        let mut rows = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record = record.map_err(|e| CliError::Reference(e.to_string()))?;
            let mut v = [0.0; 5];
            for (slot, &i) in v.iter_mut().zip(&idx) {
                *slot = record
                    .get(i)
                    .and_then(|s| s.parse::<f64>().ok())
                    .ok_or_else(|| CliError::Reference(format!("{} row {}: bad number", path.display(), line + 2)))?;
            }
            rows.push((v[0], Point::new(v[1], v[2]), Complex64::new(v[3], v[4])));
        }
        Ok(Self { rows })
    }

    fn values(&self, frequency: f64, points: &[Point]) -> Result<Vec<Complex64>, CliError> {
        let picked: Vec<_> = self
            .rows
            .iter()
            .filter(|r| (r.0 - frequency).abs() <= 1e-9 * frequency)
            .collect();
        if picked.len() != points.len() {
            return Err(CliError::Reference(format!(
                "{} reference points at {frequency} Hz, grid has {}",
                picked.len(),
                points.len()
            )));
        }
        picked
            .iter()
            .zip(points)
            .map(|(r, p)| {
                if r.1.distance(*p) <= 1e-9 * (1.0 + p.norm()) {
                    Ok(r.2)
                } else {
                    Err(CliError::Reference(format!(
                        "reference point ({}, {}) does not match grid point ({}, {})",
                        r.1.x, r.1.y, p.x, p.y
                    )))
                }
            })
            .collect()
    }
}

fn subset_metrics(reference: &[Complex64], grid: &FieldGrid, region: Region) -> Option<ErrorMetrics> {
    let mask: Vec<bool> = grid.regions.iter().map(|r| *r != region).collect();
    error_metrics(reference, &grid.values, &mask).ok()
}

/// Solves one frequency. Field evaluation is skipped when `fields` is false
/// and no reference needs it.
pub fn run_point(
    scenario: &Scenario,
    frequency: f64,
    fields: bool,
    file_reference: Option<&FileReference>,
) -> Result<PointRun, CliError> {
    let start = Instant::now();
    let context = format!("at {frequency} Hz");
    let contour = scenario.contour().map_err(solver_err("geometry"))?;
    let object = scenario.object_medium().map_err(solver_err("object medium"))?;
    let background = scenario.background_medium().map_err(solver_err("background medium"))?;
    let wave = scenario.wave(frequency).map_err(solver_err(context.clone()))?;
    let grid_spec = scenario.grid_spec(&contour);
    let problem = ScatteringProblem::single(contour, object, background, wave)
        .with_config(scenario.cfie())
        .with_rule(scenario.rule());
    let solution = problem.solve().map_err(solver_err(context.clone()))?;
    let angles = uniform_angles(scenario.output.rcs_angles);
    let rcs = solution.rcs(&angles);

    let mode = scenario.reference.mode;
    let grid = if fields || mode != ReferenceMode::None {
        let points = grid_spec.points();
        Some(solution.total_field(&points).map_err(solver_err(context.clone()))?)
    } else {
        None
    };
    let errors = match (mode, &grid) {
        (ReferenceMode::Mie, Some(grid)) => {
            let (center, radius) = scenario
                .circle()
                .ok_or_else(|| CliError::Reference("Mie reference needs a circle".into()))?;
            let mie = MieSolution::new(center, radius, object, background, wave).map_err(solver_err(context.clone()))?;
            let reference = grid
                .points
                .par_iter()
                .map(|&p| mie.field(p))
                .collect::<dsa2d::Result<Vec<_>>>()
                .map_err(solver_err(context.clone()))?;
            let all = error_metrics(&reference, &grid.values, &grid.mask()).map_err(solver_err(context.clone()))?;
            let mie_sigma = mie.scattering_width(&angles).sigma;
            // relative error is undefined without scattering
            let rcs_l2 = if mie_sigma.iter().all(|s| *s == 0.0) {
                None
            } else {
                Some(rcs_relative_l2(&mie_sigma, &rcs.sigma).map_err(solver_err(context.clone()))?)
            };
            Some(ReferenceErrors {
                all,
                exterior: subset_metrics(&reference, grid, Region::Exterior),
                interior: subset_metrics(&reference, grid, Region::Interior),
                rcs_l2,
            })
        }
        (ReferenceMode::File, Some(grid)) => {
            let file = file_reference.ok_or_else(|| CliError::Reference("reference file not loaded".into()))?;
            let reference = file.values(frequency, &grid.points)?;
            let all = error_metrics(&reference, &grid.values, &grid.mask()).map_err(solver_err(context.clone()))?;
            Some(ReferenceErrors {
                all,
                exterior: subset_metrics(&reference, grid, Region::Exterior),
                interior: subset_metrics(&reference, grid, Region::Interior),
                rcs_l2: None,
            })
        }
        _ => None,
    };
    Ok(PointRun {
        frequency,
        solution,
        grid,
        rcs,
        errors,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

fn load_reference(scenario: &Scenario) -> Result<Option<FileReference>, CliError> {
    match (scenario.reference.mode, &scenario.reference.path) {
        (ReferenceMode::File, Some(path)) => Ok(Some(FileReference::load(path)?)),
        _ => Ok(None),
    }
}

fn metrics_json(m: Option<ErrorMetrics>) -> Value {
    match m {
        Some(m) => json!({ "max_rel": m.max_rel, "rms": m.rms, "points": m.count }),
        None => Value::Null,
    }
}

fn run_json(run: &PointRun) -> Value {
    let d = &run.solution.diagnostics;
    let mut v = json!({
        "frequency_hz": run.frequency,
        "unknowns": d.unknowns,
        "condition_system": d.condition_system,
        "condition_p": d.condition_p,
        "condition_p_hat": d.condition_p_hat,
        "residual_system": d.residual_system,
        "residual_admittance": d.residual_admittance,
        "extinction_width_m": run.solution.extinction_width(),
        "wall_time_s": run.wall_time,
    });
    if let Some(e) = &run.errors {
        v["max_rel"] = json!(e.all.max_rel);
        v["rms"] = json!(e.all.rms);
        v["exterior"] = metrics_json(e.exterior);
        v["interior"] = metrics_json(e.interior);
        v["rcs_l2"] = json!(e.rcs_l2);
    }
    v
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))
}

pub const BOUNDARY_HEADER: [&str; 8] = [
    "frequency_hz",
    "segment",
    "x_m",
    "y_m",
    "re_E_V_per_m",
    "im_E_V_per_m",
    "re_Js_A_per_m",
    "im_Js_A_per_m",
];
pub const FIELDS_HEADER: [&str; 7] = [
    "frequency_hz",
    "x_m",
    "y_m",
    "re_E_V_per_m",
    "im_E_V_per_m",
    "region",
    "mask",
];
pub const RCS_HEADER: [&str; 4] = ["frequency_hz", "angle_deg", "sigma_m", "sigma_db"];

/// `dsa2d solve`: boundary.csv, fields.csv, rcs.csv and summary.json.
pub fn cmd_solve(scenario: &Scenario, out: &Path) -> Result<Value, CliError> {
    let start = Instant::now();
    ensure_dir(out)?;
    let reference = load_reference(scenario)?;
    let runs = scenario
        .source
        .frequencies
        .iter()
        .map(|&f| run_point(scenario, f, true, reference.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;

    let path = out.join("boundary.csv");
    let mut table = CsvTable::create(&path, &BOUNDARY_HEADER).map_err(io_err(&path))?;
    for run in &runs {
        let o = &run.solution.objects[0];
        for (i, seg) in o.contour.segments().iter().enumerate() {
            table
                .row(&[
                    num(run.frequency),
                    i.to_string(),
                    num(seg.midpoint.x),
                    num(seg.midpoint.y),
                    num(o.e[i].re),
                    num(o.e[i].im),
                    num(o.j_s[i].re),
                    num(o.j_s[i].im),
                ])
                .map_err(io_err(&path))?;
        }
    }
    table.finish().map_err(io_err(&path))?;

    let path = out.join("fields.csv");
    let mut table = CsvTable::create(&path, &FIELDS_HEADER).map_err(io_err(&path))?;
    for run in &runs {
        let Some(grid) = &run.grid else { continue };
        for ((p, v), region) in grid.points.iter().zip(&grid.values).zip(&grid.regions) {
            let masked = *region == Region::NearBoundary;
            table
                .row(&[
                    num(run.frequency),
                    num(p.x),
                    num(p.y),
                    num(v.re),
                    num(v.im),
                    region.as_str().to_string(),
                    u8::from(masked).to_string(),
                ])
                .map_err(io_err(&path))?;
        }
    }
    table.finish().map_err(io_err(&path))?;

    let path = out.join("rcs.csv");
    let mut table = CsvTable::create(&path, &RCS_HEADER).map_err(io_err(&path))?;
    for run in &runs {
        for ((a, s), db) in run.rcs.angles.iter().zip(&run.rcs.sigma).zip(&run.rcs.sigma_db) {
            table
                .row(&[num(run.frequency), num(a.to_degrees()), num(*s), num(*db)])
                .map_err(io_err(&path))?;
        }
    }
    table.finish().map_err(io_err(&path))?;

    let summary = json!({
        "command": "solve",
        "alpha": scenario.solver.alpha,
        "reference": format!("{:?}", scenario.reference.mode).to_lowercase(),
        "runs": runs.iter().map(run_json).collect::<Vec<_>>(),
        "wall_time_s": start.elapsed().as_secs_f64(),
    });
    let path = out.join("summary.json");
    write_json(&path, &summary).map_err(io_err(&path))?;
    Ok(summary)
}

pub const SWEEP_TAIL: [&str; 9] = [
    "status",
    "unknowns",
    "rms",
    "max_rel",
    "rcs_l2",
    "condition_system",
    "condition_p",
    "condition_p_hat",
    "message",
];

/// `dsa2d sweep`: one row per value. A permittivity sweep runs at the first
/// configured frequency. Failing points are recorded in their row.
pub fn cmd_sweep(scenario: &Scenario, out: &Path) -> Result<Value, CliError> {
    let sweep = scenario
        .sweep
        .as_ref()
        .ok_or_else(|| crate::config::ConfigError {
            field: "sweep".into(),
            message: "missing [sweep] section".into(),
        })?;
    ensure_dir(out)?;
    let reference = load_reference(scenario)?;
    let frequency = scenario.source.frequencies[0];
    let results: Vec<(f64, f64, Result<PointRun, CliError>)> = sweep
        .values
        .par_iter()
        .map(|&value| {
            let mut point = scenario.clone();
            let f = match sweep.parameter {
                SweepParameter::EpsR => {
                    point.object.eps_r = value;
                    frequency
                }
                SweepParameter::Frequency => value,
            };
            if sweep.parameter == SweepParameter::EpsR && scenario.reference.mode == ReferenceMode::File {
                let err = CliError::Reference("a file reference cannot follow a permittivity sweep".into());
                return (value, f, Err(err));
            }
            (value, f, run_point(&point, f, false, reference.as_ref()))
        })
        .collect();

    let path = out.join("sweep.csv");
    let mut header = vec![sweep.parameter.column()];
    if sweep.parameter == SweepParameter::EpsR {
        header.push("frequency_hz");
    }
    header.extend(SWEEP_TAIL);
    let mut table = CsvTable::create(&path, &header).map_err(io_err(&path))?;
    let mut rows = Vec::new();
    let nan = num(f64::NAN);
    for (value, f, result) in &results {
        let mut row = vec![num(*value)];
        if sweep.parameter == SweepParameter::EpsR {
            row.push(num(*f));
        }
        match result {
            Ok(run) => {
                let d = &run.solution.diagnostics;
                let (rms, max_rel, rcs_l2) = match &run.errors {
                    Some(e) => (e.all.rms, e.all.max_rel, e.rcs_l2.unwrap_or(f64::NAN)),
                    None => (f64::NAN, f64::NAN, f64::NAN),
                };
                row.extend([
                    "ok".to_string(),
                    d.unknowns.to_string(),
                    num(rms),
                    num(max_rel),
                    num(rcs_l2),
                    num(d.condition_system),
                    num(d.condition_p),
                    num(d.condition_p_hat),
                    String::new(),
                ]);
                let mut j = run_json(run);
                j["value"] = json!(value);
                rows.push(j);
            }
            Err(e) => {
                row.extend([
                    "error".to_string(),
                    String::new(),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    e.to_string(),
                ]);
                rows.push(json!({ "value": value, "error": e.to_json() }));
            }
        }
        table.row(&row).map_err(io_err(&path))?;
    }
    table.finish().map_err(io_err(&path))?;
    let summary = json!({
        "command": "sweep",
        "parameter": sweep.parameter.column(),
        "points": rows,
        "failed": results.iter().filter(|r| r.2.is_err()).count(),
    });
    let path = out.join("summary.json");
    write_json(&path, &summary).map_err(io_err(&path))?;
    Ok(summary)
}

/// `dsa2d convergence`: error against the reference per mesh, or, without a
/// Mie reference, successive differences between consecutive meshes.
pub fn cmd_convergence(scenario: &Scenario, out: &Path) -> Result<Value, CliError> {
    let meshes = scenario
        .convergence
        .as_ref()
        .map(|c| c.meshes.clone())
        .unwrap_or_default();
    if meshes.len() < 2 {
        return Err(crate::config::ConfigError {
            field: "convergence.meshes".into(),
            message: format!("need at least 2 mesh sizes, got {}", meshes.len()),
        }
        .into());
    }
    if !meshes.windows(2).all(|w| w[1] < w[0]) {
        return Err(crate::config::ConfigError {
            field: "convergence.meshes".into(),
            message: "mesh sizes must be strictly descending".into(),
        }
        .into());
    }
    ensure_dir(out)?;
    let frequency = scenario.source.frequencies[0];
    let use_mie = scenario.reference.mode == ReferenceMode::Mie;
    let mut base = scenario.clone();
    if !use_mie {
        base.reference.mode = ReferenceMode::None;
    }
    let runs = meshes
        .par_iter()
        .map(|&m| run_point(&base.with_mesh(m), frequency, true, None))
        .collect::<Result<Vec<_>, _>>()?;

    // error of row i: against Mie, or against the next finer mesh
    let errors: Vec<Option<ErrorMetrics>> = if use_mie {
        runs.iter().map(|r| r.errors.map(|e| e.all)).collect()
    } else {
        let mut v: Vec<Option<ErrorMetrics>> = runs
            .windows(2)
            .map(|w| {
                let (coarse, fine) = (w[0].grid.as_ref()?, w[1].grid.as_ref()?);
                let mask: Vec<bool> = coarse.mask().iter().zip(fine.mask()).map(|(a, b)| *a || b).collect();
                error_metrics(&fine.values, &coarse.values, &mask).ok()
            })
            .collect();
        v.push(None);
        v
    };
    let rms: Vec<f64> = errors.iter().flatten().map(|e| e.rms).collect();
    let strictly_decreasing = rms.windows(2).all(|w| w[1] < w[0]);

    let path = out.join("convergence.csv");
    let kind = if use_mie { "mie" } else { "successive_difference" };
    let mut table = CsvTable::create(
        &path,
        &["mesh_m", "unknowns", "error_kind", "rms", "max_rel", "decreased"],
    )
    .map_err(io_err(&path))?;
    let mut previous: Option<f64> = None;
    for (run, (mesh, err)) in runs.iter().zip(meshes.iter().zip(&errors)) {
        let (r, m) = err.map(|e| (e.rms, e.max_rel)).unwrap_or((f64::NAN, f64::NAN));
        let decreased = match (previous, err) {
            (Some(p), Some(e)) => (e.rms < p).to_string(),
            _ => String::new(),
        };
        if let Some(e) = err {
            previous = Some(e.rms);
        }
        table
            .row(&[
                num(*mesh),
                run.solution.diagnostics.unknowns.to_string(),
                kind.to_string(),
                num(r),
                num(m),
                decreased,
            ])
            .map_err(io_err(&path))?;
    }
    table.finish().map_err(io_err(&path))?;
    let summary = json!({
        "command": "convergence",
        "error_kind": kind,
        "meshes": meshes,
        "rms": rms,
        "strictly_decreasing": strictly_decreasing,
    });
    let path = out.join("summary.json");
    write_json(&path, &summary).map_err(io_err(&path))?;
    Ok(summary)
}
