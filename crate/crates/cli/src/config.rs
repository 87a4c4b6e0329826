//! Scenario files.
//!
//! ```toml
//! [geometry]
//! shape = "circle"          # or "polygon" with vertices = [[x, y], ...]
//! center = [0.0, 0.0]
//! radius = 1.0
//! max_seg_len = 0.1
//!
//! [object]
//! eps_r = 4.0               # mu_r = 1.0 and sigma = 0.0 by default
//!
//! [background]              # optional, vacuum by default
//!
//! [source]
//! frequencies = [300e6]     # Hz
//! incidence_deg = 0.0
//! amplitude = 1.0           # V/m
//!
//! [solver]                  # optional
//! alpha = 0.5
//! quadrature_order = 4
//!
//! [grid]                    # optional; centred on the geometry by default
//! extent = 4.0
//! spacing = 0.04
//!
//! [reference]               # optional
//! mode = "mie"              # "mie" | "none" | "file" (with path = "fields.csv")
//!
//! [output]
//! dir = "out/cylinder"
//! rcs_angles = 360
//!
//! [sweep]                   # for `dsa2d sweep`
//! parameter = "eps_r"       # or "frequency"
//! values = [1.1, 2.0, 4.0]
//!
//! [convergence]             # for `dsa2d convergence`
//! meshes = [0.2, 0.1, 0.05]
//! ```
//!
//! Unknown keys are rejected.

use dsa2d::solver::GridSpec;
use dsa2d::{CfieConfig, Contour, Medium, PlaneWave, Point, QuadratureRule};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub geometry: GeometrySpec,
    pub object: MediumSpec,
    #[serde(default)]
    pub background: MediumSpec,
    pub source: SourceSpec,
    #[serde(default)]
    pub solver: SolverSpec,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub reference: ReferenceSpec,
    #[serde(default)]
    pub output: OutputSpec,
    pub sweep: Option<SweepSpec>,
    pub convergence: Option<ConvergenceSpec>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase", deny_unknown_fields)]
pub enum GeometrySpec {
    Circle {
        #[serde(default)]
        center: [f64; 2],
        radius: f64,
        max_seg_len: f64,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
        max_seg_len: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumSpec {
    #[serde(default = "one")]
    pub eps_r: f64,
    #[serde(default = "one")]
    pub mu_r: f64,
    #[serde(default)]
    pub sigma: f64,
}

impl Default for MediumSpec {
    fn default() -> Self {
        Self {
            eps_r: 1.0,
            mu_r: 1.0,
            sigma: 0.0,
        }
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSpec {
    pub frequencies: Vec<f64>,
    #[serde(default)]
    pub incidence_deg: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    pub quadrature_order: Option<usize>,
}

impl Default for SolverSpec {
    fn default() -> Self {
        Self {
            alpha: default_alpha(),
            quadrature_order: None,
        }
    }
}

fn default_alpha() -> f64 {
    0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_extent")]
    pub extent: f64,
    #[serde(default = "default_spacing")]
    pub spacing: f64,
    pub center: Option<[f64; 2]>,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            extent: default_extent(),
            spacing: default_spacing(),
            center: None,
        }
    }
}

fn default_extent() -> f64 {
    4.0
}

fn default_spacing() -> f64 {
    0.04
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceMode {
    Mie,
    #[default]
    None,
    File,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceSpec {
    #[serde(default)]
    pub mode: ReferenceMode,
    /// A `fields.csv` written by `dsa2d solve` on the same grid.
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default = "default_angles")]
    pub rcs_angles: usize,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            dir: default_dir(),
            rcs_angles: default_angles(),
        }
    }
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_angles() -> usize {
    360
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    EpsR,
    Frequency,
}

impl SweepParameter {
    pub fn column(self) -> &'static str {
        match self {
            SweepParameter::EpsR => "eps_r",
            SweepParameter::Frequency => "frequency_hz",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceSpec {
    pub meshes: Vec<f64>,
}

/// Configuration problem tied to a field path such as `source.frequencies[1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

fn bad(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError {
        field: field.into(),
        message: message.into(),
    }
}

fn positive(field: &str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(bad(field, format!("must be a finite number > 0, got {v}")))
    }
}

fn medium_checks(field: &str, m: &MediumSpec) -> Result<(), ConfigError> {
    positive(&format!("{field}.eps_r"), m.eps_r)?;
    positive(&format!("{field}.mu_r"), m.mu_r)?;
    if !(m.sigma >= 0.0 && m.sigma.is_finite()) {
        return Err(bad(format!("{field}.sigma"), format!("must be >= 0, got {}", m.sigma)));
    }
    Ok(())
}

impl Scenario {
    /// Parses TOML text; syntax and schema errors carry line and column.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let scenario: Scenario = toml::from_str(text).map_err(|e| {
            let field = match e.span() {
                Some(span) => {
                    let line = text[..span.start].matches('\n').count() + 1;
                    format!("line {line}")
                }
                None => "config".to_string(),
            };
            bad(field, e.message().to_string())
        })?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad(path.display().to_string(), format!("cannot read: {e}")))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match &self.geometry {
            GeometrySpec::Circle {
                radius, max_seg_len, ..
            } => {
                positive("geometry.radius", *radius)?;
                positive("geometry.max_seg_len", *max_seg_len)?;
            }
            GeometrySpec::Polygon { vertices, max_seg_len } => {
                if vertices.len() < 3 {
                    return Err(bad("geometry.vertices", "need at least 3 vertices"));
                }
                positive("geometry.max_seg_len", *max_seg_len)?;
            }
        }
        medium_checks("object", &self.object)?;
        medium_checks("background", &self.background)?;
        if self.source.frequencies.is_empty() {
            return Err(bad("source.frequencies", "need at least one frequency"));
        }
        for (i, f) in self.source.frequencies.iter().enumerate() {
            positive(&format!("source.frequencies[{i}]"), *f)?;
        }
        positive("source.amplitude", self.source.amplitude)?;
        if !self.source.incidence_deg.is_finite() {
            return Err(bad("source.incidence_deg", "must be finite"));
        }
        if !(0.0..=1.0).contains(&self.solver.alpha) {
            return Err(bad("solver.alpha", format!("must lie in [0, 1], got {}", self.solver.alpha)));
        }
        if let Some(q) = self.solver.quadrature_order {
            if !(1..=64).contains(&q) {
                return Err(bad("solver.quadrature_order", format!("must lie in 1..=64, got {q}")));
            }
        }
        positive("grid.extent", self.grid.extent)?;
        positive("grid.spacing", self.grid.spacing)?;
        if self.output.rcs_angles == 0 {
            return Err(bad("output.rcs_angles", "must be >= 1"));
        }
        match self.reference.mode {
            ReferenceMode::Mie if !matches!(self.geometry, GeometrySpec::Circle { .. }) => {
                return Err(bad("reference.mode", "\"mie\" requires circle geometry"));
            }
            ReferenceMode::File if self.reference.path.is_none() => {
                return Err(bad("reference.path", "required when mode = \"file\""));
            }
            _ => {}
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(bad("sweep.values", "need at least one value"));
            }
            for (i, v) in sweep.values.iter().enumerate() {
                positive(&format!("sweep.values[{i}]"), *v)?;
            }
        }
        if let Some(conv) = &self.convergence {
            for (i, m) in conv.meshes.iter().enumerate() {
                positive(&format!("convergence.meshes[{i}]"), *m)?;
            }
        }
        Ok(())
    }

    /// Same scenario with a different maximum segment length.
    pub fn with_mesh(&self, mesh: f64) -> Self {
        let mut out = self.clone();
        match &mut out.geometry {
            GeometrySpec::Circle { max_seg_len, .. } | GeometrySpec::Polygon { max_seg_len, .. } => {
                *max_seg_len = mesh;
            }
        }
        out
    }

    pub fn contour(&self) -> dsa2d::Result<Contour> {
        match &self.geometry {
            GeometrySpec::Circle {
                center,
                radius,
                max_seg_len,
            } => Contour::circle(Point::new(center[0], center[1]), *radius, *max_seg_len),
            GeometrySpec::Polygon { vertices, max_seg_len } => {
                let v: Vec<Point> = vertices.iter().map(|p| Point::new(p[0], p[1])).collect();
                Contour::polygon(&v, *max_seg_len)
            }
        }
    }

    /// Centre and radius for the Mie reference.
    pub fn circle(&self) -> Option<(Point, f64)> {
        match &self.geometry {
            GeometrySpec::Circle { center, radius, .. } => Some((Point::new(center[0], center[1]), *radius)),
            GeometrySpec::Polygon { .. } => None,
        }
    }

    pub fn object_medium(&self) -> dsa2d::Result<Medium> {
        Medium::new(self.object.eps_r, self.object.mu_r, self.object.sigma)
    }

    pub fn background_medium(&self) -> dsa2d::Result<Medium> {
        Medium::new(self.background.eps_r, self.background.mu_r, self.background.sigma)
    }

    pub fn wave(&self, frequency: f64) -> dsa2d::Result<PlaneWave> {
        PlaneWave::new(self.source.amplitude, self.source.incidence_deg.to_radians(), frequency)
    }

    pub fn cfie(&self) -> CfieConfig {
        CfieConfig::with_alpha(self.solver.alpha)
    }

    pub fn rule(&self) -> QuadratureRule {
        self.solver
            .quadrature_order
            .map(QuadratureRule::with_order)
            .unwrap_or_default()
    }

    pub fn grid_spec(&self, contour: &Contour) -> GridSpec {
        let center = self
            .grid
            .center
            .map(|c| Point::new(c[0], c[1]))
            .unwrap_or_else(|| contour.centroid());
        GridSpec::square(center, self.grid.extent, self.grid.spacing)
    }
}
