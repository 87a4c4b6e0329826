//! Exterior scattering with the equivalent current `J_s = Y_s E`.
//!
//! In the equivalent problem the object is replaced by the background medium
//! and radiates through `J_s`. On the boundary the total field obeys
//!
//! ```text
//! E     = L J_s + E_inc        (E_z, continuous across the boundary)
//! Y E   = K J_s + H_inc        (tangential H, exterior limit)
//! ```
//!
//! with `L = -i w mu0 int G0` and `K = 1/2 - int dG0/dn_i`. The combined
//! field equation
//!
//! ```text
//! [a (I - L Y_s) + (1 - a) eta (Y - K Y_s)] E = a E_inc + (1 - a) eta H_inc
//! ```
//!
//! is free of the interior resonances of either row alone.

mod cfie;
mod exterior;
mod farfield;
mod fields;
mod incident;
mod metrics;

pub use cfie::{cfie_system, solve_cfie, CfieOutput};
pub use exterior::{assemble_k, assemble_k_y_hat, assemble_l, ExteriorOperators};
pub use farfield::{extinction_width, scattering_width, total_scattering_width};
pub use fields::{FieldGrid, GridSpec};
pub use incident::incident_boundary_fields;
pub use metrics::{error_metrics, rcs_relative_l2, ErrorMetrics};

use crate::geometry::{Contour, Point, Region};
use crate::medium::{angular_frequency, Medium};
use crate::operators::{differential_admittance, OperatorSet, QuadratureRule};
use crate::{CMatrix, CVector, Complex64, Error, Result};
use std::f64::consts::PI;

/// Unit-amplitude-scaled TM plane wave `E_z = E0 exp(-i k0 (x cos phi + y sin phi))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub amplitude: f64,
    /// Propagation direction in radians.
    pub angle: f64,
    pub frequency: f64,
}

impl PlaneWave {
    pub fn new(amplitude: f64, angle: f64, frequency: f64) -> Result<Self> {
        let w = Self {
            amplitude,
            angle,
            frequency,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.amplitude > 0.0 && self.amplitude.is_finite()) {
            return Err(Error::invalid(format!("amplitude must be > 0, got {}", self.amplitude)));
        }
        if !(self.frequency > 0.0 && self.frequency.is_finite()) {
            return Err(Error::invalid(format!("frequency must be > 0, got {}", self.frequency)));
        }
        if !self.angle.is_finite() {
            return Err(Error::invalid("incidence angle must be finite"));
        }
        Ok(())
    }

    pub fn omega(&self) -> f64 {
        angular_frequency(self.frequency)
    }

    pub fn direction(&self) -> Point {
        Point::new(self.angle.cos(), self.angle.sin())
    }

    pub fn field_at(&self, background: &Medium, p: Point) -> Complex64 {
        let k0 = background.wavenumber(self.omega());
        self.amplitude * (-Complex64::i() * k0 * self.direction().dot(p)).exp()
    }

    /// `H_t = (1/(i w mu)) dE/dn = -(k_hat . n) E / eta`.
    pub fn tangential_h_at(&self, background: &Medium, p: Point, normal: Point) -> Complex64 {
        let eta = background.impedance(self.omega());
        -self.direction().dot(normal) * self.field_at(background, p) / eta
    }
}

/// How fields outside the objects are reconstructed from boundary data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExteriorRepresentation {
    /// Radiation of the equivalent current, `-i w mu0 S0 J_s`. Exact zero
    /// for a null contrast; inherits the poles of `Y_hat` through `J_s`.
    #[default]
    EquivalentCurrent,
    /// Green representation `D0 E - i w mu0 S0 (Y E)` of the exterior
    /// field. Free of `Y_hat`; equal to the above in the continuum.
    Green,
}

/// Which admittance enters the magnetic-field row of the combined equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MfieBlock {
    /// `Y`, the object's own admittance; the correct choice.
    #[default]
    Object,
    /// `Y_hat`; reproduces the wrong-admittance failure mode.
    Background,
}

/// How the magnetic-field row forms `K Y_hat`.
///
/// `Y_hat = P_hat^-1 U_hat` has poles at the Dirichlet eigenfrequencies of
/// the background-filled contour. `K` annihilates their residues only in the
/// continuum, so the discrete product inherits the pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BackgroundProduct {
    /// `-N / (i w mu0)` from the hypersingular operator; pole-free.
    #[default]
    Regular,
    /// The matrix product `K Y_hat`.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfieConfig {
    /// Weight of the electric-field row, in `[0, 1]`.
    pub alpha: f64,
    pub mfie_block: MfieBlock,
    pub background_product: BackgroundProduct,
}

impl Default for CfieConfig {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            mfie_block: MfieBlock::Object,
            background_product: BackgroundProduct::Regular,
        }
    }
}

impl CfieConfig {
    pub fn with_alpha(alpha: f64) -> Self {
        Self {
            alpha,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::invalid(format!("alpha must lie in [0, 1], got {}", self.alpha)));
        }
        Ok(())
    }

    /// Background wave impedance used to balance the two rows.
    pub fn eta(&self, background: &Medium, omega: f64) -> Complex64 {
        background.impedance(omega)
    }
}

/// Solved boundary quantities of one object.
#[derive(Debug, Clone)]
pub struct BoundarySolution {
    pub contour: Contour,
    pub medium: Medium,
    /// Total `E_z` at the segment midpoints.
    pub e: CVector,
    /// Equivalent electric current `Y_s E`.
    pub j_s: CVector,
    /// Tangential `H` on the boundary, `Y E`.
    pub h_t: CVector,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveDiagnostics {
    pub unknowns: usize,
    pub condition_system: f64,
    pub residual_system: f64,
    /// Worst object-side condition estimate of `P`.
    pub condition_p: f64,
    /// Worst background-side condition estimate of `P_hat`.
    pub condition_p_hat: f64,
    /// Worst `||P Y - U|| / ||U||` over both media and all objects.
    pub residual_admittance: f64,
}

/// Boundary solution of a complete scene.
#[derive(Debug, Clone)]
pub struct Solution {
    pub objects: Vec<BoundarySolution>,
    pub background: Medium,
    pub wave: PlaneWave,
    pub rule: QuadratureRule,
    pub representation: ExteriorRepresentation,
    pub diagnostics: SolveDiagnostics,
}

#[derive(Debug, Clone)]
pub struct Scatterer {
    pub contour: Contour,
    pub medium: Medium,
}

/// Angles and 2D scattering width `sigma = 2 pi |F|^2 / E0^2` in metres.
#[derive(Debug, Clone, PartialEq)]
pub struct RcsCurve {
    pub angles: Vec<f64>,
    pub sigma: Vec<f64>,
    pub sigma_db: Vec<f64>,
}

/// Floor applied to `10 log10(sigma / 1 m)` for zero widths.
pub const DB_FLOOR: f64 = -200.0;

impl RcsCurve {
    pub fn from_sigma(angles: Vec<f64>, sigma: Vec<f64>) -> Self {
        let sigma_db = sigma
            .iter()
            .map(|&s| if s > 0.0 { (10.0 * s.log10()).max(DB_FLOOR) } else { DB_FLOOR })
            .collect();
        Self {
            angles,
            sigma,
            sigma_db,
        }
    }
}

/// `n` equally spaced angles on `[0, 2 pi)`.
pub fn uniform_angles(n: usize) -> Vec<f64> {
    (0..n).map(|i| 2.0 * PI * i as f64 / n as f64).collect()
}

#[derive(Debug, Clone)]
pub struct ScatteringProblem {
    pub scatterers: Vec<Scatterer>,
    pub background: Medium,
    pub wave: PlaneWave,
    pub config: CfieConfig,
    pub rule: QuadratureRule,
    pub representation: ExteriorRepresentation,
}

impl ScatteringProblem {
    pub fn single(contour: Contour, object: Medium, background: Medium, wave: PlaneWave) -> Self {
        Self {
            scatterers: vec![Scatterer {
                contour,
                medium: object,
            }],
            background,
            wave,
            config: CfieConfig::default(),
            rule: QuadratureRule::default(),
            representation: ExteriorRepresentation::default(),
        }
    }

    pub fn with_representation(mut self, representation: ExteriorRepresentation) -> Self {
        self.representation = representation;
        self
    }

    pub fn with_config(mut self, config: CfieConfig) -> Self {
        self.config = config;
        self
    }

    pub fn with_rule(mut self, rule: QuadratureRule) -> Self {
        self.rule = rule;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.scatterers.is_empty() {
            return Err(Error::invalid("no scatterers"));
        }
        self.wave.validate()?;
        self.config.validate()?;
        self.rule.validate()?;
        self.background.validate()?;
        for (i, a) in self.scatterers.iter().enumerate() {
            a.medium.validate()?;
            a.contour.check_invariants()?;
            for b in &self.scatterers[i + 1..] {
                if a.contour.overlaps(&b.contour) {
                    return Err(Error::Geometry(format!("scatterer {i} overlaps another scatterer")));
                }
            }
        }
        Ok(())
    }

    /// Per-object operator sets (admittances and background layers).
    pub fn operator_sets(&self) -> Result<Vec<OperatorSet>> {
        self.validate()?;
        let omega = self.wave.omega();
        self.scatterers
            .iter()
            .map(|s| differential_admittance(&s.contour, &s.medium, &self.background, omega, self.rule))
            .collect()
    }

    pub fn solve(&self) -> Result<Solution> {
        let ops = self.operator_sets()?;
        self.solve_with(&ops)
    }

    /// Solves with operator sets computed beforehand (e.g. to sweep `alpha`).
    pub fn solve_with(&self, ops: &[OperatorSet]) -> Result<Solution> {
        self.validate()?;
        if ops.len() != self.scatterers.len() {
            return Err(Error::invalid("one operator set per scatterer required"));
        }
        let contours: Vec<&Contour> = self.scatterers.iter().map(|s| &s.contour).collect();
        let ext = ExteriorOperators::assemble(&contours, ops, &self.background, self.wave.omega(), self.rule)?;
        let (e_inc, h_inc) = concat_incident(&contours, &self.wave, &self.background);
        let out = solve_cfie(ops, &ext, &self.config, &self.background, &e_inc, &h_inc)?;

        let mut objects = Vec::with_capacity(ops.len());
        let mut offset = 0;
        for (s, op) in self.scatterers.iter().zip(ops) {
            let n = s.contour.len();
            let e = out.e.rows(offset, n).into_owned();
            let j_s = out.j_s.rows(offset, n).into_owned();
            let h_t = &op.y * &e;
            objects.push(BoundarySolution {
                contour: s.contour.clone(),
                medium: s.medium,
                e,
                j_s,
                h_t,
            });
            offset += n;
        }
        let diagnostics = SolveDiagnostics {
            unknowns: offset,
            condition_system: out.condition,
            residual_system: out.residual,
            condition_p: ops.iter().map(|o| o.condition_p).fold(0.0, f64::max),
            condition_p_hat: ops.iter().map(|o| o.condition_p_hat).fold(0.0, f64::max),
            residual_admittance: ops
                .iter()
                .map(|o| o.residual_y.max(o.residual_y_hat))
                .fold(0.0, f64::max),
        };
        Ok(Solution {
            objects,
            background: self.background,
            wave: self.wave,
            rule: self.rule,
            representation: self.representation,
            diagnostics,
        })
    }
}

fn concat_incident(contours: &[&Contour], wave: &PlaneWave, background: &Medium) -> (CVector, CVector) {
    let mut e = Vec::new();
    let mut h = Vec::new();
    for c in contours {
        let (ei, hi) = incident_boundary_fields(c, wave, background);
        e.extend(ei.iter());
        h.extend(hi.iter());
    }
    (CVector::from_vec(e), CVector::from_vec(h))
}

/// Block-diagonal matrix from square blocks.
pub(crate) fn block_diagonal<'a>(blocks: impl Iterator<Item = &'a CMatrix> + Clone) -> CMatrix {
    let n: usize = blocks.clone().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        let m = b.nrows();
        out.view_mut((off, off), (m, m)).copy_from(b);
        off += m;
    }
    out
}

impl Solution {
    pub fn omega(&self) -> f64 {
        self.wave.omega()
    }

    pub fn k0(&self) -> Complex64 {
        self.background.wavenumber(self.omega())
    }

    /// Region of `p` and, for interior points, the owning object.
    pub fn classify(&self, p: Point) -> (Region, Option<usize>) {
        let mut owner = None;
        for (i, o) in self.objects.iter().enumerate() {
            if o.contour.is_near_boundary(p) {
                return (Region::NearBoundary, o.contour.contains(p).then_some(i));
            }
            if owner.is_none() && o.contour.contains(p) {
                owner = Some(i);
            }
        }
        match owner {
            Some(i) => (Region::Interior, Some(i)),
            None => (Region::Exterior, None),
        }
    }

    pub fn all_currents(&self) -> CVector {
        let v: Vec<Complex64> = self.objects.iter().flat_map(|o| o.j_s.iter().copied()).collect();
        CVector::from_vec(v)
    }
}
