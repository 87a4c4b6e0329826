//! Boundary operators of the interior problem and the differential surface
//! admittance.
//!
//! With pulse basis functions and midpoint collocation, Green's second
//! identity on the boundary,
//!
//! ```text
//! E(r_i)/2 = sum_j [int_j G dl'] (i w mu) H_j - sum_j [int_j dG/dn' dl'] E_j,
//! ```
//!
//! becomes `P H = U E` with `P_ij = i w mu int_j G` and
//! `U_ij = delta_ij / 2 + int_j dG/dn'`. The admittance `Y = P^-1 U` maps
//! boundary `E_z` to tangential `H`, and `Y_s = Y - Y_hat` where `Y_hat` is the
//! same construction with the object medium replaced by the background.
//!
//! `G = -(i/4) H_0^(2)(k rho)`, the outgoing solution of
//! `(lap + k^2) G = -delta` under `e^{+iwt}`.

use crate::geometry::{Contour, Point, Segment};
use crate::linalg::{frobenius, relative_residual, LuFactor};
use crate::medium::Medium;
use crate::quadrature::GaussLegendre;
use crate::specfun::{self, EULER_GAMMA};
use crate::{CMatrix, Complex64, Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Condition estimate above which an admittance solve is rejected.
pub const SINGULAR_CONDITION: f64 = 1.0e14;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn green_interior(k: Complex64, r: Point, rp: Point) -> Result<Complex64> {
    let rho = r.distance(rp);
    if rho == 0.0 {
        return Err(specfun::DomainError::Singular.into());
    }
    Ok(-0.25 * I * specfun::hankel2(0, k * rho)?)
}

/// `dG/dn'` with respect to the source point `rp` along `normal_at_rp`:
/// `-(i k / 4) H_1^(2)(k rho) (rho_hat . n')`, `rho_hat = (r - rp) / rho`.
pub fn green_normal_derivative(
    k: Complex64,
    r: Point,
    rp: Point,
    normal_at_rp: Point,
) -> Result<Complex64> {
    let d = r - rp;
    let rho = d.norm();
    if rho == 0.0 {
        return Err(specfun::DomainError::Singular.into());
    }
    let cos = d.dot(normal_at_rp) / rho;
    if cos == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (_, h1) = specfun::hankel2_01(k * rho)?;
    Ok(-0.25 * I * k * h1 * cos)
}

/// Quadrature policy for segment integrals.
///
/// Source segments farther than `near_ratio` segment lengths from the target
/// use `order` points; closer ones use `near_order`, and targets within half
/// a segment length of the segment additionally split it into sub-panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureRule {
    pub order: usize,
    pub near_order: usize,
    pub near_ratio: f64,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self {
            order: 4,
            near_order: 16,
            near_ratio: 4.0,
        }
    }
}

impl QuadratureRule {
    pub fn with_order(order: usize) -> Self {
        Self {
            order,
            near_order: order.max(16),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 || self.near_order == 0 || self.order > 64 || self.near_order > 64 {
            return Err(Error::invalid(format!(
                "quadrature orders must lie in 1..=64 (got {}/{})",
                self.order, self.near_order
            )));
        }
        Ok(())
    }
}

/// Precomputed rules for one [`QuadratureRule`].
pub(crate) struct Quadrature {
    rule: QuadratureRule,
    far: GaussLegendre,
    near: GaussLegendre,
}

/// Sub-panels used for targets very close to a source segment.
const CLOSE_PANELS: usize = 4;

/// Relative slack on the distance thresholds. Uniform meshes put many
/// targets exactly on a threshold, and rounding must not pick different
/// rules for mirror-image pairs.
const THRESHOLD_SLACK: f64 = 1.0e-9;

impl Quadrature {
    pub(crate) fn new(rule: QuadratureRule) -> Self {
        Self {
            rule,
            far: GaussLegendre::new(rule.order),
            near: GaussLegendre::new(rule.near_order),
        }
    }

    /// Visits `(point, weight)` pairs covering `seg` for an off-segment target.
    pub(crate) fn for_each_node<F: FnMut(Point, f64)>(&self, seg: &Segment, target: Point, mut f: F) {
        let half = 0.5 * seg.length;
        let centre_dist = target.distance(seg.midpoint);
        if centre_dist >= self.rule.near_ratio * seg.length * (1.0 - THRESHOLD_SLACK) {
            for (s, w) in self.far.nodes_on(-half, half) {
                f(seg.at(s), w);
            }
        } else if seg.distance_to(target) >= 0.5 * seg.length * (1.0 - THRESHOLD_SLACK) {
            for (s, w) in self.near.nodes_on(-half, half) {
                f(seg.at(s), w);
            }
        } else {
            let width = seg.length / CLOSE_PANELS as f64;
            for p in 0..CLOSE_PANELS {
                let a = -half + p as f64 * width;
                for (s, w) in self.near.nodes_on(a, a + width) {
                    f(seg.at(s), w);
                }
            }
        }
    }
}

/// `int_seg G(|s|) ds` over a flat segment about its own midpoint.
///
/// The static part `-(1/2pi) ln rho` is integrated analytically; the smooth
/// remainder `G + (1/2pi) ln rho` by Gauss-Legendre on each half.
pub fn self_single_layer(k: Complex64, length: f64, rule: &GaussLegendre) -> Result<Complex64> {
    let half = 0.5 * length;
    let analytic = -(length * (half.ln() - 1.0)) / (2.0 * PI);
    let mut remainder = Complex64::new(0.0, 0.0);
    for (s, w) in rule.nodes_on(0.0, half) {
        let g = -0.25 * I * specfun::hankel2(0, k * s)?;
        remainder += w * (g + s.ln() / (2.0 * PI));
    }
    Ok(analytic + 2.0 * remainder)
}

/// Leading small-`kl` form of [`self_single_layer`].
pub fn self_single_layer_small_kl(k: Complex64, length: f64) -> Complex64 {
    let bracket = 1.0 - I * (2.0 / PI) * ((k * length / 4.0).ln() + EULER_GAMMA - 1.0);
    -0.25 * I * length * bracket
}

/// Boundary integral matrices of one medium on one contour.
#[derive(Debug, Clone)]
pub struct LayerMatrices {
    /// `S_ij = int_j G(r_i, r') dl'`.
    pub single: CMatrix,
    /// `D_ij = int_j dG/dn'(r_i, r') dl'`, zero on the diagonal.
    pub double: CMatrix,
    /// `D'_ij = int_j dG/dn_i(r_i, r') dl'`, zero on the diagonal.
    pub adjoint_double: CMatrix,
    /// `N_ij = d/dn_i int_j dG/dn' dl'` in the tangential-derivative form
    /// `d/ds_i [G(r_i, a_j) - G(r_i, b_j)] + k^2 (n_i . n_j) S_ij`, with
    /// `a_j`, `b_j` the start and end of segment `j`. Valid on closed
    /// source contours.
    pub hypersingular: CMatrix,
}

/// Collocation-row integrals for every segment pair of `contour`.
pub fn layer_matrices(contour: &Contour, k: Complex64, rule: QuadratureRule) -> Result<LayerMatrices> {
    layer_block(contour.segments(), contour.segments(), true, k, rule)
}

/// Integrals over `sources` collocated at the midpoints of `targets`. When
/// `same` is set the two lists are the same contour and the diagonal holds
/// the self terms.
pub fn layer_block(
    targets: &[Segment],
    sources: &[Segment],
    same: bool,
    k: Complex64,
    rule: QuadratureRule,
) -> Result<LayerMatrices> {
    rule.validate()?;
    let quad = Quadrature::new(rule);
    let (nr, nc) = (targets.len(), sources.len());
    let rows: Vec<Vec<[Complex64; 3]>> = (0..nr)
        .into_par_iter()
        .map(|i| {
            let target = targets[i].midpoint;
            let normal_i = targets[i].normal;
            sources
                .iter()
                .enumerate()
                .map(|(j, seg)| {
                    if same && i == j {
                        let s = self_single_layer(k, seg.length, &quad.near)?;
                        return Ok([s, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)]);
                    }
                    let mut acc = [Complex64::new(0.0, 0.0); 3];
                    let mut status = Ok(());
                    quad.for_each_node(seg, target, |rp, w| {
                        if status.is_err() {
                            return;
                        }
                        match kernel_values(k, target, rp) {
                            Ok((g, dg_drho, dir)) => {
                                acc[0] += w * g;
                                // d/dn' = -(rho_hat . n') d/drho
                                acc[1] -= w * dg_drho * dir.dot(seg.normal);
                                acc[2] += w * dg_drho * dir.dot(normal_i);
                            }
                            Err(e) => status = Err(e),
                        }
                    });
                    status.map(|_| acc)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let pick = |c: usize| CMatrix::from_fn(nr, nc, |i, j| rows[i][j][c]);
    let single = pick(0);
    let hypersingular = hypersingular_block(targets, sources, k, &single)?;
    Ok(LayerMatrices {
        single,
        double: pick(1),
        adjoint_double: pick(2),
        hypersingular,
    })
}

fn hypersingular_block(targets: &[Segment], sources: &[Segment], k: Complex64, single: &CMatrix) -> Result<CMatrix> {
    let k2 = k * k;
    let rows: Vec<Vec<Complex64>> = targets
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            sources
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    let (_, dg_a, dir_a) = kernel_values(k, t.midpoint, s.start)?;
                    let (_, dg_b, dir_b) = kernel_values(k, t.midpoint, s.end)?;
                    let tangential = dg_a * dir_a.dot(t.tangent) - dg_b * dir_b.dot(t.tangent);
                    Ok(tangential + k2 * t.normal.dot(s.normal) * single[(i, j)])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_fn(targets.len(), sources.len(), |i, j| rows[i][j]))
}

/// `(G, dG/drho, rho_hat)` between a target and a source point.
pub(crate) fn kernel_values(k: Complex64, r: Point, rp: Point) -> Result<(Complex64, Complex64, Point)> {
    let d = r - rp;
    let rho = d.norm();
    if rho == 0.0 {
        return Err(specfun::DomainError::Singular.into());
    }
    let (h0, h1) = specfun::hankel2_01(k * rho)?;
    let g = -0.25 * I * h0;
    // dH_0/dx = -H_1
    let dg = 0.25 * I * k * h1;
    Ok((g, dg, d * (1.0 / rho)))
}

/// `(int_j G dl', int_j dG/dn' dl')` for every segment, at an off-boundary point.
pub(crate) fn potential_row(
    contour: &Contour,
    k: Complex64,
    point: Point,
    quad: &Quadrature,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let segs = contour.segments();
    let mut single = Vec::with_capacity(segs.len());
    let mut double = Vec::with_capacity(segs.len());
    for seg in segs {
        let mut s = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        let mut status = Ok(());
        quad.for_each_node(seg, point, |rp, w| match kernel_values(k, point, rp) {
            Ok((g, dg, dir)) => {
                s += w * g;
                d -= w * dg * dir.dot(seg.normal);
            }
            Err(e) => status = Err(e),
        });
        status?;
        single.push(s);
        double.push(d);
    }
    Ok((single, double))
}

/// `P = i w mu S` and `U = I/2 + D` for `medium` on `contour`.
pub fn assemble_pu(
    contour: &Contour,
    medium: &Medium,
    omega: f64,
    rule: QuadratureRule,
) -> Result<(CMatrix, CMatrix)> {
    let layers = medium_layers(contour, medium, omega, rule)?;
    Ok(pu_from_layers(&layers, medium, omega))
}

fn medium_layers(
    contour: &Contour,
    medium: &Medium,
    omega: f64,
    rule: QuadratureRule,
) -> Result<LayerMatrices> {
    medium.validate()?;
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::invalid(format!("angular frequency must be > 0, got {omega}")));
    }
    layer_matrices(contour, medium.wavenumber(omega), rule)
}

fn pu_from_layers(layers: &LayerMatrices, medium: &Medium, omega: f64) -> (CMatrix, CMatrix) {
    let n = layers.single.nrows();
    let p = &layers.single * (I * omega * medium.mu());
    let u = &layers.double + CMatrix::identity(n, n) * Complex64::new(0.5, 0.0);
    (p, u)
}

/// Surface admittance with its solve diagnostics.
#[derive(Debug, Clone)]
pub struct Admittance {
    pub y: CMatrix,
    /// 1-norm condition estimate of `P`.
    pub condition: f64,
    /// `||P Y - U||_F / ||U||_F`.
    pub residual: f64,
}

/// Solves `P Y = U` by LU with partial pivoting.
pub fn surface_admittance(p: &CMatrix, u: &CMatrix) -> Result<Admittance> {
    if !p.is_square() || p.shape() != u.shape() {
        return Err(Error::invalid(format!(
            "P {:?} and U {:?} must be square and equal-sized",
            p.shape(),
            u.shape()
        )));
    }
    let lu = LuFactor::new(p.clone());
    let condition = lu.condition_estimate();
    let singular = |condition| Error::Singular {
        matrix: "P".into(),
        condition,
        frequency: 0.0,
        context: None,
    };
    if !(condition <= SINGULAR_CONDITION) {
        return Err(singular(condition));
    }
    let y = lu.solve(u).ok_or_else(|| singular(f64::INFINITY))?;
    let residual = relative_residual(p, &y, u);
    Ok(Admittance { y, condition, residual })
}

/// Everything the single-source formulation needs on one contour at one
/// frequency.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    pub omega: f64,
    pub object: Medium,
    pub background: Medium,
    pub rule: QuadratureRule,
    pub p: CMatrix,
    pub u: CMatrix,
    pub y: CMatrix,
    pub p_hat: CMatrix,
    pub u_hat: CMatrix,
    pub y_hat: CMatrix,
    /// `Y - Y_hat`.
    pub y_s: CMatrix,
    pub condition_p: f64,
    pub condition_p_hat: f64,
    pub residual_y: f64,
    pub residual_y_hat: f64,
    /// Background layer matrices, reused by the exterior operators.
    pub background_layers: LayerMatrices,
}

impl OperatorSet {
    pub fn dim(&self) -> usize {
        self.p.nrows()
    }

    /// `||Y_s||_F / ||Y||_F`.
    pub fn relative_contrast(&self) -> f64 {
        frobenius(&self.y_s) / frobenius(&self.y)
    }
}

fn tag_singular(err: Error, which: &str, medium: &Medium, omega: f64) -> Error {
    match err {
        Error::Singular { matrix, condition, .. } => Error::Singular {
            matrix,
            condition,
            frequency: omega / (2.0 * PI),
            context: Some(format!(
                "{which} medium eps_r={} mu_r={} sigma={}",
                medium.eps_r, medium.mu_r, medium.sigma
            )),
        },
        other => other,
    }
}

/// `Y_s = P^-1 U - P_hat^-1 U_hat`, both sides assembled with the same
/// quadrature on the same contour.
pub fn differential_admittance(
    contour: &Contour,
    object: &Medium,
    background: &Medium,
    omega: f64,
    rule: QuadratureRule,
) -> Result<OperatorSet> {
    let bg_layers = medium_layers(contour, background, omega, rule)?;
    let (p_hat, u_hat) = pu_from_layers(&bg_layers, background, omega);
    let (p, u) = if object == background {
        (p_hat.clone(), u_hat.clone())
    } else {
        let obj_layers = medium_layers(contour, object, omega, rule)?;
        pu_from_layers(&obj_layers, object, omega)
    };
    let hat = surface_admittance(&p_hat, &u_hat)
        .map_err(|e| tag_singular(e, "background", background, omega))?;
    let obj = if object == background {
        hat.clone()
    } else {
        surface_admittance(&p, &u).map_err(|e| tag_singular(e, "object", object, omega))?
    };
    let y_s = &obj.y - &hat.y;
    Ok(OperatorSet {
        omega,
        object: *object,
        background: *background,
        rule,
        p,
        u,
        y: obj.y,
        p_hat,
        u_hat,
        y_hat: hat.y,
        y_s,
        condition_p: obj.condition,
        condition_p_hat: hat.condition,
        residual_y: obj.residual,
        residual_y_hat: hat.residual,
        background_layers: bg_layers,
    })
}
