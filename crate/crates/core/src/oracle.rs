//! Eigenfunction series for a homogeneous circular cylinder under TM
//! plane-wave incidence.
//!
//! With `phi'` measured from the propagation direction about the cylinder
//! centre, and `x0 = k0 R`, `x1 = k1 R`:
//!
//! ```text
//! exterior  E = E_inc + E0 c sum_n i^-n s_n H_n(k0 rho) e^{i n phi'}
//! interior  E =         E0 c sum_n i^-n t_n J_n(k1 rho) e^{i n phi'}
//! ```
//!
//! where `c = exp(-i k0 k_hat . centre)`. The coefficients `s_n`, `t_n` are
//! stored without the `i^-n` factor so that an object identical to the
//! background gives `s_n = 0`, `t_n = 1`. Both are even in `n`.

use crate::geometry::Point;
use crate::medium::Medium;
use crate::solver::{PlaneWave, RcsCurve};
use crate::specfun::{self, bessel_j_orders, derivative_orders, hankel2_orders, MAX_ORDER};
use crate::{Complex64, Error, Result};
use std::f64::consts::PI;

/// Relative size of the last retained scattered coefficient.
pub const TAIL_TOLERANCE: f64 = 1.0e-12;

/// Modes kept beyond the largest electrical radius before the tail test.
const ORDER_MARGIN: u32 = 8;

#[derive(Debug, Clone)]
pub struct MieSolution {
    pub center: Point,
    pub radius: f64,
    pub object: Medium,
    pub background: Medium,
    pub wave: PlaneWave,
    pub k0: f64,
    pub k1: f64,
    pub n_max: u32,
    /// Scattered coefficients for `n = 0..=n_max`.
    pub scattered: Vec<Complex64>,
    /// Interior coefficients for `n = 0..=n_max`.
    pub interior: Vec<Complex64>,
    /// Largest relative residual of the per-mode continuity systems.
    pub residual: f64,
}

/// `i^-n`.
fn i_pow_neg(n: u32) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// Solves a 2x2 complex system by Gaussian elimination with row pivoting.
fn solve2(m: [[Complex64; 2]; 2], rhs: [Complex64; 2]) -> Option<[Complex64; 2]> {
    let (r0, r1) = if m[0][0].norm() >= m[1][0].norm() { (0, 1) } else { (1, 0) };
    let pivot = m[r0][0];
    if pivot.norm() == 0.0 {
        return None;
    }
    let f = m[r1][0] / pivot;
    let m11 = m[r1][1] - f * m[r0][1];
    let b1 = rhs[r1] - f * rhs[r0];
    if m11.norm() == 0.0 {
        return None;
    }
    let y = b1 / m11;
    let x = (rhs[r0] - m[r0][1] * y) / pivot;
    Some([x, y])
}

impl MieSolution {
    /// Cylinder of `radius` centred at `center` illuminated by `wave`.
    pub fn new(center: Point, radius: f64, object: Medium, background: Medium, wave: PlaneWave) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!("radius must be > 0, got {radius}")));
        }
        object.validate()?;
        background.validate()?;
        wave.validate()?;
        if !(object.is_lossless() && background.is_lossless()) {
            return Err(Error::invalid("the series reference supports lossless media only"));
        }
        let omega = wave.omega();
        let k0 = background.wavenumber(omega).re;
        let k1 = object.wavenumber(omega).re;
        let x0 = k0 * radius;
        let x1 = k1 * radius;
        let mut n_max = (x0.max(x1).ceil() as u32 + ORDER_MARGIN).min(MAX_ORDER - 1);
        loop {
            let (scattered, interior, residual) = Self::coefficients(n_max, x0, x1, k0, k1, &object, &background)?;
            let peak = scattered.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let tail = scattered[n_max as usize].norm();
            if peak == 0.0 || tail <= TAIL_TOLERANCE * peak {
                return Ok(Self {
                    center,
                    radius,
                    object,
                    background,
                    wave,
                    k0,
                    k1,
                    n_max,
                    scattered,
                    interior,
                    residual,
                });
            }
            if n_max >= MAX_ORDER - 1 {
                return Err(Error::invalid(format!(
                    "series tail did not converge by order {n_max} (k0 R = {x0}, k1 R = {x1})"
                )));
            }
            n_max = (n_max + ORDER_MARGIN).min(MAX_ORDER - 1);
        }
    }

    /// Origin-centred cylinder; the reference of the circular scenarios.
    pub fn centered(radius: f64, object: Medium, background: Medium, wave: PlaneWave) -> Result<Self> {
        Self::new(Point::new(0.0, 0.0), radius, object, background, wave)
    }

    #[allow(clippy::type_complexity)]
    fn coefficients(
        n_max: u32,
        x0: f64,
        x1: f64,
        k0: f64,
        k1: f64,
        object: &Medium,
        background: &Medium,
    ) -> Result<(Vec<Complex64>, Vec<Complex64>, f64)> {
        let j0 = bessel_j_orders(n_max + 1, x0)?;
        let j1 = bessel_j_orders(n_max + 1, x1)?;
        let h0 = hankel2_orders(n_max + 1, x0)?;
        let dj0 = derivative_orders(&j0);
        let dj1 = derivative_orders(&j1);
        let dh0 = derivative_orders(&h0);
        let c0 = k0 / background.mu_r;
        let c1 = k1 / object.mu_r;
        let mut scattered = Vec::with_capacity(n_max as usize + 1);
        let mut interior = Vec::with_capacity(n_max as usize + 1);
        let mut residual = 0.0f64;
        for n in 0..=n_max as usize {
            let m = [
                [h0[n], Complex64::new(-j1[n], 0.0)],
                [c0 * dh0[n], Complex64::new(-c1 * dj1[n], 0.0)],
            ];
            let rhs = [Complex64::new(-j0[n], 0.0), Complex64::new(-c0 * dj0[n], 0.0)];
            let [s, t] = solve2(m, rhs).ok_or(Error::Singular {
                matrix: format!("mode {n} continuity system"),
                condition: f64::INFINITY,
                frequency: 0.0,
                context: None,
            })?;
            for row in 0..2 {
                let r = m[row][0] * s + m[row][1] * t - rhs[row];
                let scale = (m[row][0] * s).norm() + (m[row][1] * t).norm() + rhs[row].norm();
                if scale > 0.0 {
                    residual = residual.max(r.norm() / scale);
                }
            }
            scattered.push(s);
            interior.push(t);
        }
        Ok((scattered, interior, residual))
    }

    fn local(&self, p: Point) -> (f64, f64, Complex64) {
        let d = p - self.center;
        let rho = d.norm();
        let phi = d.y.atan2(d.x) - self.wave.angle;
        let centre_phase =
            self.wave.amplitude * (-Complex64::i() * self.k0 * self.wave.direction().dot(self.center)).exp();
        (rho, phi, centre_phase)
    }

    /// `c_0 Z_0 + 2 sum_{n>=1} i^-n c_n Z_n cos(n phi)`.
    fn fold(coeff: &[Complex64], radial: &[Complex64], phi: f64) -> Complex64 {
        let mut sum = coeff[0] * radial[0];
        for n in 1..coeff.len() {
            sum += 2.0 * i_pow_neg(n as u32) * coeff[n] * radial[n] * (n as f64 * phi).cos();
        }
        sum
    }

    /// Total `E_z` at `p`; points with `rho < R` use the interior series.
    pub fn field(&self, p: Point) -> Result<Complex64> {
        if (p - self.center).norm() < self.radius {
            self.interior_series(p)
        } else {
            Ok(self.wave.field_at(&self.background, p) + self.scattered_field(p)?)
        }
    }

    /// Interior series at any point; physical for `rho <= R`.
    pub fn interior_series(&self, p: Point) -> Result<Complex64> {
        let (rho, phi, centre_phase) = self.local(p);
        let j: Vec<Complex64> = bessel_j_orders(self.n_max, self.k1 * rho)?
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect();
        Ok(centre_phase * Self::fold(&self.interior, &j, phi))
    }

    /// Scattered series at `rho >= R`.
    pub fn scattered_field(&self, p: Point) -> Result<Complex64> {
        let (rho, phi, centre_phase) = self.local(p);
        if rho < self.radius {
            return Err(Error::invalid("scattered series is only valid outside the cylinder"));
        }
        let h = hankel2_orders(self.n_max, self.k0 * rho)?;
        Ok(centre_phase * Self::fold(&self.scattered, &h, phi))
    }

    /// Far-zone pattern `F` with `E_s ~ F exp(-i k0 rho) / sqrt(rho)`.
    pub fn far_field(&self, angles: &[f64]) -> Vec<Complex64> {
        let base = self.wave.amplitude * (2.0 / (PI * self.k0)).sqrt() * Complex64::from_polar(1.0, 0.25 * PI);
        angles
            .iter()
            .map(|&phi| {
                let obs = Point::new(phi.cos(), phi.sin());
                let shift = (Complex64::i() * self.k0 * (obs - self.wave.direction()).dot(self.center)).exp();
                base * shift * self.pattern_sum(phi - self.wave.angle)
            })
            .collect()
    }

    fn pattern_sum(&self, phi: f64) -> Complex64 {
        let mut sum = self.scattered[0];
        for n in 1..self.scattered.len() {
            sum += 2.0 * self.scattered[n] * (n as f64 * phi).cos();
        }
        sum
    }

    /// `sigma = (4 / k0) |sum_n s_n e^{i n phi'}|^2`.
    pub fn scattering_width(&self, angles: &[f64]) -> RcsCurve {
        let sigma = angles
            .iter()
            .map(|&phi| 4.0 / self.k0 * self.pattern_sum(phi - self.wave.angle).norm_sqr())
            .collect();
        RcsCurve::from_sigma(angles.to_vec(), sigma)
    }

    /// `(4 / k0) sum_n |s_n|^2` over all `n`.
    pub fn total_scattering_width(&self) -> f64 {
        let sum: f64 = self.scattered.iter().skip(1).map(|v| v.norm_sqr()).sum();
        4.0 / self.k0 * (self.scattered[0].norm_sqr() + 2.0 * sum)
    }

    /// `-(4 / k0) Re sum_n s_n` over all `n`.
    pub fn extinction_width(&self) -> f64 {
        let sum: Complex64 = self.scattered.iter().skip(1).sum();
        -4.0 / self.k0 * (self.scattered[0] + 2.0 * sum).re
    }
}

/// First zero of `J_0`, located by bisection on the library `J_0`.
pub fn first_bessel_zero() -> Result<f64> {
    let j0 = |x: f64| specfun::bessel_j(0, Complex64::new(x, 0.0)).map(|v| v.re);
    let (mut lo, mut hi) = (2.0, 3.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if j0(lo)? * j0(mid)? <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
