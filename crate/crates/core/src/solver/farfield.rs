//! Far-zone pattern `F` with `E_s(rho, phi) ~ F(phi) exp(-i k0 rho) / sqrt(rho)`.
//!
//! Each pulse segment is integrated exactly along its chord:
//! `int_seg exp(i k0 r_hat . r') dl' = l exp(i k0 r_hat . m) sinc(k0 l (r_hat . t) / 2)`.

use super::{ExteriorRepresentation, RcsCurve, Solution};
use crate::geometry::Point;
use crate::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

fn sinc(x: Complex64) -> Complex64 {
    if x.norm() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

impl Solution {
    /// Far-zone pattern at the given observation angles.
    pub fn far_field(&self, angles: &[f64]) -> Vec<Complex64> {
        let k0 = self.k0();
        let omega = self.omega();
        let l_factor = Complex64::new(0.0, -omega * self.background.mu());
        // far form of G0: exp(-i pi/4) / sqrt(8 pi k0) exp(-i k0 rho) / sqrt(rho)
        let prefactor = Complex64::from_polar(1.0, -0.25 * PI) / (8.0 * PI * k0).sqrt();
        angles
            .par_iter()
            .map(|&phi| {
                let dir = Point::new(phi.cos(), phi.sin());
                let mut sum = Complex64::new(0.0, 0.0);
                for o in &self.objects {
                    for (idx, seg) in o.contour.segments().iter().enumerate() {
                        let phase = (Complex64::i() * k0 * dir.dot(seg.midpoint)).exp();
                        let arg = 0.5 * k0 * seg.length * dir.dot(seg.tangent);
                        let density = match self.representation {
                            ExteriorRepresentation::EquivalentCurrent => l_factor * o.j_s[idx],
                            // d/dn' exp(i k0 r_hat . r') = i k0 (r_hat . n') exp(..)
                            ExteriorRepresentation::Green => {
                                l_factor * o.h_t[idx] + Complex64::i() * k0 * dir.dot(seg.normal) * o.e[idx]
                            }
                        };
                        sum += density * seg.length * phase * sinc(arg);
                    }
                }
                prefactor * sum
            })
            .collect()
    }

    /// Bistatic scattering width at the given angles.
    pub fn rcs(&self, angles: &[f64]) -> RcsCurve {
        scattering_width(&self.far_field(angles), angles, self.wave.amplitude)
    }

    /// Extinction width from the forward amplitude.
    pub fn extinction_width(&self) -> f64 {
        let forward = self.far_field(&[self.wave.angle])[0];
        extinction_width(forward, self.k0().re, self.wave.amplitude)
    }
}

/// `sigma = 2 pi |F|^2 / E0^2`.
pub fn scattering_width(pattern: &[Complex64], angles: &[f64], amplitude: f64) -> RcsCurve {
    let sigma = pattern
        .iter()
        .map(|f| 2.0 * PI * f.norm_sqr() / (amplitude * amplitude))
        .collect();
    RcsCurve::from_sigma(angles.to_vec(), sigma)
}

/// `-2 sqrt(2 pi / k0) Re[exp(-i pi/4) F(phi_inc)] / E0`, the power removed
/// from the incident wave per unit incident intensity.
pub fn extinction_width(forward: Complex64, k0: f64, amplitude: f64) -> f64 {
    -2.0 * (2.0 * PI / k0).sqrt() * (Complex64::from_polar(1.0, -0.25 * PI) * forward).re / amplitude
}

/// `int sigma dphi / (2 pi)` from a curve sampled on uniform angles over the
/// full circle (periodic trapezoid rule).
pub fn total_scattering_width(curve: &RcsCurve) -> f64 {
    if curve.sigma.is_empty() {
        return 0.0;
    }
    curve.sigma.iter().sum::<f64>() / curve.sigma.len() as f64
}
