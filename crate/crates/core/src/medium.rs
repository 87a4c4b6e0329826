//! Homogeneous isotropic media and the derived wave quantities.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
pub const MU0: f64 = 4.0e-7 * PI;
pub const EPS0: f64 = 1.0 / (MU0 * SPEED_OF_LIGHT * SPEED_OF_LIGHT);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Medium {
    pub eps_r: f64,
    pub mu_r: f64,
    /// Conductivity in S/m.
    pub sigma: f64,
}

impl Default for Medium {
    fn default() -> Self {
        Self::VACUUM
    }
}

impl Medium {
    pub const VACUUM: Medium = Medium {
        eps_r: 1.0,
        mu_r: 1.0,
        sigma: 0.0,
    };

    pub fn new(eps_r: f64, mu_r: f64, sigma: f64) -> Result<Self> {
        let m = Self { eps_r, mu_r, sigma };
        m.validate()?;
        Ok(m)
    }

    pub fn dielectric(eps_r: f64) -> Result<Self> {
        Self::new(eps_r, 1.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.eps_r.is_finite()
            && self.eps_r > 0.0
            && self.mu_r.is_finite()
            && self.mu_r > 0.0
            && self.sigma.is_finite()
            && self.sigma >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "medium needs eps_r > 0, mu_r > 0, sigma >= 0 (got {self:?})"
            )))
        }
    }

    pub fn is_lossless(&self) -> bool {
        self.sigma == 0.0
    }

    pub fn mu(&self) -> f64 {
        MU0 * self.mu_r
    }

    /// `eps0 eps_r - i sigma / omega`.
    pub fn complex_permittivity(&self, omega: f64) -> Complex64 {
        Complex64::new(EPS0 * self.eps_r, -self.sigma / omega)
    }

    /// `omega sqrt(mu eps_c)` on the branch `Re k >= 0`, `Im k <= 0`.
    pub fn wavenumber(&self, omega: f64) -> Complex64 {
        let k = omega * (self.mu() * self.complex_permittivity(omega)).sqrt();
        let k = if k.re < 0.0 { -k } else { k };
        Complex64::new(k.re, -k.im.abs())
    }

    /// `sqrt(mu / eps_c) = omega mu / k`.
    pub fn impedance(&self, omega: f64) -> Complex64 {
        omega * self.mu() / self.wavenumber(omega)
    }
}

pub fn angular_frequency(f: f64) -> f64 {
    2.0 * PI * f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_wavenumber_and_impedance() {
        let omega = angular_frequency(3.0e8);
        let k = Medium::VACUUM.wavenumber(omega);
        assert!((k.re - omega / SPEED_OF_LIGHT).abs() < 1e-12);
        assert_eq!(k.im, 0.0);
        let eta = Medium::VACUUM.impedance(omega);
        assert!((eta.re - 376.730_313_461_8).abs() < 1e-6);
    }

    #[test]
    fn lossy_branch_decays() {
        let m = Medium::new(4.0, 1.0, 0.05).unwrap();
        let omega = angular_frequency(1.0e8);
        let k = m.wavenumber(omega);
        assert!(k.re > 0.0 && k.im < 0.0);
        assert!(m.complex_permittivity(omega).im < 0.0);
        let k2 = k * k;
        let want = omega * omega * m.mu() * m.complex_permittivity(omega);
        assert!((k2 - want).norm() / want.norm() < 1e-14);
    }

    #[test]
    fn rejects_nonphysical() {
        assert!(Medium::new(0.0, 1.0, 0.0).is_err());
        assert!(Medium::new(2.0, -1.0, 0.0).is_err());
        assert!(Medium::new(2.0, 1.0, -1e-3).is_err());
        assert!(Medium::new(f64::NAN, 1.0, 0.0).is_err());
    }
}
