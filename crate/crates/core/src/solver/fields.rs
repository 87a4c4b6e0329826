//! Field reconstruction away from the boundary.
//!
//! Outside every object the field is `E_inc` plus either the radiation of
//! `J_s` or the exterior Green representation of the boundary data (see
//! [`ExteriorRepresentation`]). Inside object `m` the Green
//! representation with the object medium is used,
//! `E(r) = sum_j i w mu [int_j G] (Y E)_j - sum_j [int_j dG/dn'] E_j`.

use super::{BoundarySolution, ExteriorRepresentation, Solution};
use crate::geometry::{Point, Region};
use crate::operators::{potential_row, Quadrature};
use crate::{Complex64, Error, Result};
use rayon::prelude::*;

/// Rectangular sampling grid `[center - extent/2, center + extent/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub center: Point,
    pub width: f64,
    pub height: f64,
    pub spacing: f64,
}

impl GridSpec {
    pub fn square(center: Point, extent: f64, spacing: f64) -> Self {
        Self {
            center,
            width: extent,
            height: extent,
            spacing,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(self.width) && ok(self.height) && ok(self.spacing)) {
            return Err(Error::invalid(format!("grid extent and spacing must be > 0, got {self:?}")));
        }
        if self.width / self.spacing > 1.0e5 || self.height / self.spacing > 1.0e5 {
            return Err(Error::invalid("grid has too many points per axis"));
        }
        Ok(())
    }

    /// Points per axis, `round(extent / spacing) + 1`.
    pub fn shape(&self) -> (usize, usize) {
        let n = |e: f64| (e / self.spacing).round() as usize + 1;
        (n(self.width), n(self.height))
    }

    /// Row-major points, `x` fastest.
    pub fn points(&self) -> Vec<Point> {
        let (nx, ny) = self.shape();
        let x0 = self.center.x - 0.5 * self.width;
        let y0 = self.center.y - 0.5 * self.height;
        let mut out = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                out.push(Point::new(x0 + ix as f64 * self.spacing, y0 + iy as f64 * self.spacing));
            }
        }
        out
    }
}

/// Total `E_z` sampled at points, with region tags.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub points: Vec<Point>,
    pub values: Vec<Complex64>,
    pub regions: Vec<Region>,
}

impl FieldGrid {
    /// Points excluded from error metrics.
    pub fn mask(&self) -> Vec<bool> {
        self.regions.iter().map(|r| *r == Region::NearBoundary).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl Solution {
    /// Scattered field `E - E_inc` at a point outside every object.
    pub fn radiated_field_at(&self, p: Point) -> Result<Complex64> {
        let quad = Quadrature::new(self.rule);
        self.radiated_with(&quad, p)
    }

    fn radiated_with(&self, quad: &Quadrature, p: Point) -> Result<Complex64> {
        let omega = self.omega();
        let k0 = self.k0();
        let factor = Complex64::new(0.0, -omega * self.background.mu());
        let mut sum = Complex64::new(0.0, 0.0);
        for o in &self.objects {
            let (single, double) = potential_row(&o.contour, k0, p, quad)?;
            match self.representation {
                ExteriorRepresentation::EquivalentCurrent => {
                    for (s, j) in single.iter().zip(o.j_s.iter()) {
                        sum += factor * s * j;
                    }
                }
                ExteriorRepresentation::Green => {
                    for j in 0..o.e.len() {
                        sum += factor * single[j] * o.h_t[j] + double[j] * o.e[j];
                    }
                }
            }
        }
        Ok(sum)
    }

    fn interior_with(&self, quad: &Quadrature, o: &BoundarySolution, p: Point) -> Result<Complex64> {
        let omega = self.omega();
        let k = o.medium.wavenumber(omega);
        let (single, double) = potential_row(&o.contour, k, p, quad)?;
        let iwm = Complex64::new(0.0, omega * o.medium.mu());
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..o.e.len() {
            sum += iwm * single[j] * o.h_t[j] - double[j] * o.e[j];
        }
        Ok(sum)
    }

    /// Total field at exterior points; rejects any other region.
    pub fn exterior_field(&self, points: &[Point]) -> Result<Vec<Complex64>> {
        let quad = Quadrature::new(self.rule);
        points
            .par_iter()
            .enumerate()
            .map(|(i, &p)| {
                let (region, _) = self.classify(p);
                if region != Region::Exterior {
                    return Err(region_error(i, p, region, Region::Exterior));
                }
                Ok(self.wave.field_at(&self.background, p) + self.radiated_with(&quad, p)?)
            })
            .collect()
    }

    /// Total field at interior points; rejects any other region.
    pub fn interior_field(&self, points: &[Point]) -> Result<Vec<Complex64>> {
        let quad = Quadrature::new(self.rule);
        points
            .par_iter()
            .enumerate()
            .map(|(i, &p)| match self.classify(p) {
                (Region::Interior, Some(m)) => self.interior_with(&quad, &self.objects[m], p),
                (region, _) => Err(region_error(i, p, region, Region::Interior)),
            })
            .collect()
    }

    /// Total field everywhere. Near-boundary points are evaluated with the
    /// formula of the side they lie on and tagged for masking.
    pub fn total_field(&self, points: &[Point]) -> Result<FieldGrid> {
        let quad = Quadrature::new(self.rule);
        let evaluated: Vec<(Complex64, Region)> = points
            .par_iter()
            .map(|&p| {
                let (region, owner) = self.classify(p);
                let value = match owner {
                    Some(m) => self.interior_with(&quad, &self.objects[m], p),
                    None => self
                        .radiated_with(&quad, p)
                        .map(|s| s + self.wave.field_at(&self.background, p)),
                };
                match (value, region) {
                    (Ok(v), _) => Ok((v, region)),
                    // a node can coincide with a point inside the exclusion band
                    (Err(_), Region::NearBoundary) => Ok((Complex64::new(0.0, 0.0), region)),
                    (Err(e), _) => Err(e),
                }
            })
            .collect::<Result<_>>()?;
        let (values, regions) = evaluated.into_iter().unzip();
        Ok(FieldGrid {
            points: points.to_vec(),
            values,
            regions,
        })
    }

    /// Field radiated by the equivalent currents at every point, whatever
    /// the region.
    pub fn equivalent_current_field(&self, points: &[Point]) -> Result<Vec<Complex64>> {
        let quad = Quadrature::new(self.rule);
        let omega = self.omega();
        let k0 = self.k0();
        let factor = Complex64::new(0.0, -omega * self.background.mu());
        points
            .par_iter()
            .map(|&p| {
                let mut sum = Complex64::new(0.0, 0.0);
                for o in &self.objects {
                    let (single, _) = potential_row(&o.contour, k0, p, &quad)?;
                    sum += single.iter().zip(o.j_s.iter()).map(|(s, j)| s * j).sum::<Complex64>();
                }
                Ok(factor * sum)
            })
            .collect()
    }

    /// Scattered-field formula evaluated at every point regardless of region.
    pub fn radiated_field(&self, points: &[Point]) -> Result<Vec<Complex64>> {
        let quad = Quadrature::new(self.rule);
        points.par_iter().map(|&p| self.radiated_with(&quad, p)).collect()
    }
}

fn region_error(index: usize, p: Point, found: Region, expected: Region) -> Error {
    Error::Region {
        index,
        x: p.x,
        y: p.y,
        found,
        expected,
    }
}
