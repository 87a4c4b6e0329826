//! Dense complex LU (partial pivoting, via nalgebra) with a Hager-Higham
//! 1-norm condition estimate.

use crate::{CMatrix, CVector, Complex64};
use nalgebra::{Dyn, LU};

pub struct LuFactor {
    lu: LU<Complex64, Dyn, Dyn>,
    norm1: f64,
}

/// Columns' maximum absolute sum.
pub fn norm1(a: &CMatrix) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// `||A X - B||_F / ||B||_F`.
pub fn relative_residual(a: &CMatrix, x: &CMatrix, b: &CMatrix) -> f64 {
    let r = a * x - b;
    let nb = frobenius(b);
    if nb == 0.0 {
        frobenius(&r)
    } else {
        frobenius(&r) / nb
    }
}

impl LuFactor {
    pub fn new(a: CMatrix) -> Self {
        let norm1 = norm1(&a);
        Self { lu: a.lu(), norm1 }
    }

    pub fn dim(&self) -> usize {
        self.lu.u().nrows()
    }

    pub fn is_singular(&self) -> bool {
        !self.lu.is_invertible()
    }

    pub fn solve(&self, b: &CMatrix) -> Option<CMatrix> {
        self.lu.solve(b)
    }

    pub fn solve_vec(&self, b: &CVector) -> Option<CVector> {
        self.lu.solve(b)
    }

    /// Solves `A^H x = b`.
    pub fn solve_adjoint(&self, b: &CVector) -> Option<CVector> {
        // PA = LU  =>  A^H = U^H L^H P
        let y = self.lu.u().ad_solve_upper_triangular(b)?;
        let mut w = self.lu.l().ad_solve_lower_triangular(&y)?;
        self.lu.p().inv_permute_rows(&mut w);
        Some(w)
    }

    /// Estimate of `||A||_1 ||A^-1||_1`; infinite for an exactly singular factor.
    pub fn condition_estimate(&self) -> f64 {
        if self.is_singular() {
            return f64::INFINITY;
        }
        match self.inverse_norm1_estimate() {
            Some(v) if v.is_finite() => self.norm1 * v,
            _ => f64::INFINITY,
        }
    }

    fn inverse_norm1_estimate(&self) -> Option<f64> {
        let n = self.dim();
        if n == 0 {
            return Some(0.0);
        }
        let one = Complex64::new(1.0, 0.0);
        let mut x = CVector::from_element(n, one / n as f64);
        let mut est = 0.0;
        let mut last_j = usize::MAX;
        for _ in 0..5 {
            let y = self.solve_vec(&x)?;
            est = y.iter().map(|v| v.norm()).sum::<f64>();
            let xi = y.map(|v| if v.norm() > 0.0 { v / v.norm() } else { one });
            let z = self.solve_adjoint(&xi)?;
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.norm()))
                .fold((0, -1.0), |b, c| if c.1 > b.1 { c } else { b });
            let ztx = z.dotc(&x).re;
            if zmax <= ztx || j == last_j {
                break;
            }
            last_j = j;
            x.fill(Complex64::new(0.0, 0.0));
            x[j] = one;
        }
        // Higham's alternating-sign test vector guards against underestimates.
        let alt = CVector::from_fn(n, |i, _| {
            let s = if i % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(s * (1.0 + i as f64 / (n.max(2) - 1) as f64), 0.0)
        });
        let y = self.solve_vec(&alt)?;
        let alt_est = 2.0 * y.iter().map(|v| v.norm()).sum::<f64>() / (3.0 * n as f64);
        Some(est.max(alt_est))
    }
}
