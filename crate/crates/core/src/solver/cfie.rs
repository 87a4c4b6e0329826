use super::exterior::ExteriorOperators;
use super::{block_diagonal, BackgroundProduct, CfieConfig, MfieBlock};
use crate::linalg::LuFactor;
use crate::medium::Medium;
use crate::operators::{OperatorSet, SINGULAR_CONDITION};
use crate::{CMatrix, CVector, Complex64, Error, Result};
use std::f64::consts::PI;

/// Boundary field and current of the combined system.
#[derive(Debug, Clone)]
pub struct CfieOutput {
    pub e: CVector,
    pub j_s: CVector,
    pub condition: f64,
    /// `||A E - b|| / ||b||`.
    pub residual: f64,
}

/// The combined-field system matrix and right-hand side.
pub fn cfie_system(
    ops: &[OperatorSet],
    ext: &ExteriorOperators,
    config: &CfieConfig,
    background: &Medium,
    e_inc: &CVector,
    h_inc: &CVector,
) -> Result<(CMatrix, CMatrix, CVector)> {
    config.validate()?;
    let y_s = block_diagonal(ops.iter().map(|o| &o.y_s));
    let y_mfie = match config.mfie_block {
        MfieBlock::Object => block_diagonal(ops.iter().map(|o| &o.y)),
        MfieBlock::Background => block_diagonal(ops.iter().map(|o| &o.y_hat)),
    };
    let n = y_s.nrows();
    if ext.l.nrows() != n || e_inc.len() != n || h_inc.len() != n {
        return Err(Error::invalid(format!(
            "system size mismatch: Y_s {n}, L {}, E_inc {}, H_inc {}",
            ext.l.nrows(),
            e_inc.len(),
            h_inc.len()
        )));
    }
    let alpha = config.alpha;
    let eta = config.eta(background, ext.omega);
    let mfie_weight = (1.0 - alpha) * eta;
    let mut a = CMatrix::zeros(n, n);
    if alpha != 0.0 {
        let efie = CMatrix::identity(n, n) - &ext.l * &y_s;
        a += efie * Complex64::new(alpha, 0.0);
    }
    if alpha != 1.0 {
        // Y_m - K Y_s = Y_m - K Y + K Y_hat
        let y = block_diagonal(ops.iter().map(|o| &o.y));
        let mut mfie = &y_mfie - &ext.k * &y;
        match config.background_product {
            BackgroundProduct::Regular => mfie += &ext.k_y_hat,
            BackgroundProduct::Direct => mfie += &ext.k * block_diagonal(ops.iter().map(|o| &o.y_hat)),
        }
        a += mfie * mfie_weight;
    }
    let rhs = e_inc * Complex64::new(alpha, 0.0) + h_inc * mfie_weight;
    Ok((a, y_s, rhs))
}

/// Solves the combined-field system by LU and forms `J_s = Y_s E`.
pub fn solve_cfie(
    ops: &[OperatorSet],
    ext: &ExteriorOperators,
    config: &CfieConfig,
    background: &Medium,
    e_inc: &CVector,
    h_inc: &CVector,
) -> Result<CfieOutput> {
    let (a, y_s, rhs) = cfie_system(ops, ext, config, background, e_inc, h_inc)?;
    let lu = LuFactor::new(a.clone());
    let condition = lu.condition_estimate();
    let singular = |condition| Error::Singular {
        matrix: "CFIE system".into(),
        condition,
        frequency: ext.omega / (2.0 * PI),
        context: Some(format!("alpha={}", config.alpha)),
    };
    if !(condition <= SINGULAR_CONDITION) {
        return Err(singular(condition));
    }
    let e = lu.solve_vec(&rhs).ok_or_else(|| singular(f64::INFINITY))?;
    let r = &a * &e - &rhs;
    let nb = rhs.norm();
    let residual = if nb == 0.0 { r.norm() } else { r.norm() / nb };
    let j_s = &y_s * &e;
    Ok(CfieOutput {
        e,
        j_s,
        condition,
        residual,
    })
}
