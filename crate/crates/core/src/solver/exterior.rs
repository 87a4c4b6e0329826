use crate::geometry::{Contour, Segment};
use crate::medium::Medium;
use crate::operators::{layer_block, LayerMatrices, OperatorSet, QuadratureRule};
use crate::{CMatrix, Complex64, Error, Result};

/// `L = -i w mu0 S_hat`: boundary `E_z` radiated by a unit current.
pub fn assemble_l(contour: &Contour, background: &Medium, omega: f64, rule: QuadratureRule) -> Result<CMatrix> {
    let layers = background_layers(contour, background, omega, rule)?;
    Ok(l_from_layers(&layers, background, omega))
}

/// `K = I/2 - D_hat'`: exterior tangential `H` radiated by a unit current.
pub fn assemble_k(contour: &Contour, background: &Medium, omega: f64, rule: QuadratureRule) -> Result<CMatrix> {
    let layers = background_layers(contour, background, omega, rule)?;
    Ok(k_from_layers(&layers))
}

/// `K Y_hat` in regular form, from the background hypersingular operator.
pub fn assemble_k_y_hat(contour: &Contour, background: &Medium, omega: f64, rule: QuadratureRule) -> Result<CMatrix> {
    let layers = background_layers(contour, background, omega, rule)?;
    Ok(k_y_hat_from_layers(&layers, background, omega))
}

fn background_layers(contour: &Contour, background: &Medium, omega: f64, rule: QuadratureRule) -> Result<LayerMatrices> {
    background.validate()?;
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::invalid(format!("angular frequency must be > 0, got {omega}")));
    }
    let segs = contour.segments();
    layer_block(segs, segs, true, background.wavenumber(omega), rule)
}

fn l_factor(background: &Medium, omega: f64) -> Complex64 {
    Complex64::new(0.0, -omega * background.mu())
}

fn l_from_layers(layers: &LayerMatrices, background: &Medium, omega: f64) -> CMatrix {
    &layers.single * l_factor(background, omega)
}

fn k_from_layers(layers: &LayerMatrices) -> CMatrix {
    let n = layers.adjoint_double.nrows();
    let mut k = -&layers.adjoint_double;
    for i in 0..n {
        k[(i, i)] += 0.5;
    }
    k
}

/// `L` and `K` over the concatenated segments of all objects.
#[derive(Debug, Clone)]
pub struct ExteriorOperators {
    pub omega: f64,
    pub l: CMatrix,
    pub k: CMatrix,
    /// `K Y_hat` in its regular form `-N / (i w mu0)`, where `N` is the
    /// hypersingular operator of the background medium.
    pub k_y_hat: CMatrix,
    /// Start index of each object's block.
    pub offsets: Vec<usize>,
}

impl ExteriorOperators {
    /// Diagonal blocks reuse the background layers of `ops`; off-diagonal
    /// blocks couple distinct objects through the background Green function.
    pub fn assemble(
        contours: &[&Contour],
        ops: &[OperatorSet],
        background: &Medium,
        omega: f64,
        rule: QuadratureRule,
    ) -> Result<Self> {
        if contours.len() != ops.len() {
            return Err(Error::invalid("one operator set per contour required"));
        }
        let mut offsets = Vec::with_capacity(contours.len());
        let mut n = 0;
        for (c, op) in contours.iter().zip(ops) {
            if op.dim() != c.len() {
                return Err(Error::invalid(format!(
                    "operator set of size {} does not match contour with {} segments",
                    op.dim(),
                    c.len()
                )));
            }
            offsets.push(n);
            n += c.len();
        }
        let mut l = CMatrix::zeros(n, n);
        let mut k = CMatrix::zeros(n, n);
        let mut k_y_hat = CMatrix::zeros(n, n);
        let kb = background.wavenumber(omega);
        for (a, ca) in contours.iter().enumerate() {
            for (b, cb) in contours.iter().enumerate() {
                let block;
                let layers: &LayerMatrices = if a == b {
                    &ops[a].background_layers
                } else {
                    let t: &[Segment] = ca.segments();
                    block = layer_block(t, cb.segments(), false, kb, rule)?;
                    &block
                };
                let shape = (ca.len(), cb.len());
                l.view_mut((offsets[a], offsets[b]), shape)
                    .copy_from(&l_from_layers(layers, background, omega));
                k.view_mut((offsets[a], offsets[b]), shape).copy_from(&k_from_layers_block(layers, a == b));
                k_y_hat
                    .view_mut((offsets[a], offsets[b]), shape)
                    .copy_from(&k_y_hat_from_layers(layers, background, omega));
            }
        }
        Ok(Self {
            omega,
            l,
            k,
            k_y_hat,
            offsets,
        })
    }
}

fn k_y_hat_from_layers(layers: &LayerMatrices, background: &Medium, omega: f64) -> CMatrix {
    &layers.hypersingular * (-1.0 / Complex64::new(0.0, omega * background.mu()))
}

fn k_from_layers_block(layers: &LayerMatrices, diagonal: bool) -> CMatrix {
    if diagonal {
        k_from_layers(layers)
    } else {
        -&layers.adjoint_double
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::medium::angular_frequency;
    use crate::operators::{assemble_pu, differential_admittance};

    fn circle() -> Contour {
        Contour::circle(Point::new(0.0, 0.0), 1.0, 0.1).unwrap()
    }

    #[test]
    fn l_is_negative_p_hat() {
        let c = circle();
        let omega = angular_frequency(3.0e8);
        let rule = QuadratureRule::default();
        let l = assemble_l(&c, &Medium::VACUUM, omega, rule).unwrap();
        let (p, _) = assemble_pu(&c, &Medium::VACUUM, omega, rule).unwrap();
        assert_eq!(l, -p);
    }

    #[test]
    fn l_is_symmetric_on_uniform_circle() {
        let c = circle();
        let l = assemble_l(&c, &Medium::VACUUM, angular_frequency(3.0e8), QuadratureRule::default()).unwrap();
        let scale = l.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for i in 0..c.len() {
            for j in 0..c.len() {
                assert!((l[(i, j)] - l[(j, i)]).norm() <= 1e-8 * scale);
            }
        }
    }

    #[test]
    fn k_diagonal_is_half_and_collinear_coupling_vanishes() {
        let c = circle();
        let k = assemble_k(&c, &Medium::VACUUM, angular_frequency(3.0e8), QuadratureRule::default()).unwrap();
        for i in 0..c.len() {
            assert_eq!(k[(i, i)], Complex64::new(0.5, 0.0));
        }
        let sq = Contour::rectangle(Point::new(0.0, 0.0), 1.0, 1.0, 0.1).unwrap();
        let ks = assemble_k(&sq, &Medium::VACUUM, angular_frequency(3.0e8), QuadratureRule::default()).unwrap();
        // segments 0 and 5 lie on the same edge
        assert_eq!(ks[(0, 5)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn regular_product_matches_direct_product_on_smooth_data() {
        // Y_hat maps the trace of a background field to its tangential H, so
        // K Y_hat E_inc can be formed both ways.
        let c = Contour::circle(Point::new(0.0, 0.0), 1.0, 0.05).unwrap();
        let wave = crate::solver::PlaneWave::new(1.0, 0.4, 3.0e8).unwrap();
        let omega = wave.omega();
        let rule = QuadratureRule::default();
        let op = differential_admittance(&c, &Medium::dielectric(2.0).unwrap(), &Medium::VACUUM, omega, rule).unwrap();
        let ext = ExteriorOperators::assemble(&[&c], std::slice::from_ref(&op), &Medium::VACUUM, omega, rule).unwrap();
        let (e, h) = crate::solver::incident_boundary_fields(&c, &wave, &Medium::VACUUM);
        let direct = &ext.k * &h;
        let regular = &ext.k_y_hat * &e;
        let through_y_hat = &ext.k * (&op.y_hat * &e);
        assert!((&regular - &direct).norm() <= 2e-2 * direct.norm(), "{}", (&regular - &direct).norm() / direct.norm());
        assert!((&through_y_hat - &direct).norm() <= 2e-2 * direct.norm());
    }

    #[test]
    fn finite_over_sweep_band() {
        let c = Contour::circle(Point::new(0.0, 0.0), 1.0, 0.05).unwrap();
        for f in [15.0e6, 47.0e6, 150.0e6] {
            let omega = angular_frequency(f);
            let l = assemble_l(&c, &Medium::VACUUM, omega, QuadratureRule::default()).unwrap();
            let k = assemble_k(&c, &Medium::VACUUM, omega, QuadratureRule::default()).unwrap();
            assert!(l.iter().chain(k.iter()).all(|v| v.re.is_finite() && v.im.is_finite()));
        }
    }

    #[test]
    fn single_object_blocks_match_direct_assembly() {
        let c = circle();
        let omega = angular_frequency(3.0e8);
        let rule = QuadratureRule::default();
        let op = differential_admittance(&c, &Medium::dielectric(4.0).unwrap(), &Medium::VACUUM, omega, rule).unwrap();
        let ext = ExteriorOperators::assemble(&[&c], std::slice::from_ref(&op), &Medium::VACUUM, omega, rule).unwrap();
        assert_eq!(ext.l, assemble_l(&c, &Medium::VACUUM, omega, rule).unwrap());
        assert_eq!(ext.k, assemble_k(&c, &Medium::VACUUM, omega, rule).unwrap());
        assert_eq!(ext.k_y_hat, assemble_k_y_hat(&c, &Medium::VACUUM, omega, rule).unwrap());
    }
}
