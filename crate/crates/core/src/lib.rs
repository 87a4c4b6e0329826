//! Single-source surface integral solver for 2D TM scattering by penetrable
//! cylinders.
//!
//! The object is replaced by its surrounding medium plus one equivalent
//! electric current on its boundary, `J_s = Y_s E`, where the differential
//! surface admittance `Y_s = Y - Y_hat` is the difference of the interior
//! Dirichlet-to-Neumann maps of the object and background media. The exterior
//! problem is then closed with a combined field integral equation.
//!
//! Time convention is `e^{+iwt}` throughout; outgoing waves are `H^(2)`.

// `!(x > 0.0)` rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod linalg;
pub mod medium;
pub mod operators;
pub mod oracle;
pub mod quadrature;
pub mod solver;
pub mod specfun;
pub mod validation;

pub use error::{Error, Result};
pub use geometry::{Contour, Point, Region, Segment};
pub use medium::{Medium, SPEED_OF_LIGHT};
pub use num_complex::Complex64;
pub use operators::{OperatorSet, QuadratureRule};
pub use oracle::MieSolution;
pub use solver::{
    BackgroundProduct, BoundarySolution, CfieConfig, ExteriorRepresentation, FieldGrid, MfieBlock, PlaneWave, RcsCurve,
    ScatteringProblem, Solution,
};

pub type CMatrix = nalgebra::DMatrix<Complex64>;
pub type CVector = nalgebra::DVector<Complex64>;
