//! Paths in ℂ*, the one-form λₙ and the geometry of torus segments over them.

mod checks;
mod lambda;
mod path;
pub mod quadrature;
mod torus;

pub use checks::{
    hamiltonian_isotopy_test, is_admissible, is_valid_mutation_pair, winding_number,
    AdmissibilityReport, MutationPairReport,
};
pub use lambda::{
    arc_closed_form, elementary_disc_area, integrate_lambda_n, lambda_n, primitive_along_path,
    AreaSign,
};
pub use path::{PathJson, Piece, PlanarPath, Segment, SegmentJson};
pub use torus::{
    fiber_residual, lagrangian_residual, omega0, standard_loop_action, torus_point_coordinates,
    TorusPoint,
};

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryContext {
    pub n: u32,
    pub tol: f64,
}

impl GeometryContext {
    pub fn new(n: u32, tol: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("n must be at least 2, got {n}")));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
        }
        Ok(GeometryContext { n, tol })
    }

    pub fn with_default_tol(n: u32) -> Result<Self> {
        Self::new(n, DEFAULT_TOL)
    }
}
