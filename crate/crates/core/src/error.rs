use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("x = {x} is outside the curve domain [{min}, {max}]")]
    OutOfDomain { x: f64, min: f64, max: f64 },

    #[error("curvature {kappa:e} at x = {x} is below the degeneracy threshold")]
    DegenerateCurvature { x: f64, kappa: f64 },

    #[error("normal curvature {kappa_n:e} at x = {x} is too small to form kappa_g / kappa_n")]
    DegenerateRatio { x: f64, kappa_n: f64 },

    #[error("derivative order {0} is not supported (maximum 3)")]
    UnsupportedOrder(usize),

    #[error("the Darboux basis needs a surface attachment")]
    MissingAttachment,

    #[error("state is tagged {state:?} but invariants belong to {invariants:?}")]
    BasisMismatch {
        state: crate::fermi_walker::Basis,
        invariants: crate::fermi_walker::Basis,
    },

    #[error("adaptive quadrature on [{a}, {b}] did not reach tolerance {tol:e} within {max_intervals} intervals")]
    QuadratureNonConvergence {
        a: f64,
        b: f64,
        tol: f64,
        max_intervals: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
