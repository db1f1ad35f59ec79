use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {re}+{im}i is not in the open unit disk")]
    OutsideDisk { re: f64, im: f64 },

    #[error("invalid Blaschke product: {0}")]
    InvalidBlaschke(String),

    #[error("invalid singular inner function: {0}")]
    InvalidSingularInner(String),

    #[error("function leaves the unit ball: |f| = {modulus} at {re}+{im}i")]
    NotSchur { modulus: f64, re: f64, im: f64 },

    #[error("evaluation refused within {distance:e} of the boundary atom")]
    NearAtom { distance: f64 },

    #[error("normalized kernel at 0 is undefined: |b(0)| = {0}")]
    DegenerateZeroKernel(f64),

    #[error("invalid weight exponent alpha = {0}")]
    InvalidWeight(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("second Gram matrix is singular even after jitter {jitter:e}")]
    SingularGram { jitter: f64 },

    #[error("defect operator has negative eigenvalue of magnitude {0:e}")]
    DefectClip(f64),

    #[error("vector has component {0:e} outside the range of the defect square root")]
    OutsideRange(f64),

    #[error("kernel is not rotation-invariant: {0}")]
    NotRotationInvariant(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}
