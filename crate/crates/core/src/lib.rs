//! Numerical toolkit for reproducing kernels on the unit disk: Schur-class
//! symbols, kernel Gram matrices, positivity and dominance tests, truncated
//! Toeplitz operators, and model-space bases.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // negated comparisons also reject NaN

pub mod error;
pub mod functions;
pub mod kernels;
pub mod linalg;
pub mod modelspace;
pub mod operators;
pub mod parse;
pub mod psd;
pub mod report;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use functions::{
    AnalyticFunction, AtomicSingularInner, BlaschkeProduct, DiskFunction, DiskPoint,
    NormalizedZeroKernel, Polynomial, SchurFunction, TaylorPolynomial,
};
pub use kernels::{gram, sample_grid, GramMatrix, GridSpec, KernelExpr, PointSet};
pub use linalg::{CMatrix, CVector};
pub use modelspace::{takenaka_malmquist, ModelBasis};
pub use num_complex::Complex64;
pub use operators::{DefectOperator, SpaceWeight, TruncatedToeplitz};
pub use parse::ParseError;
pub use psd::{DominanceReport, PsdVerdict};
pub use verify::{TheoremReport, Verdict};
