//! Newton polygons, face polynomials and Puiseux branches of curves
//! `F(x, t) = 0`.
//!
//! Conjugate branches over one face are carried together: the leading
//! coefficient is the class of `c` in `ℚ[c]/(φ)` and every later
//! coefficient lives in the same ring. A zero divisor met along the way is
//! reported as a factor of `φ` so the caller can split.

mod branches;
mod polygon;
mod quotient;
mod series;

pub use branches::{branches, lift_face, BranchSet, PuiseuxBranch, XBranch};
pub use polygon::{faces, newton_polygon, FaceData, NewtonPolygon};
pub use quotient::{Modulus, QuotientElem};
pub use series::PuiseuxSeries;

use crate::poly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    #[error("Newton polygon of the zero polynomial")]
    ZeroPolynomial,
    #[error("modulus must be a nonconstant polynomial")]
    ConstantModulus,
    #[error("modulus {0} has a repeated factor")]
    NonSquarefreeModulus(UniPoly),
    #[error("face polynomial {} of the edge {:?} -> {:?} has a repeated root", .0.face_poly, .0.start, .0.end)]
    NonSquarefreeFace(FaceData),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor found; modulus splits off the factor {0}")]
    ZeroDivisorSplit(UniPoly),
    #[error("truncation too low to determine a leading term")]
    NotEnoughPrecision,
}
