//! Exact-arithmetic toolkit for curvature pinching and isoparametric
//! hypersurface classification in spheres.

pub mod algebra;
pub mod identities;
pub mod isoparametric;
pub mod pinching;
pub mod tensors;

pub use algebra::{Rational, Scalar};
