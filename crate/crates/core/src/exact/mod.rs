//! Exact rational scalars and the dense linear algebra built on them.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{dot, Matrix};
pub use scalar::Scalar;
pub use subspace::{Coordinatizer, Subspace};

pub(crate) use subspace::unit;
