//! Exact construction of simple Lie superalgebras over the rationals and
//! certification that each is generated by a single element.

pub mod algebra;
pub mod cartan;
pub mod classical;
pub mod error;
pub mod exact;
pub mod family;
pub mod generate;
pub mod report;
pub mod tables;
pub mod weights;

pub use algebra::{
    check_axioms, generated_ideal, generated_subalgebra, ClosureMode, Element, Parity, SuperAlgebra,
};
pub use error::{Error, Result};
pub use exact::{Coordinatizer, Matrix, Scalar, Subspace};
pub use family::{Family, FamilyKind};
pub use generate::{candidate, certify, search_fallback, Certificate, GeneratorCandidate, Recipe, Verdict};
pub use report::{run_suite, verify_family, FamilyReport, RunReport, Status, VerifyOptions};
pub use weights::{standard_cartan, CartanFrame, WeightFunctional};
