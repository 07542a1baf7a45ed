//! Structure-constant superalgebras: brackets, axiom checks, closures,
//! subalgebras and quotients.

mod axioms;
mod closure;
mod construct;
mod superalgebra;
mod table_io;

pub use axioms::{check_axioms, AxiomKind, AxiomReport, Violation};
pub use closure::{
    closure_run, generated_ideal, generated_subalgebra, generated_submodule, is_ideal, ClosureMode,
    ClosureRun,
};
pub use construct::{quotient_by_ideal, subalgebra_of, QuotientMap};
pub use superalgebra::{Element, Model, Parity, Realization, SparseVec, SuperAlgebra};
pub use table_io::StructureTable;

