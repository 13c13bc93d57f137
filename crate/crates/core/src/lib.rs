//! Finite-dimensional commutative and anticommutative algebras with trace forms.

pub mod error;
pub mod algebra;
pub mod analysis;
pub mod constructions;
pub mod inequalities;
pub mod io;
pub mod linalg;
pub mod random;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use algebra::{Algebra, Check, MetrizedAlgebra, Symmetry, Verdict};
pub use io::AnyAlgebra;
pub use linalg::{Matrix, Subspace, SymBilinearForm};
pub use report::{Report, RunOptions};
pub use scalar::{Backend, Scalar, Tol, Q};
