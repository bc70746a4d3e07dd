//! Finite-dimensional commutative local algebras over prime fields, their
//! modules, and semidualizing modules.

pub mod algebra;
pub mod exactla;
pub mod formats;
pub mod lattice;
pub mod modcat;
pub mod poly;
pub mod semidual;

pub use algebra::{build_algebra, tensor_algebras, AlgebraError, AlgebraPresentation, LocalAlgebra};
pub use exactla::{LinAlgError, Matrix, PrimeField, Subspace};
pub use modcat::{ModuleError, RModule};
