//! Exact linear algebra over ℚ and prime fields.

pub mod field;
pub mod matrix;
pub mod sparse;

pub use field::{Coefficients, Field, Fp, F2, F3, Q};
pub use matrix::{ColumnSolver, Matrix};
pub use sparse::{kernel_basis, sparse_from_dense, ColumnReducer, SparseColumn, SparseMatrix, TrackedReducer};
