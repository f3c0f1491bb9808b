//! Finite fields and exact linear algebra over them.

pub mod dense;
pub mod f2;
pub mod field;
pub mod sparse;
pub mod subspace;

pub use dense::DenseMatrix;
pub use field::{Field, Gf};
pub use sparse::{Echelon, SparseMatrix, SparseVec};
pub use subspace::SubspaceBasis;
