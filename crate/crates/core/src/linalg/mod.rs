//! Dense complex matrices and the spectral primitives built on them.

mod eigen;
mod expm;
mod matrix;
mod ops;

pub use eigen::{hermitian_eigensystem, hermitian_eigensystem_with, Eigensystem};
pub use expm::matrix_exponential;
pub use matrix::{inner, ComplexMatrix, Tolerance};
pub use ops::{anticommutator, commutator, hs_inner};
