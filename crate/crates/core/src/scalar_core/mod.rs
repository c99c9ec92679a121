//! Scalars, skew-symmetric matrices, reference Pfaffian/determinant oracles
//! and checkers for general Pfaffian identities.

pub mod format;
pub mod identities;
pub mod labels;
pub mod matrix;
pub mod pfaffian;
pub mod scalar;

pub use identities::{check_bilinear_even, check_bilinear_odd, check_congruence};
pub use labels::{ExtendedSkewArray, Label};
pub use matrix::{Matrix, SkewMatrix};
pub use pfaffian::{determinant, pfaffian_elimination, pfaffian_expansion};
pub use scalar::{Rational, Scalar};
