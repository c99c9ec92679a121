//! Pfaffian condensation on discrete integrable lattices.
//!
//! The crate computes Pfaffians of even-order skew-symmetric matrices with two
//! condensation schemes, each carrying a free relaxation parameter `λ`:
//!
//! * [`glv_condense`] iterates a generalised Lotka–Volterra lattice (the
//!   Bäcklund transform of the discrete BKP equation);
//! * [`dtoda_condense`] iterates a coupled `σ/τ` Toda lattice of DKP type.
//!
//! Both are checked against the reference oracles in [`scalar_core`]
//! (recursive expansion and `O(N^3)` elimination). [`dodgson`] provides the
//! determinant-side baseline, and [`lattice_lab`] machine-checks the Pfaffian
//! solutions of the lattices, the discrete C-Toda identities and the Somos
//! reductions.
//!
//! Everything is generic over [`Scalar`]; use [`Rational`] for exact work and
//! `f64` for timing. Indices are 0-based throughout.

pub mod bench;
pub mod dodgson;
pub mod dtoda_condense;
pub mod error;
pub mod glv_condense;
pub mod grid;
pub mod lattice_lab;
pub mod random;
pub mod quadruplet;
pub mod report;
pub mod retry;
pub mod scalar_core;

pub use error::{Cell, Error, Result};
pub use report::{CaseReport, VerificationReport};
pub use scalar_core::{
    determinant, pfaffian_elimination, pfaffian_expansion, ExtendedSkewArray, Label, Matrix, Rational, Scalar,
    SkewMatrix,
};
