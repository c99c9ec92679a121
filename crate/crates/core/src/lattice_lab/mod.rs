//! Machine checks of the Pfaffian solutions behind the condensation schemes.
//!
//! * [`discrete`]: Gram- and Wronski-type discrete Pfaffian identities;
//! * [`glv_solution`], [`btoda_solution`], [`dtoda_solution`]: lattice
//!   equations evaluated on Pfaffians of evolved entry tables;
//! * [`dckp`]: the discrete C-Toda lattice and its intermediate relations;
//! * [`somos`]: Somos sequences and their lattice reductions.
//!
//! Everything is computed by expansion over labeled tables and compared in
//! division-free form, so exact scalars give exactly zero residuals.

pub mod btoda_solution;
pub mod dckp;
pub mod discrete;
pub mod dtoda_solution;
pub mod elements;
pub mod glv_solution;
pub mod somos;

pub use btoda_solution::verify_btoda_solution;
pub use dckp::{verify_dckp, GramSeed};
pub use discrete::{check_gram_identities, check_wronski_identities};
pub use dtoda_solution::verify_dtoda_solution;
pub use elements::{ElementTable, Evolution};
pub use glv_solution::verify_glv_solution;
pub use somos::{somos_generate, somos_reduction_residual, somos_residual, Reduction, SomosSequence, SomosVariant};
