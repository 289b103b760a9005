//! Octonions and their associator, the printed G₂ generator matrices,
//! the su(3)⊕su(2)⊕su(2) bracket table, Pauli and Dirac matrices.

mod dirac;
mod g2;
mod octonion;
mod structure;

pub use dirac::{build_dirac, eta, pauli, DiracMatrices};
pub use g2::{g2_closure_report, G2ClosureReport, G2GeneratorSet};
pub use octonion::{associator, derive_eps4, oct_mul, Eps4Entry, Eps4Report, FanoTable, Octonion, FANO_LINES, PRINTED_EPS4};
pub use structure::{jacobi_check, Generator, JacobiReport, StructureConstantTable};
