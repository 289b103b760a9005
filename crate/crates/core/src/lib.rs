//! Numerical simulator for the ur-alternative construction: a truncated
//! four-mode bosonic Fock space, its position/momentum/energy operators,
//! the Hermite-function map to 3-D wavefields, and the algebraic and
//! gravitational superstructure built on top of it.

pub mod algebra;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod fock;
pub mod gravity;
pub mod internal;
pub mod io;
pub mod linalg;
pub mod manybody;
pub mod modeops;
pub mod sparse;
pub mod spatial;
pub mod suite;

pub use error::{Error, Result};
