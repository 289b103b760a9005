//! Time evolution: the block-rotation dynamics of a bare alternative and
//! `exp(−iEt)` on tensor-space states, with a Klein–Gordon residual check.

mod generic;
mod kg;

pub use generic::{evolve_generic, BlockRotationGenerator, GenericAlternativeState};
pub use kg::{klein_gordon_residual, KgResidual};

use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::linalg::C64;
use crate::modeops::{apply_four_momentum, QuadratureSet};

/// `exp(−iEt)·state` through the eigenbasis of `E`.
pub fn evolve_fock(q: &QuadratureSet, state: &StateVector, t: f64) -> Result<StateVector> {
    let e = q.energy()?;
    if !state.is_normalized(1e-10) {
        return Err(Error::Validation(format!("state norm {} is not 1", state.norm())));
    }
    if !t.is_finite() {
        return Err(Error::Validation(format!("time {t} is not finite")));
    }
    if t == 0.0 {
        return Ok(state.clone());
    }
    e.evolve(state, t)
}

/// Taylor series of `exp(−iEt)` up to `order`, built by applying `E`
/// repeatedly.
pub fn evolve_series(q: &QuadratureSet, state: &StateVector, t: f64, order: usize) -> Result<StateVector> {
    let mut term = state.clone();
    let mut sum = state.clone();
    for k in 1..=order {
        let f = C64::new(0.0, -t / k as f64);
        term = apply_four_momentum(q, &term, 0)?.scaled(f);
        sum = sum.lincomb(C64::new(1.0, 0.0), &term, C64::new(1.0, 0.0))?;
    }
    Ok(sum)
}
