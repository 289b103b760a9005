use super::UrSpinor;
use crate::error::{Error, Result};
use crate::fock::{FockSpace, ModeBasis, StateVector};
use crate::linalg::{vec_norm, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Which factor of `Φ = spin ⊗ isospin` comes first in its 4 components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinSlot {
    /// `Φ_{2s+t}`
    SpinFirst,
    /// `Φ_{2t+s}`
    IsospinFirst,
}

impl SpinSlot {
    /// Position in `Φ` of spin `s` and isospin `t`.
    pub fn phi_index(self, s: usize, t: usize) -> usize {
        match self {
            SpinSlot::SpinFirst => 2 * s + t,
            SpinSlot::IsospinFirst => 2 * t + s,
        }
    }
}

/// `Γ = Ω ⊗ Φ`, index `4ω + φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct InternalState {
    pub gamma: [C64; 8],
    pub slot: SpinSlot,
}

impl InternalState {
    pub fn norm(&self) -> f64 {
        vec_norm(&self.gamma)
    }
    /// Dirac index `2ω + s` and isospin `t` of internal component `g`.
    pub fn split(slot: SpinSlot, g: usize) -> (usize, usize) {
        let (w, phi) = (g / 4, g % 4);
        let (s, t) = match slot {
            SpinSlot::SpinFirst => (phi / 2, phi % 2),
            SpinSlot::IsospinFirst => (phi % 2, phi / 2),
        };
        (2 * w + s, t)
    }
}

/// `Γ = Ω ⊗ (ū; v̄)` with the joint normalization of `Φ` enforced.
pub fn build_internal(omega: &UrSpinor, u: &UrSpinor, v: &UrSpinor, slot: SpinSlot) -> Result<InternalState> {
    let phi = [u.0[0], u.0[1], v.0[0], v.0[1]];
    let n = vec_norm(&phi);
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::Validation(format!("Φ has norm {n}, expected 1")));
    }
    let mut gamma = [C64::new(0.0, 0.0); 8];
    for w in 0..2 {
        for p in 0..4 {
            gamma[4 * w + p] = omega.0[w] * phi[p];
        }
    }
    Ok(InternalState { gamma, slot })
}

/// Lifts a 4×4 matrix on the Dirac factor `Ω ⊗ spin` to the 8-dim internal
/// space, identity on isospin.
pub fn lift_dirac(m: &DMatrix<C64>, slot: SpinSlot) -> DMatrix<C64> {
    DMatrix::from_fn(8, 8, |g, h| {
        let (d1, t1) = InternalState::split(slot, g);
        let (d2, t2) = InternalState::split(slot, h);
        if t1 == t2 {
            m[(d1, d2)]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Amplitudes on `H_T ⊗ H_Γ`, index `8·fock + internal`.
#[derive(Clone, Debug)]
pub struct ExtendedState {
    pub space: Arc<FockSpace>,
    pub basis: ModeBasis,
    pub slot: SpinSlot,
    pub amp: Vec<C64>,
}

impl ExtendedState {
    pub fn product(state: &StateVector, internal: &InternalState) -> Self {
        let mut amp = Vec::with_capacity(state.amplitudes().len() * 8);
        for a in state.amplitudes() {
            for g in &internal.gamma {
                amp.push(a * g);
            }
        }
        ExtendedState {
            space: state.space().clone(),
            basis: state.basis(),
            slot: internal.slot,
            amp,
        }
    }

    pub fn from_amplitudes(space: &Arc<FockSpace>, basis: ModeBasis, slot: SpinSlot, amp: Vec<C64>) -> Result<Self> {
        if amp.len() != space.dim() * 8 {
            return Err(Error::Validation(format!("expected {} amplitudes, got {}", space.dim() * 8, amp.len())));
        }
        if amp.iter().any(|z| !z.is_finite()) {
            return Err(Error::Validation("non-finite amplitude".into()));
        }
        Ok(ExtendedState {
            space: space.clone(),
            basis,
            slot,
            amp,
        })
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amp)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Fock amplitudes of internal component `g`.
    pub fn fock_component(&self, g: usize) -> StateVector {
        let amp = self.amp.iter().skip(g).step_by(8).copied().collect();
        StateVector::from_amplitudes(&self.space, self.basis, amp).expect("finite")
    }

    /// Same state with the Fock factor carried to another basis.
    pub fn to_basis(&self, target: ModeBasis) -> ExtendedState {
        if target == self.basis {
            return self.clone();
        }
        let mut amp = vec![C64::new(0.0, 0.0); self.amp.len()];
        for g in 0..8 {
            let c = self.fock_component(g).to_basis(target);
            for (i, z) in c.amplitudes().iter().enumerate() {
                amp[8 * i + g] = *z;
            }
        }
        ExtendedState {
            space: self.space.clone(),
            basis: target,
            slot: self.slot,
            amp,
        }
    }
}
