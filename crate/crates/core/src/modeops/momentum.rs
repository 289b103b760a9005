use super::QuadratureSet;
use crate::error::{Error, Result};
use crate::exec;
use crate::fock::{ModeBasis, StateVector};
use crate::linalg::C64;

/// Signs `s_j` of `A_k = ½ Σ_j s_j L_j` over `A,B,C,D`, for `k = x,y,z`.
pub fn momentum_signs(k: usize) -> [f64; 4] {
    match k {
        0 => [1.0, 1.0, -1.0, -1.0],
        1 => [1.0, -1.0, 1.0, -1.0],
        2 => [1.0, -1.0, -1.0, 1.0],
        _ => panic!("spatial momentum index {k} out of range"),
    }
}

/// The coefficient map `𝒫^k_ψ(N)` on ABCD amplitudes, written out directly:
///
/// `−i/(2√2) Σ_j s_j [ψ(N+e_j)√(N_j+1) − ψ(N−e_j)√N_j]`
///
/// with out-of-range occupations read as zero. Cross-checks the sparse
/// `P` matrices.
pub fn momentum_coefficients(state: &StateVector, k: usize) -> Result<StateVector> {
    if state.basis() != ModeBasis::Upper {
        return Err(Error::Validation("explicit momentum map expects ABCD amplitudes".into()));
    }
    if k > 2 {
        return Err(Error::Validation(format!("spatial index {k} out of range")));
    }
    let s = momentum_signs(k);
    let space = state.space().clone();
    let psi = state.amplitudes();
    let pref = C64::new(0.0, -1.0 / (2.0 * std::f64::consts::SQRT_2));
    let out = exec::map_range(space.dim(), |i| {
        let occ = space.occ(i);
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..4 {
            let nj = occ[j] as f64;
            if let Some(up) = space.shifted(i, j, 1) {
                acc += psi[up] * (s[j] * (nj + 1.0).sqrt());
            }
            if let Some(dn) = space.shifted(i, j, -1) {
                acc -= psi[dn] * (s[j] * nj.sqrt());
            }
        }
        pref * acc
    });
    Ok(state.with_amplitudes(ModeBasis::Upper, out))
}

/// `P^μ|Ψ⟩`: `E|Ψ⟩` for `μ = 0`, the momentum operators for `μ = 1..3`.
pub fn apply_four_momentum(q: &QuadratureSet, state: &StateVector, mu: usize) -> Result<StateVector> {
    if state.space().as_ref() != q.space().as_ref() {
        return Err(Error::Validation("state lives in a different space".into()));
    }
    match mu {
        0 => q.energy()?.apply(state),
        1..=3 => match q.momentum_ref(mu - 1, state.basis()) {
            Some(p) => p.apply(state),
            None => {
                let up = state.to_basis(ModeBasis::Upper);
                Ok(q.momentum_ref(mu - 1, ModeBasis::Upper)
                    .expect("upper basis")
                    .apply(&up)?
                    .to_basis(state.basis()))
            }
        },
        _ => Err(Error::Validation(format!("four-momentum index {mu} out of range"))),
    }
}
