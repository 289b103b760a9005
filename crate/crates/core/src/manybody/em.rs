use crate::algebra::{build_dirac, eta};
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::internal::{lift_dirac, spinor_to_vector, ExtendedState, MajoranaSpinor};
use crate::linalg::{c, C64};
use crate::modeops::{apply_four_momentum, QuadratureSet};

/// The two pieces of `−γ^μ{Γ[𝒫_ψD]_μ|N⟩ + Σ_N (A_χN)_μ ψ_A(N)|N⟩ ⊗ Γψ_D(N)|N⟩}`.
#[derive(Clone, Debug)]
pub struct EmResidual {
    /// `−γ^μ 𝒫_μ` on the fermion, i.e. `−Λψ_D`.
    pub free: ExtendedState,
    /// Coupling amplitudes on the equal-label diagonal `|N⟩⊗|N⟩`, indexed
    /// like an extended state by the shared label.
    pub coupling: ExtendedState,
    /// `A^μ = χ̄γ^μχ`
    pub photon_vector: [f64; 4],
}

impl EmResidual {
    /// Coupling term spread over the full photon ⊗ fermion product, index
    /// `(N_A · dim + N_D) · 8 + g`.
    pub fn coupling_full(&self) -> Vec<C64> {
        let d = self.coupling.space.dim();
        let mut out = vec![c(0.0); d * d * 8];
        for n in 0..d {
            for g in 0..8 {
                out[(n * d + n) * 8 + g] = self.coupling.amp[8 * n + g];
            }
        }
        out
    }
}

pub fn em_demo(q: &QuadratureSet, photon: &StateVector, chi: &MajoranaSpinor, fermion: &ExtendedState) -> Result<EmResidual> {
    if photon.space().as_ref() != fermion.space.as_ref() || q.space().as_ref() != fermion.space.as_ref() {
        return Err(Error::Validation("photon, fermion and quadratures must share one space".into()));
    }
    let photon = photon.to_basis(fermion.basis);
    let d = build_dirac();
    let gam: Vec<_> = d.gamma.iter().map(|g| lift_dirac(g, fermion.slot)).collect();
    let dim = fermion.space.dim();

    // 𝒫^μ on every internal component
    let comps: Vec<StateVector> = (0..8).map(|g| fermion.fock_component(g)).collect();
    let mut free = vec![c(0.0); dim * 8];
    for mu in 0..4 {
        let low = eta(mu, mu);
        let pc: Vec<StateVector> = comps
            .iter()
            .map(|s| apply_four_momentum(q, s, mu))
            .collect::<Result<_>>()?;
        for g in 0..8 {
            for h in 0..8 {
                let w = gam[mu][(g, h)];
                if w.norm() == 0.0 {
                    continue;
                }
                for (n, z) in pc[h].amplitudes().iter().enumerate() {
                    free[8 * n + g] -= w * low * z;
                }
            }
        }
    }

    let (a, _) = spinor_to_vector(chi);
    let mut slash = nalgebra::DMatrix::<C64>::zeros(8, 8);
    for mu in 0..4 {
        slash += &gam[mu] * c(eta(mu, mu) * a[mu]);
    }
    let mut coupling = vec![c(0.0); dim * 8];
    for n in 0..dim {
        let pa = photon.amplitudes()[n];
        for g in 0..8 {
            let mut acc = c(0.0);
            for h in 0..8 {
                acc += slash[(g, h)] * fermion.amp[8 * n + h];
            }
            coupling[8 * n + g] = -pa * acc;
        }
    }
    Ok(EmResidual {
        free: ExtendedState::from_amplitudes(&fermion.space, fermion.basis, fermion.slot, free)?,
        coupling: ExtendedState::from_amplitudes(&fermion.space, fermion.basis, fermion.slot, coupling)?,
        photon_vector: a,
    })
}
