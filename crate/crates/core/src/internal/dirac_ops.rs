use super::state::{lift_dirac, ExtendedState, SpinSlot};
use crate::algebra::build_dirac;
use crate::error::Result;
use crate::fock::ModeBasis;
use crate::linalg::{c, C64};
use crate::modeops::QuadratureSet;
use crate::sparse::CsrMatrix;
use nalgebra::DMatrix;
use serde::Serialize;

fn dense4(m: &DMatrix<C64>) -> CsrMatrix {
    CsrMatrix::from_dense(m, 0.0)
}

/// `H_D = −γ^0(γ^1 Px + γ^2 Py + γ^3 Pz)` on Fock ⊗ internal (8 components,
/// isospin spectator).
pub fn dirac_hamiltonian(q: &QuadratureSet, basis: ModeBasis, slot: SpinSlot) -> CsrMatrix {
    let d = build_dirac();
    let mut h = CsrMatrix::zeros(q.space().dim() * 8, q.space().dim() * 8);
    for k in 0..3 {
        let a = -(&d.gamma[0] * &d.gamma[k + 1]);
        let g = dense4(&lift_dirac(&a, slot));
        h = h.add(&q.momentum(k, basis).matrix().kron(&g));
    }
    h
}

/// `Λ = γ^0 E − γ^i P_i` on Fock ⊗ Dirac (4 components; isospin dropped).
pub fn lambda_operator(q: &QuadratureSet, basis: ModeBasis) -> Result<CsrMatrix> {
    let d = build_dirac();
    let e = q.energy()?.dense_in(basis);
    let mut l = CsrMatrix::from_dense(&e, 1e-15).kron(&dense4(&d.gamma[0]));
    for k in 0..3 {
        let t = q.momentum(k, basis).matrix().kron(&dense4(&d.gamma[k + 1]));
        l = l.sub(&t);
    }
    Ok(l)
}

/// Singular values of `Λ` from one dense SVD, descending.
pub fn dirac_singular_values(q: &QuadratureSet, basis: ModeBasis) -> Result<Vec<f64>> {
    let l = lambda_operator(q, basis)?;
    Ok(crate::linalg::singular_values(&l.to_dense()))
}

#[derive(Clone, Debug)]
pub struct DiracKernel {
    /// Orthonormal kernel states in the ABCD basis, slot `SpinFirst`; each
    /// Dirac null vector appears once per isospin value.
    pub states: Vec<ExtendedState>,
    /// Null vectors of the 4-component operator.
    pub dirac_dim: usize,
    pub smallest_singular: f64,
    pub largest_singular: f64,
    /// `max ‖Λψ‖` over the returned Dirac null vectors.
    pub max_residual: f64,
}

#[derive(Serialize)]
pub struct DiracKernelSummary {
    pub dirac_dim: usize,
    pub smallest_singular: f64,
    pub largest_singular: f64,
    pub max_residual: f64,
}

impl DiracKernel {
    pub fn summary(&self) -> DiracKernelSummary {
        DiracKernelSummary {
            dirac_dim: self.dirac_dim,
            smallest_singular: self.smallest_singular,
            largest_singular: self.largest_singular,
            max_residual: self.max_residual,
        }
    }
}

/// Null space of `Λ`, singular values below `tol · σ_max`. `Λ` conserves
/// `N_n`, so the SVD runs per `N_n` sector in the xyzn basis.
pub fn dirac_kernel(q: &QuadratureSet, tol: f64) -> Result<DiracKernel> {
    let space = q.space().clone();
    let l = lambda_operator(q, ModeBasis::Xyzn)?;
    let dim = space.dim();
    let mut sectors: Vec<Vec<usize>> = vec![Vec::new(); space.n_max() + 1];
    for f in 0..dim {
        let nn = space.occ(f)[3] as usize;
        sectors[nn].extend((0..4).map(|d| 4 * f + d));
    }
    let svds: Vec<_> = crate::exec::map_range(sectors.len(), |s| {
        let idx = &sectors[s];
        let m = l.submatrix(idx, idx);
        m.svd(false, true)
    });
    let smax = svds
        .iter()
        .flat_map(|s| s.singular_values.iter().copied())
        .fold(0.0_f64, f64::max);
    let smin = svds
        .iter()
        .flat_map(|s| s.singular_values.iter().copied())
        .fold(f64::INFINITY, f64::min);
    let mut nulls: Vec<Vec<C64>> = Vec::new();
    for (s, svd) in svds.iter().enumerate() {
        let vt = svd.v_t.as_ref().expect("v_t requested");
        for (k, &sv) in svd.singular_values.iter().enumerate() {
            if sv <= tol * smax {
                let mut v = vec![c(0.0); dim * 4];
                for (j, &g) in sectors[s].iter().enumerate() {
                    v[g] = vt[(k, j)].conj();
                }
                nulls.push(v);
            }
        }
    }
    let max_residual = nulls
        .iter()
        .map(|v| crate::linalg::vec_norm(&l.matvec(v)))
        .fold(0.0, f64::max);
    let mut states = Vec::new();
    for v in &nulls {
        for t in 0..2 {
            let mut amp = vec![c(0.0); dim * 8];
            for f in 0..dim {
                for dd in 0..4 {
                    let (w, sp) = (dd / 2, dd % 2);
                    let g = 4 * w + SpinSlot::SpinFirst.phi_index(sp, t);
                    amp[8 * f + g] = v[4 * f + dd];
                }
            }
            let st = ExtendedState::from_amplitudes(&space, ModeBasis::Xyzn, SpinSlot::SpinFirst, amp)?;
            states.push(st.to_basis(ModeBasis::Upper));
        }
    }
    Ok(DiracKernel {
        dirac_dim: nulls.len(),
        states,
        smallest_singular: smin,
        largest_singular: smax,
        max_residual,
    })
}

/// `Λ` on Fock ⊗ internal (8 components, isospin spectator).
pub fn lambda_extended(q: &QuadratureSet, basis: ModeBasis, slot: SpinSlot) -> Result<CsrMatrix> {
    let d = build_dirac();
    let e = q.energy()?.dense_in(basis);
    let mut l = CsrMatrix::from_dense(&e, 1e-15).kron(&dense4(&lift_dirac(&d.gamma[0], slot)));
    for k in 0..3 {
        let g = dense4(&lift_dirac(&d.gamma[k + 1], slot));
        l = l.sub(&q.momentum(k, basis).matrix().kron(&g));
    }
    Ok(l)
}
