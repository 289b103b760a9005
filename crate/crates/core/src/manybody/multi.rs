use super::ObjectRegistry;
use crate::error::{Error, Result};
use crate::fock::{FockSpace, ModeBasis, StateVector};
use crate::linalg::{c, eigh, vec_norm, C64};
use crate::modeops::QuadratureSet;
use crate::sparse::CsrMatrix;
use nalgebra::DMatrix;
use std::sync::Arc;

/// Largest product dimension evolved with a dense eigendecomposition.
pub const MULTI_DENSE_CAP: usize = 1600;

/// Amplitudes `ψ(N¹, …, N^M)`, object 1 most significant.
#[derive(Clone, Debug)]
pub struct MultiObjectState {
    pub reg: ObjectRegistry,
    pub basis: ModeBasis,
    pub amp: Vec<C64>,
}

impl MultiObjectState {
    pub fn zeros(reg: &ObjectRegistry, basis: ModeBasis) -> Self {
        MultiObjectState {
            reg: reg.clone(),
            basis,
            amp: vec![c(0.0); reg.dim()],
        }
    }

    /// `ψ_1 ⊗ … ⊗ ψ_M`
    pub fn product(states: &[StateVector]) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::Validation("empty state list".into()))?;
        for s in states {
            first.check_compatible(s)?;
        }
        let reg = ObjectRegistry::new(states.len(), first.space())?;
        let mut amp = vec![c(1.0)];
        for s in states {
            let mut next = Vec::with_capacity(amp.len() * s.amplitudes().len());
            for a in &amp {
                for b in s.amplitudes() {
                    next.push(a * b);
                }
            }
            amp = next;
        }
        Ok(MultiObjectState {
            reg,
            basis: first.basis(),
            amp,
        })
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        self.reg.space()
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amp)
    }

    pub fn max_abs_diff(&self, o: &MultiObjectState) -> f64 {
        self.amp.iter().zip(&o.amp).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Applies a single-object map to factor `m`, all others held fixed.
    pub fn map_factor<F>(&self, m: usize, f: F) -> Result<MultiObjectState>
    where
        F: Fn(&StateVector) -> Result<StateVector>,
    {
        let d = self.space().dim();
        let k = self.reg.objects();
        let inner = d.pow((k - 1 - m) as u32);
        let outer = d.pow(m as u32);
        let mut out = vec![c(0.0); self.amp.len()];
        for o in 0..outer {
            for i in 0..inner {
                let base = o * d * inner + i;
                let slice: Vec<C64> = (0..d).map(|l| self.amp[base + l * inner]).collect();
                let s = StateVector::from_amplitudes(self.space(), self.basis, slice)?;
                let r = f(&s)?;
                for (l, z) in r.amplitudes().iter().enumerate() {
                    out[base + l * inner] = *z;
                }
            }
        }
        Ok(MultiObjectState {
            reg: self.reg.clone(),
            basis: self.basis,
            amp: out,
        })
    }

    /// Schmidt coefficients across the cut after the first `split` objects,
    /// descending.
    pub fn schmidt_values(&self, split: usize) -> Result<Vec<f64>> {
        if split == 0 || split >= self.reg.objects() {
            return Err(Error::Validation("the cut must leave objects on both sides".into()));
        }
        let d = self.space().dim();
        let rows = d.pow(split as u32);
        let cols = self.amp.len() / rows;
        let m = DMatrix::from_fn(rows, cols, |r, cc| self.amp[r * cols + cc]);
        Ok(crate::linalg::singular_values(&m))
    }

    /// Von Neumann entropy of the reduced state across the cut (nats).
    pub fn entanglement_entropy(&self, split: usize) -> Result<f64> {
        let s = self.schmidt_values(split)?;
        let tot: f64 = s.iter().map(|x| x * x).sum();
        if tot == 0.0 {
            return Err(Error::Validation("zero state has no entropy".into()));
        }
        Ok(s.iter()
            .map(|x| x * x / tot)
            .filter(|&p| p > 1e-300)
            .map(|p| -p * p.ln())
            .sum())
    }
}

/// `h_W` on the equal-label diagonal.
#[derive(Clone, Debug)]
pub enum Weight {
    Constant(C64),
    /// one value per single-object label
    Diagonal(Vec<C64>),
}

impl Weight {
    pub fn at(&self, label: usize) -> C64 {
        match self {
            Weight::Constant(w) => *w,
            Weight::Diagonal(v) => v[label],
        }
    }

    fn check(&self, dim: usize) -> Result<()> {
        if let Weight::Diagonal(v) = self {
            if v.len() != dim {
                return Err(Error::Validation(format!("weight has {} entries, space has {dim}", v.len())));
            }
        }
        Ok(())
    }

    fn is_real(&self) -> bool {
        match self {
            Weight::Constant(w) => w.im == 0.0,
            Weight::Diagonal(v) => v.iter().all(|w| w.im == 0.0),
        }
    }
}

/// `Σ_N h(N) ψ_1(N)|N⟩ ⊗ … ⊗ ψ_M(N)|N⟩`
pub fn interaction_apply(h: &Weight, states: &[StateVector]) -> Result<MultiObjectState> {
    let first = states
        .first()
        .ok_or_else(|| Error::Validation("empty state list".into()))?;
    for s in states {
        first.check_compatible(s)?;
    }
    let reg = ObjectRegistry::new(states.len(), first.space())?;
    h.check(first.space().dim())?;
    let mut out = MultiObjectState::zeros(&reg, first.basis());
    for n in 0..first.space().dim() {
        let mut v = h.at(n);
        for s in states {
            v *= s.amplitudes()[n];
        }
        out.amp[reg.index(&vec![n; states.len()])] = v;
    }
    Ok(out)
}

/// `H_W = h δ_{N¹…N^M}` applied to a general multi-object state.
pub fn interaction_operator_apply(h: &Weight, state: &MultiObjectState) -> Result<MultiObjectState> {
    h.check(state.space().dim())?;
    let m = state.reg.objects();
    let mut out = MultiObjectState::zeros(&state.reg, state.basis);
    for n in 0..state.space().dim() {
        let i = state.reg.index(&vec![n; m]);
        out.amp[i] = h.at(n) * state.amp[i];
    }
    Ok(out)
}

/// `exp(−i(Σ_m E_m + H_W)t)` by dense diagonalization. `h` must be real.
pub fn evolve_interacting(q: &QuadratureSet, h: &Weight, state: &MultiObjectState, t: f64) -> Result<MultiObjectState> {
    if state.space().as_ref() != q.space().as_ref() {
        return Err(Error::Validation("state lives in a different space".into()));
    }
    if !h.is_real() {
        return Err(Error::Validation("h_W must be real on the diagonal (hermitian)".into()));
    }
    h.check(state.space().dim())?;
    let dim = state.amp.len();
    if dim > MULTI_DENSE_CAP {
        return Err(Error::Capability(format!("product dim {dim} exceeds dense cap {MULTI_DENSE_CAP}")));
    }
    let e = CsrMatrix::from_dense(&q.energy()?.dense_in(state.basis), 1e-15);
    let id = CsrMatrix::identity(state.space().dim());
    let mut hg = CsrMatrix::zeros(dim, dim);
    for m in 0..state.reg.objects() {
        hg = hg.add(&state.reg.embed(m, &e, &id));
    }
    let mut dense = hg.to_dense();
    let k = state.reg.objects();
    for n in 0..state.space().dim() {
        let i = state.reg.index(&vec![n; k]);
        dense[(i, i)] += h.at(n);
    }
    let (vals, vecs) = eigh(&dense);
    let psi = nalgebra::DVector::from_column_slice(&state.amp);
    let mut coef = vecs.adjoint() * psi;
    for (z, &l) in coef.iter_mut().zip(&vals) {
        *z *= C64::new(0.0, -l * t).exp();
    }
    let out = vecs * coef;
    Ok(MultiObjectState {
        reg: state.reg.clone(),
        basis: state.basis,
        amp: out.iter().copied().collect(),
    })
}

/// `‖Σ_m (E_m² − P_xm² − P_ym² − P_zm²)|Ψ⟩‖` with `E_m` applied spectrally.
pub fn free_multibody_check(q: &QuadratureSet, state: &MultiObjectState) -> Result<f64> {
    let energy = q.energy()?;
    let e2 = q.e2_in(state.basis);
    let mut acc = vec![c(0.0); state.amp.len()];
    for m in 0..state.reg.objects() {
        let ee = state.map_factor(m, |s| energy.apply(&energy.apply(s)?))?;
        let pp = state.map_factor(m, |s| e2.apply(s))?;
        for ((a, x), y) in acc.iter_mut().zip(&ee.amp).zip(&pp.amp) {
            *a += x - y;
        }
    }
    Ok(vec_norm(&acc))
}
