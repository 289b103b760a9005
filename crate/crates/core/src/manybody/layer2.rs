use crate::error::{Error, Result};
use crate::fock::{ladder_in, FockSpace, LadderKind, ModeBasis};
use crate::linalg::{c, C64};
use crate::modeops::QuadratureSet;
use crate::sparse::CsrMatrix;
use crate::spatial::hermite_all;
use nalgebra::DMatrix;
use std::sync::Arc;

/// Occupation numbers over the layer-one labels `|N⟩`, total object count
/// capped.
#[derive(Clone, Debug)]
pub struct LayerTwoSpace {
    layer_one: Arc<FockSpace>,
    space: Arc<FockSpace>,
}

impl LayerTwoSpace {
    /// Default caps: at most 3 objects over a layer-one space with n_max ≤ 2.
    pub fn new(layer_one: &Arc<FockSpace>, max_objects: usize) -> Result<Self> {
        Self::with_caps(layer_one, max_objects, 3, 2)
    }

    pub fn with_caps(layer_one: &Arc<FockSpace>, max_objects: usize, object_cap: usize, n_max_cap: usize) -> Result<Self> {
        if max_objects > object_cap {
            return Err(Error::Config(format!("{max_objects} objects exceed cap {object_cap}")));
        }
        if layer_one.n_max() > n_max_cap {
            return Err(Error::Config(format!(
                "layer-one n_max={} exceeds cap {n_max_cap}",
                layer_one.n_max()
            )));
        }
        let space = FockSpace::with_modes(layer_one.dim(), max_objects, 200_000)?;
        Ok(LayerTwoSpace {
            layer_one: layer_one.clone(),
            space,
        })
    }

    pub fn layer_one(&self) -> &Arc<FockSpace> {
        &self.layer_one
    }
    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `ψ̂(N)` or `ψ̂†(N)` for layer-one label `label`.
    pub fn field(&self, label: usize, kind: LadderKind) -> Result<CsrMatrix> {
        Ok(ladder_in(&self.space, ModeBasis::Raw, label, kind)?.matrix().clone())
    }

    /// Second-quantized single-object operator `Σ O_{N′N} ψ̂†(N′)ψ̂(N)`.
    pub fn second_quantize(&self, o: &DMatrix<C64>) -> Result<CsrMatrix> {
        let d = self.layer_one.dim();
        if o.nrows() != d || o.ncols() != d {
            return Err(Error::Validation("operator shape does not match layer one".into()));
        }
        let mut acc = CsrMatrix::zeros(self.dim(), self.dim());
        for a in 0..d {
            let up = self.field(a, LadderKind::Create)?;
            for b in 0..d {
                if o[(a, b)].norm() == 0.0 {
                    continue;
                }
                let lo = self.field(b, LadderKind::Annihilate)?;
                acc = acc.lincomb(c(1.0), &up.matmul(&lo), o[(a, b)]);
            }
        }
        Ok(acc)
    }
}

/// `Δ(x′, x, t′, t)` for one fixed `τ = t′ − t`, over the `N_n = 0` sector
/// of the xyzn labels. Each spatial function `f_{n_x n_y n_z}` appears
/// once in that sector, so the equal-time kernel is the projector onto
/// their span.
#[derive(Clone, Debug)]
pub struct Propagator {
    n_max: usize,
    labels: Vec<[usize; 3]>,
    /// `⟨N′| e^{−iEτ} |N⟩` on the sector; empty when `τ < 0`.
    u: Option<DMatrix<C64>>,
}

impl Propagator {
    pub fn new(q: &QuadratureSet, tau: f64) -> Result<Self> {
        if !tau.is_finite() {
            return Err(Error::Validation("non-finite time".into()));
        }
        let space = q.space();
        let idx: Vec<usize> = (0..space.dim()).filter(|&i| space.occ(i)[3] == 0).collect();
        let labels = idx
            .iter()
            .map(|&i| {
                let o = space.occ(i);
                [o[0] as usize, o[1] as usize, o[2] as usize]
            })
            .collect();
        // θ(0) = 1
        let u = if tau < 0.0 {
            None
        } else if tau == 0.0 {
            Some(DMatrix::identity(idx.len(), idx.len()))
        } else {
            let energy = q.energy()?;
            let mut m = DMatrix::zeros(idx.len(), idx.len());
            for (col, &i) in idx.iter().enumerate() {
                let mut amp = vec![c(0.0); space.dim()];
                amp[i] = c(1.0);
                let s = crate::fock::StateVector::from_amplitudes(space, ModeBasis::Xyzn, amp)?;
                let ev = energy.evolve(&s, tau)?;
                for (row, &j) in idx.iter().enumerate() {
                    m[(row, col)] = ev.amplitudes()[j];
                }
            }
            Some(m)
        };
        Ok(Propagator {
            n_max: space.n_max(),
            labels,
            u,
        })
    }

    fn basis_values(&self, x: &[f64; 3]) -> Vec<f64> {
        let mut h = vec![vec![0.0; self.n_max + 1]; 3];
        for (k, hk) in h.iter_mut().enumerate() {
            hermite_all(self.n_max, x[k], hk);
        }
        self.labels.iter().map(|l| h[0][l[0]] * h[1][l[1]] * h[2][l[2]]).collect()
    }

    pub fn eval(&self, xp: &[f64; 3], x: &[f64; 3]) -> C64 {
        let Some(u) = &self.u else {
            return c(0.0);
        };
        let fp = self.basis_values(xp);
        let f = self.basis_values(x);
        let mut acc = c(0.0);
        for (r, a) in fp.iter().enumerate() {
            for (s, b) in f.iter().enumerate() {
                acc += u[(r, s)] * (a * b);
            }
        }
        acc
    }

    /// `⟨N′|e^{−iEτ}|N⟩` on the sector, if `τ ≥ 0`.
    pub fn matrix(&self) -> Option<&DMatrix<C64>> {
        self.u.as_ref()
    }

    pub fn labels(&self) -> &[[usize; 3]] {
        &self.labels
    }
}

/// One-shot `Δ(x′, x, t′, t)`.
pub fn propagator(q: &QuadratureSet, xp: [f64; 3], x: [f64; 3], tp: f64, t: f64) -> Result<C64> {
    Ok(Propagator::new(q, tp - t)?.eval(&xp, &x))
}
