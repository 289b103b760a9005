use crate::error::{Error, Result};
use crate::exec;
use crate::fock::{basis_transform, FockOperator, FockSpace, ModeBasis, StateVector};
use crate::linalg::{eigh_real, C64};
use nalgebra::DMatrix;
use std::sync::Arc;

/// One invariant block of `E²` in the xyzn occupational basis.
#[derive(Clone, Debug)]
struct Block {
    idx: Vec<usize>,
    /// eigenvalues of `E²` on the block
    evals: Vec<f64>,
    evecs: DMatrix<f64>,
}

/// `E = √(Px²+Py²+Pz²)` on the truncated space, held spectrally.
///
/// `E²` is real symmetric in the xyzn basis and preserves `N_n` and the
/// parities of `N_x, N_y, N_z`, so it splits into small blocks that are
/// diagonalized independently.
#[derive(Clone, Debug)]
pub struct EnergyOperator {
    space: Arc<FockSpace>,
    blocks: Vec<Block>,
    min_e2: f64,
}

impl EnergyOperator {
    pub(crate) fn from_e2_xyzn(e2: &FockOperator) -> Result<Self> {
        debug_assert_eq!(e2.basis(), ModeBasis::Xyzn);
        let m = e2.matrix();
        let comps = m.connected_blocks();
        let blocks: Vec<Result<(Block, f64)>> = exec::map_slice(&comps, |idx| {
            let n = idx.len();
            let mut d = DMatrix::<f64>::zeros(n, n);
            let pos: std::collections::HashMap<usize, usize> =
                idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            for (k, &i) in idx.iter().enumerate() {
                for (j, v) in m.row(i) {
                    if v.im.abs() > 1e-12 {
                        return Err(Error::Numerical(format!(
                            "E2 entry ({i},{j}) has imaginary part {:e}",
                            v.im
                        )));
                    }
                    d[(k, pos[&j])] = v.re;
                }
            }
            let (evals, evecs) = eigh_real(&d);
            if evals.iter().any(|x| !x.is_finite()) {
                return Err(Error::Numerical(format!("non-finite eigenvalue in block of size {n}")));
            }
            let lo = evals.iter().cloned().fold(f64::INFINITY, f64::min);
            if lo < -1e-10 {
                return Err(Error::Numerical(format!(
                    "E2 eigenvalue {lo:e} below -1e-10 in block of size {n}"
                )));
            }
            Ok((
                Block {
                    idx: idx.clone(),
                    evals,
                    evecs,
                },
                lo,
            ))
        });
        let mut out = Vec::with_capacity(blocks.len());
        let mut min_e2 = f64::INFINITY;
        for b in blocks {
            let (b, lo) = b?;
            min_e2 = min_e2.min(lo);
            out.push(b);
        }
        Ok(EnergyOperator {
            space: e2.space().clone(),
            blocks: out,
            min_e2,
        })
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    /// Smallest eigenvalue of `E²` before clamping.
    pub fn min_e2_eigenvalue(&self) -> f64 {
        self.min_e2
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Eigenvalues of `E`, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .blocks
            .iter()
            .flat_map(|b| b.evals.iter().map(|&l| l.max(0.0).sqrt()))
            .collect();
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    /// Applies `f(E)` for a function given on the eigenvalues of `E`.
    pub fn apply_fn<F>(&self, state: &StateVector, f: F) -> Result<StateVector>
    where
        F: Fn(f64) -> C64 + Sync + Send,
    {
        if state.space().as_ref() != self.space.as_ref() {
            return Err(Error::Validation("state lives in a different space".into()));
        }
        let from = state.basis();
        let sx = state.to_basis(ModeBasis::Xyzn);
        let amp = sx.amplitudes();
        let parts: Vec<Vec<C64>> = exec::map_slice(&self.blocks, |b| {
            let n = b.idx.len();
            let mut coef = vec![C64::new(0.0, 0.0); n];
            for (k, c) in coef.iter_mut().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (r, &i) in b.idx.iter().enumerate() {
                    acc += amp[i] * b.evecs[(r, k)];
                }
                *c = acc * f(b.evals[k].max(0.0).sqrt());
            }
            (0..n)
                .map(|r| {
                    let mut acc = C64::new(0.0, 0.0);
                    for (k, c) in coef.iter().enumerate() {
                        acc += c * b.evecs[(r, k)];
                    }
                    acc
                })
                .collect()
        });
        let mut out = vec![C64::new(0.0, 0.0); amp.len()];
        for (b, p) in self.blocks.iter().zip(parts) {
            for (&i, v) in b.idx.iter().zip(p) {
                out[i] = v;
            }
        }
        Ok(sx.with_amplitudes(ModeBasis::Xyzn, out).to_basis(from))
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.apply_fn(state, |e| C64::new(e, 0.0))
    }

    /// `exp(−iEt)·state`
    pub fn evolve(&self, state: &StateVector, t: f64) -> Result<StateVector> {
        self.apply_fn(state, |e| C64::new(0.0, -e * t).exp())
    }

    /// Dense `f(E)` on the xyzn basis.
    fn dense_fn_xyzn<F: Fn(f64) -> f64>(&self, f: F) -> DMatrix<f64> {
        let d = self.space.dim();
        let mut m = DMatrix::<f64>::zeros(d, d);
        for b in &self.blocks {
            let w: Vec<f64> = b.evals.iter().map(|&l| f(l.max(0.0).sqrt())).collect();
            for (r, &i) in b.idx.iter().enumerate() {
                for (s, &j) in b.idx.iter().enumerate() {
                    let mut acc = 0.0;
                    for (k, wk) in w.iter().enumerate() {
                        acc += b.evecs[(r, k)] * wk * b.evecs[(s, k)];
                    }
                    m[(i, j)] = acc;
                }
            }
        }
        m
    }

    /// Dense matrix of `E` on the requested occupational basis.
    pub fn dense_in(&self, basis: ModeBasis) -> DMatrix<C64> {
        let ex = self.dense_fn_xyzn(|e| e).map(|x| C64::new(x, 0.0));
        if basis == ModeBasis::Xyzn {
            return ex;
        }
        let g = basis_transform(&self.space, ModeBasis::Xyzn, basis).to_dense();
        &g * ex * g.adjoint()
    }

    /// Sparse `E` on the requested basis, entries below `1e−15` dropped.
    pub fn operator_in(&self, basis: ModeBasis) -> FockOperator {
        let m = crate::sparse::CsrMatrix::from_dense(&self.dense_in(basis), 1e-15);
        FockOperator::new(&self.space, basis, m).expect("shape")
    }

    /// Max entry of `E·E − E²` computed block by block in the xyzn basis.
    pub fn blockwise_square_defect(&self, e2_xyzn: &FockOperator) -> f64 {
        let m = e2_xyzn.matrix();
        let defects = exec::map_slice(&self.blocks, |b| {
            let n = b.idx.len();
            let mut worst: f64 = 0.0;
            for r in 0..n {
                for s in 0..n {
                    let mut e_sq = 0.0;
                    for k in 0..n {
                        e_sq += b.evecs[(r, k)] * b.evals[k].max(0.0) * b.evecs[(s, k)];
                    }
                    worst = exec::fmax(worst, (e_sq - m.get(b.idx[r], b.idx[s]).re).abs());
                }
            }
            worst
        });
        defects.into_iter().fold(0.0, exec::fmax)
    }
}
