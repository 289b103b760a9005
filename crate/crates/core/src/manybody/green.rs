use crate::error::{Error, Result};
use crate::fock::{ladder_in, FockSpace, LadderKind, ModeBasis};
use crate::linalg::c;
use crate::sparse::CsrMatrix;
use std::sync::Arc;

/// Largest M-fold product dimension built explicitly.
pub const MULTI_DIM_CAP: usize = 20_000;

/// `M` objects sharing one truncated tensor space; parabose order `p = M`.
#[derive(Clone, Debug)]
pub struct ObjectRegistry {
    m: usize,
    space: Arc<FockSpace>,
}

impl ObjectRegistry {
    pub fn new(m: usize, space: &Arc<FockSpace>) -> Result<Self> {
        Self::with_cap(m, space, MULTI_DIM_CAP)
    }

    pub fn with_cap(m: usize, space: &Arc<FockSpace>, cap: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Config("need at least one object".into()));
        }
        let dim = space.dim().checked_pow(m as u32).unwrap_or(usize::MAX);
        if dim > cap {
            return Err(Error::Config(format!(
                "{m} objects at n_max={} give dim {dim} > cap {cap}",
                space.n_max()
            )));
        }
        Ok(ObjectRegistry { m, space: space.clone() })
    }

    pub fn objects(&self) -> usize {
        self.m
    }
    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim().pow(self.m as u32)
    }

    /// Per-object labels of product index `i`, object 1 first.
    pub fn labels(&self, mut i: usize) -> Vec<usize> {
        let d = self.space.dim();
        let mut out = vec![0; self.m];
        for k in (0..self.m).rev() {
            out[k] = i % d;
            i /= d;
        }
        out
    }

    pub fn index(&self, labels: &[usize]) -> usize {
        labels.iter().fold(0, |acc, &l| acc * self.space.dim() + l)
    }

    /// Product indices where every object has total `<= n_max - depth`.
    pub fn interior(&self, depth: usize) -> Vec<bool> {
        let keep = self.space.interior(depth);
        (0..self.dim()).map(|i| self.labels(i).iter().all(|&l| keep[l])).collect()
    }

    /// `I ⊗ … ⊗ op ⊗ … ⊗ I` with `op` on object `alpha` and `string` on
    /// every earlier object.
    pub fn embed(&self, alpha: usize, op: &CsrMatrix, string: &CsrMatrix) -> CsrMatrix {
        let id = CsrMatrix::identity(self.space.dim());
        let mut acc = CsrMatrix::identity(1);
        for k in 0..self.m {
            let f = match k.cmp(&alpha) {
                std::cmp::Ordering::Less => string,
                std::cmp::Ordering::Equal => op,
                std::cmp::Ordering::Greater => &id,
            };
            acc = acc.kron(f);
        }
        acc
    }

    /// `(−1)^N` on one object.
    pub fn parity(&self) -> CsrMatrix {
        let d: Vec<_> = (0..self.space.dim())
            .map(|i| c(if self.space.total(i) % 2 == 0 { 1.0 } else { -1.0 }))
            .collect();
        CsrMatrix::diagonal(&d)
    }
}

/// `b_r^α` or `b_r^α†` on the product space.
#[derive(Clone, Debug)]
pub struct GreenComponentOperator {
    pub alpha: usize,
    /// 0..3 for `A, B, C, D`
    pub mode: usize,
    pub kind: LadderKind,
    pub mat: CsrMatrix,
}

/// Green components with parity strings over the earlier objects, so that
/// components of different objects anticommute exactly. Returned as
/// `[alpha][mode] -> (b, b†)`.
pub fn build_green_components(reg: &ObjectRegistry) -> Result<Vec<[(GreenComponentOperator, GreenComponentOperator); 4]>> {
    let k = reg.parity();
    let mut out = Vec::with_capacity(reg.objects());
    for alpha in 0..reg.objects() {
        let ops: Vec<_> = (0..4)
            .map(|r| -> Result<_> {
                let lo = ladder_in(reg.space(), ModeBasis::Upper, r, LadderKind::Annihilate)?;
                let hi = ladder_in(reg.space(), ModeBasis::Upper, r, LadderKind::Create)?;
                let mk = |m: &CsrMatrix, kind| GreenComponentOperator {
                    alpha,
                    mode: r,
                    kind,
                    mat: reg.embed(alpha, m, &k),
                };
                Ok((mk(lo.matrix(), LadderKind::Annihilate), mk(hi.matrix(), LadderKind::Create)))
            })
            .collect::<Result<_>>()?;
        let arr: [_; 4] = ops.try_into().expect("four modes");
        out.push(arr);
    }
    Ok(out)
}

/// Ratio between `b_s^β† b_r^α† |0⟩` and `b_r^α† b_s^β† |0⟩`: `+1` within
/// one object, `−1` across objects. `None` if the state vanishes.
pub fn exchange_sign(reg: &ObjectRegistry, first: (usize, usize), second: (usize, usize)) -> Result<Option<f64>> {
    let g = build_green_components(reg)?;
    let mut vac = vec![c(0.0); reg.dim()];
    vac[0] = c(1.0);
    let (ra, aa) = first;
    let (rb, ab) = second;
    let x = &g[aa][ra].1.mat;
    let y = &g[ab][rb].1.mat;
    let s1 = y.matvec(&x.matvec(&vac));
    let s2 = x.matvec(&y.matvec(&vac));
    let (mut num, mut den) = (c(0.0), 0.0);
    for (a, b) in s1.iter().zip(&s2) {
        num += b.conj() * a;
        den += b.norm_sqr();
    }
    if den < 1e-24 {
        return Ok(None);
    }
    Ok(Some((num / den).re))
}
