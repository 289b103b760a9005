use super::EnergyOperator;
use crate::error::{Error, Result};
use crate::fock::{mode_operator, number_operator, FockOperator, FockSpace, LadderKind, ModeBasis};
use crate::linalg::{c, C64, I};
use std::sync::Arc;

/// Largest `n_max` for which the spectral energy operator is built.
pub const DENSE_EIGEN_CAP: usize = 12;

/// The operators of one truncated space.
///
/// Ladder, position and momentum operators are held in both the `ABCD` and
/// `xyzn` occupational bases; `E` is held spectrally.
#[derive(Clone, Debug)]
pub struct QuadratureSet {
    space: Arc<FockSpace>,
    /// `A_x, A_y, A_z, A_n` in the ABCD basis.
    pub a: [FockOperator; 4],
    pub x: FockOperator,
    pub y: FockOperator,
    pub z: FockOperator,
    pub px: FockOperator,
    pub py: FockOperator,
    pub pz: FockOperator,
    /// `A_n† A_n`
    pub an_number: FockOperator,
    /// `Px² + Py² + Pz²` in the ABCD basis.
    pub e2: FockOperator,
    xyzn_pos: [FockOperator; 3],
    xyzn_mom: [FockOperator; 3],
    e2_xyzn: FockOperator,
    energy: Option<EnergyOperator>,
}

/// `X = (L + L†)/√2`, `P = −i(L − L†)/√2`.
fn quadrature_pair(l: &FockOperator) -> (FockOperator, FockOperator) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ld = l.adjoint();
    let x = l.lincomb(c(s), &ld, c(s));
    let p = l.lincomb(-I * s, &ld, I * s);
    (x, p)
}

pub fn build_quadratures(space: &Arc<FockSpace>) -> Result<QuadratureSet> {
    build_quadratures_with_cap(space, DENSE_EIGEN_CAP)
}

/// As [`build_quadratures`] with an explicit cap for the spectral `E`.
pub fn build_quadratures_with_cap(space: &Arc<FockSpace>, dense_cap: usize) -> Result<QuadratureSet> {
    if space.modes() != 4 {
        return Err(Error::Validation("quadratures need the four-mode space".into()));
    }
    // A_k = Σ_j M_kj A_j, as matrices on the ABCD occupational basis
    let a: Vec<FockOperator> = (0..4)
        .map(|k| mode_operator(space, ModeBasis::Xyzn, k, LadderKind::Annihilate, ModeBasis::Upper))
        .collect::<Result<_>>()?;
    let pairs: Vec<_> = a[..3].iter().map(quadrature_pair).collect();
    let sq = |p: &FockOperator| p.mul(p);
    let e2 = sq(&pairs[0].1).add(&sq(&pairs[1].1)).add(&sq(&pairs[2].1));
    let an_number = a[3].adjoint().mul(&a[3]);

    let ax: Vec<FockOperator> = (0..3)
        .map(|k| crate::fock::ladder_in(space, ModeBasis::Xyzn, k, LadderKind::Annihilate))
        .collect::<Result<_>>()?;
    let xpairs: Vec<_> = ax.iter().map(quadrature_pair).collect();
    let e2_xyzn = sq(&xpairs[0].1).add(&sq(&xpairs[1].1)).add(&sq(&xpairs[2].1));

    let energy = if space.n_max() <= dense_cap {
        Some(EnergyOperator::from_e2_xyzn(&e2_xyzn)?)
    } else {
        None
    };
    let [a0, a1, a2, a3]: [FockOperator; 4] = a.try_into().expect("four modes");
    let mut it = pairs.into_iter();
    let (x, px) = it.next().unwrap();
    let (y, py) = it.next().unwrap();
    let (z, pz) = it.next().unwrap();
    let mut xit = xpairs.into_iter();
    let (x0, p0) = xit.next().unwrap();
    let (x1, p1) = xit.next().unwrap();
    let (x2, p2) = xit.next().unwrap();
    Ok(QuadratureSet {
        space: space.clone(),
        a: [a0, a1, a2, a3],
        x,
        y,
        z,
        px,
        py,
        pz,
        an_number,
        e2,
        xyzn_pos: [x0, x1, x2],
        xyzn_mom: [p0, p1, p2],
        e2_xyzn,
        energy,
    })
}

impl QuadratureSet {
    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }

    /// Spectral energy operator; capability error above the dense cap.
    pub fn energy(&self) -> Result<&EnergyOperator> {
        self.energy.as_ref().ok_or_else(|| {
            Error::Capability(format!(
                "E is unavailable at n_max={} (dense eigen cap)",
                self.space.n_max()
            ))
        })
    }

    pub fn has_energy(&self) -> bool {
        self.energy.is_some()
    }

    /// Position operator `k` (0..3 for x,y,z) on the given occupational basis.
    pub fn position(&self, k: usize, basis: ModeBasis) -> FockOperator {
        match basis {
            ModeBasis::Upper => [&self.x, &self.y, &self.z][k].clone(),
            ModeBasis::Xyzn => self.xyzn_pos[k].clone(),
            ModeBasis::Raw => [&self.x, &self.y, &self.z][k].to_basis(ModeBasis::Raw),
        }
    }

    /// Momentum operator `k` (0..3 for x,y,z) on the given occupational basis.
    pub fn momentum(&self, k: usize, basis: ModeBasis) -> FockOperator {
        match basis {
            ModeBasis::Upper => [&self.px, &self.py, &self.pz][k].clone(),
            ModeBasis::Xyzn => self.xyzn_mom[k].clone(),
            ModeBasis::Raw => [&self.px, &self.py, &self.pz][k].to_basis(ModeBasis::Raw),
        }
    }

    pub(crate) fn momentum_ref(&self, k: usize, basis: ModeBasis) -> Option<&FockOperator> {
        match basis {
            ModeBasis::Upper => Some([&self.px, &self.py, &self.pz][k]),
            ModeBasis::Xyzn => Some(&self.xyzn_mom[k]),
            ModeBasis::Raw => None,
        }
    }

    /// `Px² + Py² + Pz²` on the given occupational basis.
    pub fn e2_in(&self, basis: ModeBasis) -> FockOperator {
        match basis {
            ModeBasis::Upper => self.e2.clone(),
            ModeBasis::Xyzn => self.e2_xyzn.clone(),
            ModeBasis::Raw => self.e2.to_basis(ModeBasis::Raw),
        }
    }

    /// Interior-projected `[X_k, P_k] − i·1`, max entry.
    pub fn canonical_defect(&self, k: usize, depth: usize) -> f64 {
        let x = [&self.x, &self.y, &self.z][k];
        let p = [&self.px, &self.py, &self.pz][k];
        let comm = x.commutator(p).project_interior(depth);
        let id = FockOperator::interior_identity(&self.space, ModeBasis::Upper, depth).scale(I);
        comm.max_abs_diff(&id)
    }
}

/// Total number operator; returns it together with the deviation between
/// `Σ A_k†A_k` over `x,y,z,n` and over `A,B,C,D`.
pub fn total_number(q: &QuadratureSet) -> (FockOperator, f64) {
    let space = q.space();
    let n_upper = number_operator(space, ModeBasis::Upper);
    let mut sum = FockOperator::identity(space, ModeBasis::Upper).scale(C64::new(0.0, 0.0));
    for a in &q.a {
        sum = sum.add(&a.adjoint().mul(a));
    }
    let mut sum_abcd = FockOperator::identity(space, ModeBasis::Upper).scale(C64::new(0.0, 0.0));
    for k in 0..4 {
        let l = crate::fock::ladder_in(space, ModeBasis::Upper, k, LadderKind::Annihilate)
            .expect("four modes");
        sum_abcd = sum_abcd.add(&l.adjoint().mul(&l));
    }
    let dev = sum.max_abs_diff(&sum_abcd).max(sum_abcd.max_abs_diff(&n_upper));
    (n_upper, dev)
}
