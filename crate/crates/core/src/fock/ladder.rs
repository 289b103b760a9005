use super::{mixing_between, FockOperator, FockSpace, ModeBasis};
use crate::error::{Error, Result};
use crate::linalg::{c, C64};
use crate::sparse::CsrMatrix;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LadderKind {
    Annihilate,
    Create,
}

/// Plain ladder matrix of `mode` in the occupational basis of `basis`.
///
/// The creator drops rows that would leave the truncated space.
pub fn ladder_in(space: &Arc<FockSpace>, basis: ModeBasis, mode: usize, kind: LadderKind) -> Result<FockOperator> {
    if mode >= space.modes() {
        return Err(Error::Validation(format!(
            "mode index {mode} out of range for {} modes",
            space.modes()
        )));
    }
    Ok(FockOperator::from_parts(space, basis, raw_ladder_matrix(space, mode, kind)))
}

pub(crate) fn raw_ladder_matrix(space: &FockSpace, mode: usize, kind: LadderKind) -> CsrMatrix {
    let dim = space.dim();
    // annihilator: column i (occupation n) has entry sqrt(n) at row i-1
    let mut trip = Vec::new();
    for i in 0..dim {
        let n = space.occ(i)[mode] as f64;
        if n > 0.0 {
            let j = space.shifted(i, mode, -1).expect("lowered state is inside the truncation");
            match kind {
                LadderKind::Annihilate => trip.push((j, i, c(n.sqrt()))),
                LadderKind::Create => trip.push((i, j, c(n.sqrt()))),
            }
        }
    }
    CsrMatrix::from_triplets(dim, dim, trip)
}

/// Raw-mode ladder operator, mode index 0..3 for `a,b,c,d`.
pub fn ladder(space: &Arc<FockSpace>, mode: usize, kind: LadderKind) -> Result<FockOperator> {
    ladder_in(space, ModeBasis::Raw, mode, kind)
}

/// Ladder operator of mode `mode` of the set `of`, written as a matrix on
/// the occupational basis of `on`.
pub fn mode_operator(
    space: &Arc<FockSpace>,
    of: ModeBasis,
    mode: usize,
    kind: LadderKind,
    on: ModeBasis,
) -> Result<FockOperator> {
    if space.modes() != 4 || mode >= 4 {
        return Err(Error::Validation("mode operators need the four-mode space and index < 4".into()));
    }
    if of == on {
        return ladder_in(space, on, mode, kind);
    }
    let u = mixing_between(on, of);
    let mut acc = CsrMatrix::zeros(space.dim(), space.dim());
    for j in 0..4 {
        let coef = match kind {
            LadderKind::Annihilate => u[(mode, j)],
            LadderKind::Create => u[(mode, j)].conj(),
        };
        if coef.norm() == 0.0 {
            continue;
        }
        acc = acc.lincomb(c(1.0), &raw_ladder_matrix(space, j, kind), coef);
    }
    Ok(FockOperator::from_parts(space, on, acc))
}

/// `A, B, C, D` (index 0..3) as combinations of the raw ladder matrices.
pub fn ladder_abcd(space: &Arc<FockSpace>, mode: usize, kind: LadderKind) -> Result<FockOperator> {
    mode_operator(space, ModeBasis::Upper, mode, kind, ModeBasis::Raw)
}

/// Total number operator, diagonal in every occupational basis.
pub fn number_operator(space: &Arc<FockSpace>, basis: ModeBasis) -> FockOperator {
    let d: Vec<C64> = (0..space.dim()).map(|i| c(space.total(i) as f64)).collect();
    FockOperator::from_parts(space, basis, CsrMatrix::diagonal(&d))
}
