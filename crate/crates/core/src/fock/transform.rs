use super::{mixing_between, FockOperator, FockSpace, ModeBasis, StateVector};
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{c, expm_hermitian, unitarity_defect, unitary_log, C64, I};
use crate::sparse::CsrMatrix;
use nalgebra::DMatrix;
use std::sync::Arc;

/// Induced Fock-space unitary `Γ(u)` of a one-mode unitary `u`.
///
/// The one-particle sector acts as `u` itself, so `Γ(u) L_j† Γ(u)† =
/// Σ_i u_ij L_i†` and `Γ(u)† L_i Γ(u) = Σ_j u_ij L_j`. Built by lifting the
/// principal logarithm of `u` to the quadratic generator `Σ G_ij L_i† L_j`
/// and exponentiating it sector by sector, which keeps the result unitary
/// on the full truncated space.
pub fn mode_transform(space: &Arc<FockSpace>, u: &DMatrix<C64>) -> Result<FockOperator> {
    let m = mode_transform_matrix(space, u)?;
    Ok(FockOperator::from_parts(space, ModeBasis::Raw, m))
}

pub(crate) fn mode_transform_matrix(space: &FockSpace, u: &DMatrix<C64>) -> Result<CsrMatrix> {
    let k = space.modes();
    if u.nrows() != k || u.ncols() != k {
        return Err(Error::Validation(format!(
            "mode matrix is {}x{}, space has {k} modes",
            u.nrows(),
            u.ncols()
        )));
    }
    let defect = unitarity_defect(u);
    if defect > 1e-10 {
        return Err(Error::Validation(format!("mode matrix is not unitary (defect {defect:.3e})")));
    }
    let g = unitary_log(u)?;
    let dim = space.dim();
    let mut sectors: Vec<Vec<usize>> = vec![Vec::new(); space.n_max() + 1];
    for i in 0..dim {
        sectors[space.total(i)].push(i);
    }
    let blocks = exec::map_slice(&sectors, |idx| sector_exponential(space, &g, idx));
    let mut trip = Vec::new();
    for (idx, block) in sectors.iter().zip(blocks) {
        for (r, &gr) in idx.iter().enumerate() {
            for (col, &gc) in idx.iter().enumerate() {
                let v = block[(r, col)];
                if v.norm() > 1e-15 {
                    trip.push((gr, gc, v));
                }
            }
        }
    }
    Ok(CsrMatrix::from_triplets(dim, dim, trip))
}

fn sector_exponential(space: &FockSpace, g: &DMatrix<C64>, idx: &[usize]) -> DMatrix<C64> {
    let n = idx.len();
    let k = space.modes();
    let mut local = std::collections::HashMap::with_capacity(n);
    for (p, &i) in idx.iter().enumerate() {
        local.insert(i, p);
    }
    // H = i·dΓ(G), Hermitian
    let mut h = DMatrix::<C64>::zeros(n, n);
    for (col, &i) in idx.iter().enumerate() {
        let occ = space.occ(i);
        for j in 0..k {
            let nj = occ[j] as f64;
            if nj == 0.0 {
                continue;
            }
            for t in 0..k {
                let gij = g[(t, j)];
                if gij.norm() == 0.0 {
                    continue;
                }
                if t == j {
                    h[(col, col)] += I * gij * nj;
                } else {
                    let target = space.shifted(i, j, -1).and_then(|m| space.shifted(m, t, 1));
                    if let Some(m) = target {
                        let amp = (nj * (occ[t] as f64 + 1.0)).sqrt();
                        h[(local[&m], col)] += I * gij * amp;
                    }
                }
            }
        }
    }
    // symmetrize away rounding so the eigen solver sees an exact Hermitian input
    let h = (&h + h.adjoint()).map(|z| z * c(0.5));
    expm_hermitian(&h, 1.0)
}

/// Coefficient-vector map from basis `from` to basis `to`.
pub fn basis_transform(space: &Arc<FockSpace>, from: ModeBasis, to: ModeBasis) -> CsrMatrix {
    use ModeBasis::*;
    let r2u = || {
        space
            .cache
            .raw_to_upper
            .get_or_init(|| build(space, Raw, Upper))
            .clone()
    };
    let u2x = || {
        space
            .cache
            .upper_to_xyzn
            .get_or_init(|| build(space, Upper, Xyzn))
            .clone()
    };
    match (from, to) {
        (a, b) if a == b => CsrMatrix::identity(space.dim()),
        (Raw, Upper) => r2u(),
        (Upper, Raw) => r2u().adjoint(),
        (Upper, Xyzn) => u2x(),
        (Xyzn, Upper) => u2x().adjoint(),
        (Raw, Xyzn) => u2x().matmul(&r2u()),
        (Xyzn, Raw) => r2u().adjoint().matmul(&u2x().adjoint()),
        _ => unreachable!(),
    }
}

fn build(space: &FockSpace, from: ModeBasis, to: ModeBasis) -> CsrMatrix {
    mode_transform_matrix(space, &mixing_between(from, to)).expect("fixed mixing matrices are unitary")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    AbcdToXyzn,
    XyznToAbcd,
}

/// Re-expresses a normalized state between the `ABCD` and `xyzn` bases.
pub fn change_basis_xyzn(state: &StateVector, direction: Direction) -> Result<StateVector> {
    if !state.is_normalized(1e-10) {
        return Err(Error::Validation("change_basis_xyzn expects a normalized state".into()));
    }
    let (from, to) = match direction {
        Direction::AbcdToXyzn => (ModeBasis::Upper, ModeBasis::Xyzn),
        Direction::XyznToAbcd => (ModeBasis::Xyzn, ModeBasis::Upper),
    };
    if state.basis() != from {
        return Err(Error::Validation(format!(
            "state is in the {} basis, expected {}",
            state.basis().name(),
            from.name()
        )));
    }
    Ok(state.to_basis(to))
}
