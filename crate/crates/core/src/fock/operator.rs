use super::{FockSpace, ModeBasis, StateVector};
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::sparse::CsrMatrix;
use std::sync::Arc;

/// Sparse operator on a truncated Fock space, tagged with its mode basis.
#[derive(Clone, Debug)]
pub struct FockOperator {
    space: Arc<FockSpace>,
    basis: ModeBasis,
    mat: CsrMatrix,
    hermitian: bool,
    real: bool,
}

impl FockOperator {
    pub fn new(space: &Arc<FockSpace>, basis: ModeBasis, mat: CsrMatrix) -> Result<Self> {
        if mat.nrows() != space.dim() || mat.ncols() != space.dim() {
            return Err(Error::Validation(format!(
                "operator shape {}x{} does not match dim {}",
                mat.nrows(),
                mat.ncols(),
                space.dim()
            )));
        }
        Ok(Self::from_parts(space, basis, mat))
    }

    pub(crate) fn from_parts(space: &Arc<FockSpace>, basis: ModeBasis, mat: CsrMatrix) -> Self {
        let hermitian = mat.hermitian_defect() <= 1e-12;
        let real = mat.is_real(1e-14);
        FockOperator {
            space: space.clone(),
            basis,
            mat,
            hermitian,
            real,
        }
    }

    pub fn identity(space: &Arc<FockSpace>, basis: ModeBasis) -> Self {
        Self::from_parts(space, basis, CsrMatrix::identity(space.dim()))
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }
    pub fn basis(&self) -> ModeBasis {
        self.basis
    }
    pub fn matrix(&self) -> &CsrMatrix {
        &self.mat
    }
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }
    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        if **s.space() != *self.space || s.basis() != self.basis {
            return Err(Error::Validation(format!(
                "operator in {} basis applied to state in {} basis",
                self.basis.name(),
                s.basis().name()
            )));
        }
        Ok(s.with_amplitudes(self.basis, self.mat.matvec(s.amplitudes())))
    }

    fn same(&self, o: &FockOperator) {
        assert!(
            *self.space == *o.space && self.basis == o.basis,
            "operators in different spaces or bases"
        );
    }

    pub fn mul(&self, o: &FockOperator) -> FockOperator {
        self.same(o);
        Self::from_parts(&self.space, self.basis, self.mat.matmul(&o.mat))
    }

    pub fn add(&self, o: &FockOperator) -> FockOperator {
        self.same(o);
        Self::from_parts(&self.space, self.basis, self.mat.add(&o.mat))
    }

    pub fn sub(&self, o: &FockOperator) -> FockOperator {
        self.same(o);
        Self::from_parts(&self.space, self.basis, self.mat.sub(&o.mat))
    }

    pub fn lincomb(&self, a: C64, o: &FockOperator, b: C64) -> FockOperator {
        self.same(o);
        Self::from_parts(&self.space, self.basis, self.mat.lincomb(a, &o.mat, b))
    }

    pub fn scale(&self, s: C64) -> FockOperator {
        Self::from_parts(&self.space, self.basis, self.mat.scale(s))
    }

    pub fn adjoint(&self) -> FockOperator {
        Self::from_parts(&self.space, self.basis, self.mat.adjoint())
    }

    pub fn commutator(&self, o: &FockOperator) -> FockOperator {
        self.same(o);
        Self::from_parts(&self.space, self.basis, self.mat.commutator(&o.mat))
    }

    /// Restriction to basis states with total occupation `<= n_max - depth`
    /// on both sides.
    pub fn project_interior(&self, depth: usize) -> FockOperator {
        let keep = self.space.interior(depth);
        Self::from_parts(
            &self.space,
            self.basis,
            self.mat.restrict(|r| keep[r], |c| keep[c]),
        )
    }

    /// Interior-projected identity.
    pub fn interior_identity(space: &Arc<FockSpace>, basis: ModeBasis, depth: usize) -> FockOperator {
        FockOperator::identity(space, basis).project_interior(depth)
    }

    pub fn max_abs_diff(&self, o: &FockOperator) -> f64 {
        self.same(o);
        self.mat.max_abs_diff(&o.mat)
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.mat.hermitian_defect()
    }

    /// The same operator in another mode basis, `Γ O Γ†`.
    pub fn to_basis(&self, target: ModeBasis) -> FockOperator {
        if target == self.basis {
            return self.clone();
        }
        let t = super::basis_transform(&self.space, self.basis, target);
        let m = t.matmul(&self.mat).matmul(&t.adjoint()).pruned(1e-15);
        Self::from_parts(&self.space, target, m)
    }
}
