use super::{FockSpace, ModeBasis, Occupation};
use crate::error::{Error, Result};
use crate::linalg::{inner, vec_norm, C64};
use std::sync::Arc;

/// Amplitudes `ψ(N)` over the ranked truncated basis of one mode convention.
#[derive(Clone, Debug)]
pub struct StateVector {
    space: Arc<FockSpace>,
    basis: ModeBasis,
    amp: Vec<C64>,
}

impl StateVector {
    pub fn from_amplitudes(space: &Arc<FockSpace>, basis: ModeBasis, amp: Vec<C64>) -> Result<Self> {
        if amp.len() != space.dim() {
            return Err(Error::Validation(format!(
                "amplitude length {} does not match dim {}",
                amp.len(),
                space.dim()
            )));
        }
        if amp.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Validation("non-finite amplitude".into()));
        }
        Ok(StateVector {
            space: space.clone(),
            basis,
            amp,
        })
    }

    pub fn zeros(space: &Arc<FockSpace>, basis: ModeBasis) -> Self {
        StateVector {
            space: space.clone(),
            basis,
            amp: vec![C64::new(0.0, 0.0); space.dim()],
        }
    }

    pub fn vacuum(space: &Arc<FockSpace>, basis: ModeBasis) -> Self {
        let mut s = Self::zeros(space, basis);
        s.amp[0] = C64::new(1.0, 0.0);
        s
    }

    pub fn basis_state(space: &Arc<FockSpace>, basis: ModeBasis, n: Occupation) -> Result<Self> {
        let i = space
            .rank(n)
            .ok_or_else(|| Error::Validation(format!("{:?} outside truncation n_max={}", n.0, space.n_max())))?;
        let mut s = Self::zeros(space, basis);
        s.amp[i] = C64::new(1.0, 0.0);
        Ok(s)
    }

    /// Superposition from `(occupation, amplitude)` pairs.
    pub fn from_terms(space: &Arc<FockSpace>, basis: ModeBasis, terms: &[(Occupation, C64)]) -> Result<Self> {
        let mut s = Self::zeros(space, basis);
        for (n, a) in terms {
            let i = space
                .rank(*n)
                .ok_or_else(|| Error::Validation(format!("{:?} outside truncation", n.0)))?;
            s.amp[i] += a;
        }
        Ok(s)
    }

    pub fn space(&self) -> &Arc<FockSpace> {
        &self.space
    }
    pub fn basis(&self) -> ModeBasis {
        self.basis
    }
    pub fn amplitudes(&self) -> &[C64] {
        &self.amp
    }
    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amp
    }
    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amp
    }

    pub fn amplitude(&self, n: Occupation) -> C64 {
        self.space
            .rank(n)
            .map(|i| self.amp[i])
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amp)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::Validation("cannot normalize the zero vector".into()));
        }
        Ok(self.scaled(C64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, s: C64) -> Self {
        let mut out = self.clone();
        out.amp.iter_mut().for_each(|z| *z *= s);
        out
    }

    /// `α·self + β·other`.
    pub fn lincomb(&self, alpha: C64, other: &StateVector, beta: C64) -> Result<Self> {
        self.check_compatible(other)?;
        let amp = self
            .amp
            .iter()
            .zip(&other.amp)
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        Ok(StateVector {
            space: self.space.clone(),
            basis: self.basis,
            amp,
        })
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.check_compatible(other)?;
        Ok(inner(&self.amp, &other.amp))
    }

    pub fn check_compatible(&self, other: &StateVector) -> Result<()> {
        if *self.space != *other.space {
            return Err(Error::Validation("states live in different spaces".into()));
        }
        if self.basis != other.basis {
            return Err(Error::Validation(format!(
                "basis mismatch: {} vs {}",
                self.basis.name(),
                other.basis.name()
            )));
        }
        Ok(())
    }

    pub(crate) fn with_amplitudes(&self, basis: ModeBasis, amp: Vec<C64>) -> Self {
        debug_assert_eq!(amp.len(), self.space.dim());
        StateVector {
            space: self.space.clone(),
            basis,
            amp,
        }
    }

    /// Expresses the same state in another mode basis.
    pub fn to_basis(&self, target: ModeBasis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let t = super::basis_transform(&self.space, self.basis, target);
        self.with_amplitudes(target, t.matvec(&self.amp))
    }

    /// Largest component difference to another state in the same basis.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        crate::linalg::vec_max_abs_diff(&self.amp, &other.amp)
    }
}
