use crate::error::{Error, Result};
use crate::linalg::C64;
use nalgebra::DMatrix;

/// Truth values of an alternative with `n` (even) real components.
#[derive(Clone, Debug, PartialEq)]
pub struct GenericAlternativeState {
    pub phi: Vec<f64>,
}

impl GenericAlternativeState {
    pub fn new(phi: Vec<f64>) -> Result<Self> {
        if phi.is_empty() || phi.len() % 2 != 0 {
            return Err(Error::Validation(format!("need an even number of components, got {}", phi.len())));
        }
        if phi.iter().any(|x| !x.is_finite()) {
            return Err(Error::Validation("non-finite component".into()));
        }
        Ok(GenericAlternativeState { phi })
    }

    /// From the paired form `φ̃_j = φ_{2j−1} + iφ_{2j}`.
    pub fn from_complex(tilde: &[C64]) -> Result<Self> {
        Self::new(tilde.iter().flat_map(|z| [z.re, z.im]).collect())
    }

    pub fn complex(&self) -> Vec<C64> {
        self.phi.chunks(2).map(|p| C64::new(p[0], p[1])).collect()
    }

    pub fn norm(&self) -> f64 {
        self.phi.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// `H_kl = Σ_j ω_j κ^j_kl` with `κ^j = +1` at `(2j−1, 2j)` and `−1` at
/// `(2j, 2j−1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockRotationGenerator {
    pub omegas: Vec<f64>,
}

impl BlockRotationGenerator {
    pub fn new(omegas: Vec<f64>) -> Result<Self> {
        if omegas.iter().any(|x| !x.is_finite()) {
            return Err(Error::Validation("non-finite frequency".into()));
        }
        Ok(BlockRotationGenerator { omegas })
    }

    /// The real antisymmetric `n×n` matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = 2 * self.omegas.len();
        let mut h = DMatrix::zeros(n, n);
        for (j, &w) in self.omegas.iter().enumerate() {
            h[(2 * j, 2 * j + 1)] = w;
            h[(2 * j + 1, 2 * j)] = -w;
        }
        h
    }

    /// The diagonal `H̃ = diag(ω)` acting on the paired form.
    pub fn complex_diagonal(&self) -> Vec<f64> {
        self.omegas.clone()
    }

    fn check(&self, s: &GenericAlternativeState) -> Result<()> {
        if s.phi.len() != 2 * self.omegas.len() {
            return Err(Error::Validation(format!(
                "state has {} components, generator expects {}",
                s.phi.len(),
                2 * self.omegas.len()
            )));
        }
        Ok(())
    }

    /// `∂_t φ = Hφ` solved with the matrix exponential of the real block form.
    pub fn evolve_real(&self, s: &GenericAlternativeState, t: f64) -> Result<GenericAlternativeState> {
        self.check(s)?;
        let u = (self.matrix() * t).exp();
        let v = u * nalgebra::DVector::from_column_slice(&s.phi);
        GenericAlternativeState::new(v.iter().copied().collect())
    }
}

/// `φ̃(t) = e^{−iH̃t} φ̃(0)`: each pair picks up the phase `e^{−iω_j t}`.
pub fn evolve_generic(g: &BlockRotationGenerator, s: &GenericAlternativeState, t: f64) -> Result<GenericAlternativeState> {
    g.check(s)?;
    let out: Vec<C64> = s
        .complex()
        .iter()
        .zip(&g.omegas)
        .map(|(z, w)| z * C64::new(0.0, -w * t).exp())
        .collect();
    GenericAlternativeState::from_complex(&out)
}
