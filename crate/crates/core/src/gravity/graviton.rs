use super::SpinorMetric;
use crate::dynamics::{klein_gordon_residual, KgResidual};
use crate::error::{Error, Result};
use crate::fock::StateVector;
use crate::linalg::c;
use crate::modeops::QuadratureSet;
use crate::spatial::{coefficients_to_wavefield, Grid3, WaveField};

/// `|Ψ_g⟩ = Σ ψ(N)|N⟩ ⊗ g^{μν}_χ`
#[derive(Clone, Debug)]
pub struct GravitonState {
    pub state: StateVector,
    pub metric: SpinorMetric,
}

/// Pairs a normalized state with a metric.
pub fn build_graviton(state: &StateVector, m: &SpinorMetric) -> Result<GravitonState> {
    if !state.is_normalized(1e-10) {
        return Err(Error::Validation(format!("graviton state norm {} is not 1", state.norm())));
    }
    Ok(GravitonState::from_parts(state.clone(), *m))
}

impl GravitonState {
    /// No normalization check; used for zero and rescaled inputs.
    pub fn from_parts(state: StateVector, metric: SpinorMetric) -> Self {
        GravitonState { state, metric }
    }

    /// `g^{μν}_χ ψ(N)` as a plain state.
    pub fn component(&self, mu: usize, nu: usize) -> StateVector {
        self.state.scaled(c(self.metric.get(mu, nu)))
    }

    /// `Σ ψ(N_xyzn) f_N(x) g^{μν}_χ` on the grid.
    pub fn component_wavefield(&self, grid: &Grid3, mu: usize, nu: usize) -> Result<WaveField> {
        Ok(coefficients_to_wavefield(&self.state, grid)?.scaled(c(self.metric.get(mu, nu))))
    }

    pub fn is_zero(&self) -> bool {
        self.metric.is_zero() || self.state.amplitudes().iter().all(|z| z.norm() == 0.0)
    }

    /// Klein–Gordon residual of the `(μ,ν)` component. The metric factor is
    /// constant, so this is the scalar residual with `max|Ψ|` scaled; a zero
    /// component has zero residual.
    pub fn klein_gordon_residual(
        &self,
        q: &QuadratureSet,
        t: f64,
        dt: f64,
        grid: &Grid3,
        mu: usize,
        nu: usize,
    ) -> Result<KgResidual> {
        let r = klein_gordon_residual(q, &self.state, t, dt, grid)?;
        let g = self.metric.get(mu, nu).abs();
        if g == 0.0 {
            return Ok(KgResidual {
                residual: 0.0,
                full_residual: 0.0,
                psi_max: 0.0,
            });
        }
        Ok(KgResidual {
            psi_max: r.psi_max * g,
            ..r
        })
    }
}
