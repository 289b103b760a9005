//! Position, momentum, number and energy operators built from the mode
//! ladder operators, and the four-momentum action on states.

mod energy;
mod momentum;
mod quadratures;

pub use energy::EnergyOperator;
pub use momentum::{apply_four_momentum, momentum_coefficients, momentum_signs};
pub use quadratures::{build_quadratures, build_quadratures_with_cap, total_number, QuadratureSet, DENSE_EIGEN_CAP};
