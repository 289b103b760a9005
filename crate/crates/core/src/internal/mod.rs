//! Ur-spinors, the Majorana construction and its four-vector, the internal
//! state `Γ = Ω⊗Φ`, and the Dirac operators on Fock ⊗ internal states.

mod dirac_ops;
mod spinor;
mod state;

pub use dirac_ops::{dirac_hamiltonian, dirac_kernel, dirac_singular_values, lambda_extended, lambda_operator, DiracKernel, DiracKernelSummary};
pub use spinor::{minkowski_dot, printed_vector_components, spinor_to_vector, MajoranaSpinor, UrSpinor};
pub use state::{build_internal, lift_dirac, ExtendedState, InternalState, SpinSlot};
