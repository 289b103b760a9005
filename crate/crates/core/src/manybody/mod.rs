//! Several objects: parabose Green components over an M-fold product of
//! tensor spaces, the equal-label interaction, evolution with entanglement
//! diagnostics, the second-layer field space and propagator, the
//! correspondence quantizer and the electromagnetic coupling term.

mod em;
mod green;
mod layer2;
mod multi;
mod quantize;

pub use em::{em_demo, EmResidual};
pub use green::{build_green_components, exchange_sign, GreenComponentOperator, ObjectRegistry, MULTI_DIM_CAP};
pub use layer2::{propagator, LayerTwoSpace, Propagator};
pub use multi::{
    evolve_interacting, free_multibody_check, interaction_apply, interaction_operator_apply, MultiObjectState,
    Weight, MULTI_DENSE_CAP,
};
pub use quantize::{quantize_expression, Factor, FieldExpr, QuantizedEvaluator, Term};
