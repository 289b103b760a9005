//! Metrics built from ur-spinors, graviton states and the vacuum field
//! equation as a term list, evaluated classically and on graviton states.
//!
//! Inside the quantized terms indices are raised and lowered with the flat
//! `η`; a single spinor metric has rank at most 2 and no inverse.

mod graviton;
mod metric;
mod ricci;

pub use graviton::{build_graviton, GravitonState};
pub use metric::{build_metric, long_form_term_counts, SpinorMetric, ETA, LONGFORM_CORRECTIONS};
pub use ricci::{
    classical_ricci_field, classical_ricci_oracle, evaluate_quantized_ricci, evaluate_terms_classical,
    evaluate_with_terms, metric_jet, ricci_asymmetry, ricci_terms, MetricField, MetricJet, QuantizedRicci,
    RicciAsymmetry, RicciFactor, RicciTerm, RicciTermList, INDEX_LETTERS,
};
