//! Truncated Fock-space representation of multimode bosonic states, the
//! operator algebra on it, and the factory for every state family used in
//! the test corpus.

mod basis;
mod factory;
mod leakage;
mod operators;
mod state;

pub use basis::{dim_cap, FockBasis, DEFAULT_DIM_CAP};
pub use factory::{
    build_state, build_state_unchecked, default_cutoff, displaced, BuiltState, StateKind,
    StateSpec, FACTORY_LEAKAGE_TOL,
};
pub use leakage::{
    leakage_report, leakage_report_for_spec, with_increased_cutoff, LeakageReport,
    DEFAULT_CUTOFF_DELTA, LEAKAGE_FLAG_THRESHOLD,
};
pub use operators::{
    annihilation_block, annihilation_op, apply_single_mode_to_vector,
    apply_two_mode_to_vector, creation_op,
    displacement_generator, embed_single_mode, embed_two_mode, mean_photon, mean_photon_mode,
    mean_photon_pure, number_op, partial_trace, quadrature_ops, squeeze_generator, tensor_density,
    tensor_pure, total_number_op,
};
pub use state::{DensityMatrix, FockState, APPLIED_NORM_TOL, FACTORY_NORM_TOL};
