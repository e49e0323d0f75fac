pub mod fischer;
pub mod jack;
pub mod kernel;

pub use fischer::{exp_kernel, fischer_apply, fischer_inner, mono_norm};
pub use jack::{jack_p, jack_phi_tilde, phi_tilde_table, reduce_rank, TraceCoordinatePoly};
pub use kernel::{
    h_power_series, hks_labels, hks_project, hks_project_conj, repkernel_k, schur_prime, trace_eval, weighted_inner,
    weighted_inner_default,
};
