//! Rayleigh-Schrodinger expansions for perturbed oscillators `a+a + t P`,
//! the relative-spectrum substitution `t -> hbar t`, an independent
//! Brillouin-Wigner oracle, and Borel/Gevrey diagnostics.

mod gevrey;
mod oracle;
mod rs;

pub use gevrey::{
    borel_sequence, gevrey_estimate, BorelSequence, CoefficientSequence, GevreyFit, GEVREY_MIN_POINTS,
};
pub use oracle::matrix_oracle;
pub use rs::{relative_substitute, rs_expand, rs_expand_series, EigenJet};
