//! Synthesizable processes with known conditional independence graphs:
//! filtered white noise driven by matched-pair innovations, the single-edge
//! ensemble used for the minimax lower bound, and a seeded exact sampler.

mod fano;
mod filter;
mod innovations;
mod sampler;
mod spec;

pub use fano::{build_fano_ensemble, corrected_shrinkage, FanoEnsemble};
pub use filter::FilterSpec;
pub use innovations::{InnovationCovariance, PairBlock};
pub use sampler::sample;
pub use spec::{
    acf_of_spec, build_matching_process, exact_covariance, full_matching, half_matching,
    ProcessKind, ProcessSpec, EXACT_COVARIANCE_LIMIT,
};
