//! Model vocabulary: autocovariance sequences, sampled spectral density
//! matrices, class parameters and the spectral functionals built on them.

mod acf;
mod class;
mod coherence;
mod sdm;

pub use acf::{acf_moment, Acf};
pub use class::{ClassMembership, ClassParams};
pub use coherence::{cig_from_inverse_sdm, default_edge_tolerance, partial_coherence, Coherence};
pub use sdm::{eigen_band, sdm_from_acf, EigenBand, SdmGrid, ANALYSIS_GRID};
