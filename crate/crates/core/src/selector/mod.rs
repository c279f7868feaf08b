//! The spectral thresholding selector: mirror extension, unitary DFT,
//! pairwise inner-product statistics, per-node argmax and thresholding, and
//! graph assembly. Also hosts the exact covariance oracle for the DFT step.

mod blocks;
mod decode;
mod oracle;

pub use blocks::{dft_rows, mirror_extend, ExtendedBlock, SampleBlock, SpectrumBlock};
pub use decode::{
    select_graph, select_graph_with_threshold, select_neighborhood, threshold, z_statistics,
    NodeDecision, NodeStatistics, SelectionResult,
};
pub use oracle::{
    circulant_extension_covariance, diagonalization_oracle, mirror_extension_covariance,
    DiagonalizationReport, ORACLE_LIMIT,
};
