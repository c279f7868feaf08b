use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dft_rows, mirror_extend, SampleBlock, SpectrumBlock};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Inner products `Z(r') = x̂_rᵀ x̂_r'` of one node against all others.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeStatistics {
    pub node: usize,
    /// Node index of each entry of `z`, ascending.
    pub others: Vec<usize>,
    /// Un-normalized statistics.
    pub z: Vec<f64>,
    /// `2N`; `z / normalizer` estimates `(C)_{r r'}`.
    pub normalizer: f64,
}

pub fn z_statistics(spectrum: &SpectrumBlock, r: usize) -> Result<NodeStatistics> {
    let p = spectrum.p();
    if r >= p {
        return Err(Error::InvalidInput(format!("node {r} out of range for p = {p}")));
    }
    let xr = spectrum.row(r);
    let others: Vec<usize> = (0..p).filter(|&c| c != r).collect();
    let z = others
        .iter()
        .map(|&c| xr.iter().zip(spectrum.row(c)).map(|(a, b)| a * b).sum())
        .collect();
    Ok(NodeStatistics {
        node: r,
        others,
        z,
        normalizer: spectrum.len() as f64,
    })
}

/// Position of `argmax |z|` (smallest position on ties), kept only when
/// `|z| ≥ eta`.
pub fn select_neighborhood(z: &[f64], eta: f64) -> Result<Option<usize>> {
    if !(eta > 0.0) {
        return Err(Error::InvalidInput(format!("threshold {eta} must be positive")));
    }
    let (best, zmax) = argmax_abs(z)?;
    Ok((zmax >= eta).then_some(best))
}

fn argmax_abs(z: &[f64]) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in z.iter().enumerate() {
        let a = v.abs();
        if best.is_none_or(|(_, m)| a > m) {
            best = Some((i, a));
        }
    }
    best.ok_or_else(|| Error::InvalidInput("no candidate neighbors (p = 1)".into()))
}

/// Un-normalized threshold `η = 2N · ρ_min / (2B)`.
pub fn threshold(n: usize, rho_min: f64, b: f64) -> f64 {
    2.0 * n as f64 * rho_min / (2.0 * b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeDecision {
    pub r: usize,
    /// Maximizing neighbor candidate.
    pub rhat: usize,
    /// `|Z(r̂)|`, un-normalized.
    pub zmax: f64,
    pub eta: f64,
    /// Whether `r̂` passed the threshold.
    pub kept: bool,
}

/// Selected graph plus the raw per-node decisions.
///
/// Serializes as the graph JSON with an extra `per_node` array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    #[serde(flatten)]
    pub graph: Graph,
    pub per_node: Vec<NodeDecision>,
}

/// Runs the selector with `η = 2N · ρ_min / (2B)` and OR-symmetrization.
pub fn select_graph(x: &SampleBlock, rho_min: f64, b: f64) -> Result<SelectionResult> {
    if !(rho_min > 0.0 && rho_min < 1.0) {
        return Err(Error::Domain(format!("rho_min = {rho_min} not in (0, 1)")));
    }
    if !(b >= 1.0) || !b.is_finite() {
        return Err(Error::Domain(format!("B = {b} must be finite and at least 1")));
    }
    select_graph_with_threshold(x, threshold(x.n(), rho_min, b))
}

/// Same as [`select_graph`] with an explicit un-normalized threshold.
pub fn select_graph_with_threshold(x: &SampleBlock, eta: f64) -> Result<SelectionResult> {
    if !(eta > 0.0) {
        return Err(Error::InvalidInput(format!("threshold {eta} must be positive")));
    }
    let spectrum = dft_rows(&mirror_extend(x)?)?;
    let per_node = (0..x.p())
        .into_par_iter()
        .map(|r| {
            let stats = z_statistics(&spectrum, r)?;
            let (pos, zmax) = argmax_abs(&stats.z)?;
            Ok(NodeDecision {
                r,
                rhat: stats.others[pos],
                zmax,
                eta,
                kept: zmax >= eta,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut graph = Graph::empty(x.p());
    for d in per_node.iter().filter(|d| d.kept) {
        graph.add_edge(d.r, d.rhat)?;
    }
    Ok(SelectionResult { graph, per_node })
}
