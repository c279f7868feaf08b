use nalgebra::DMatrix;

use super::SdmGrid;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{spd_inverse, symmetric_eigenvalues};

/// Grid matrices with a smaller eigenvalue are treated as singular.
const MIN_EIGENVALUE: f64 = 1e-9;

/// Relative factor applied to the largest precision diagonal to obtain the
/// default edge-detection tolerance.
const RELATIVE_EDGE_TOL: f64 = 1e-8;

fn inverse_grid(sdm: &SdmGrid) -> Result<Vec<DMatrix<f64>>> {
    sdm.mats()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let min_eigenvalue = symmetric_eigenvalues(m)[0];
            if min_eigenvalue <= MIN_EIGENVALUE {
                return Err(Error::Conditioning {
                    index: k,
                    min_eigenvalue,
                });
            }
            spd_inverse(m).ok_or(Error::Conditioning {
                index: k,
                min_eigenvalue,
            })
        })
        .collect()
}

fn max_diagonal(inv: &[DMatrix<f64>]) -> f64 {
    inv.iter()
        .flat_map(|m| m.diagonal().iter().copied().collect::<Vec<_>>())
        .fold(0.0, f64::max)
}

/// `1e-8 · max_k max_r (S(θ_k)^{-1})_{rr}`.
pub fn default_edge_tolerance(sdm: &SdmGrid) -> Result<f64> {
    Ok(RELATIVE_EDGE_TOL * max_diagonal(&inverse_grid(sdm)?))
}

/// Reads the conditional independence graph off the zero pattern of the
/// inverse SDM: `(r, r')` is an edge iff `max_k |(S(θ_k)^{-1})_{rr'}| > tol`.
///
/// `tol = None` uses [`default_edge_tolerance`].
pub fn cig_from_inverse_sdm(sdm: &SdmGrid, tol: Option<f64>) -> Result<Graph> {
    let inv = inverse_grid(sdm)?;
    let tol = match tol {
        Some(t) if t < 0.0 || !t.is_finite() => {
            return Err(Error::InvalidInput(format!("edge tolerance {t} must be nonnegative")))
        }
        Some(t) => t,
        None => RELATIVE_EDGE_TOL * max_diagonal(&inv),
    };
    let p = sdm.p();
    let mut graph = Graph::empty(p);
    for a in 0..p {
        for b in (a + 1)..p {
            let peak = inv.iter().map(|m| m[(a, b)].abs()).fold(0.0, f64::max);
            if peak > tol {
                graph.add_edge(a, b)?;
            }
        }
    }
    Ok(graph)
}

/// Per-edge partial spectral coherence and its minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct Coherence {
    pub per_edge: Vec<((usize, usize), f64)>,
    /// `None` when the graph has no edges.
    pub min: Option<f64>,
}

impl Coherence {
    pub fn get(&self, a: usize, b: usize) -> Option<f64> {
        let key = (a.min(b), a.max(b));
        self.per_edge.iter().find(|(e, _)| *e == key).map(|(_, v)| *v)
    }
}

/// Square root of the grid average of
/// `(S^{-1})²_{rr'} / ((S^{-1})_{rr} (S^{-1})_{r'r'})` for every edge of `graph`.
pub fn partial_coherence(sdm: &SdmGrid, graph: &Graph) -> Result<Coherence> {
    if graph.p() != sdm.p() {
        return Err(Error::DimensionMismatch {
            expected: sdm.p(),
            found: graph.p(),
        });
    }
    let inv = inverse_grid(sdm)?;
    let per_edge: Vec<_> = graph
        .edges()
        .map(|(a, b)| {
            let mean = inv
                .iter()
                .map(|m| m[(a, b)].powi(2) / (m[(a, a)] * m[(b, b)]))
                .sum::<f64>()
                / inv.len() as f64;
            ((a, b), mean.sqrt())
        })
        .collect();
    let min = per_edge.iter().map(|(_, v)| *v).reduce(f64::min);
    Ok(Coherence { per_edge, min })
}
