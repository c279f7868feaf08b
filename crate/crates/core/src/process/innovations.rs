use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One matched pair `(a, b)` of the innovation precision with its 2×2 block
/// `[[d_a, off], [off, d_b]]` (the diagonal entries live in the owning
/// [`InnovationCovariance`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairBlock {
    pub a: usize,
    pub b: usize,
    pub off: f64,
}

/// Innovation covariance `C` whose precision `C^{-1}` has at most one nonzero
/// off-diagonal entry per row.
///
/// Stored as the precision diagonal plus the matched pairs, so every quantity
/// (covariance, eigenvalues, sampling factor) has a closed 1×1 / 2×2 form.
#[derive(Debug, Clone, PartialEq)]
pub struct InnovationCovariance {
    precision_diag: Vec<f64>,
    pairs: Vec<PairBlock>,
}

impl InnovationCovariance {
    /// Precision `s^{-1}·P` with unit-diagonal `P` carrying `kappa[i]` on pair `i`.
    pub fn matched(p: usize, pairs: &[(usize, usize)], kappa: &[f64], scale: f64) -> Result<Self> {
        if pairs.len() != kappa.len() {
            return Err(Error::DimensionMismatch {
                expected: pairs.len(),
                found: kappa.len(),
            });
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidInput(format!("scale {scale} must be positive")));
        }
        if let Some(k) = kappa.iter().find(|k| !(k.abs() < 1.0)) {
            return Err(Error::InvalidInput(format!("|kappa| = {} must be below 1", k.abs())));
        }
        let blocks = pairs
            .iter()
            .zip(kappa)
            .map(|(&(a, b), &k)| PairBlock { a, b, off: k / scale })
            .collect();
        InnovationCovariance::from_precision(vec![1.0 / scale; p], blocks)
    }

    /// General constructor from precision diagonal and pair blocks.
    pub fn from_precision(precision_diag: Vec<f64>, pairs: Vec<PairBlock>) -> Result<Self> {
        let p = precision_diag.len();
        if p == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if let Some(d) = precision_diag.iter().find(|d| !(**d > 0.0) || !d.is_finite()) {
            return Err(Error::InvalidInput(format!("precision diagonal {d} must be positive")));
        }
        let mut used = vec![false; p];
        for blk in &pairs {
            if blk.a == blk.b || blk.a >= p || blk.b >= p {
                return Err(Error::InvalidInput(format!("invalid pair ({}, {})", blk.a, blk.b)));
            }
            if used[blk.a] || used[blk.b] {
                return Err(Error::InvalidInput(format!(
                    "pair ({}, {}) overlaps another pair",
                    blk.a, blk.b
                )));
            }
            used[blk.a] = true;
            used[blk.b] = true;
            let det = precision_diag[blk.a] * precision_diag[blk.b] - blk.off * blk.off;
            if !(det > 0.0) {
                return Err(Error::InvalidInput(format!(
                    "pair ({}, {}) block is not positive definite",
                    blk.a, blk.b
                )));
            }
        }
        let pairs = pairs
            .into_iter()
            .map(|blk| PairBlock {
                a: blk.a.min(blk.b),
                b: blk.a.max(blk.b),
                off: blk.off,
            })
            .collect();
        Ok(InnovationCovariance {
            precision_diag,
            pairs,
        })
    }

    pub fn p(&self) -> usize {
        self.precision_diag.len()
    }

    pub fn pairs(&self) -> &[PairBlock] {
        &self.pairs
    }

    pub fn precision_diag(&self) -> &[f64] {
        &self.precision_diag
    }

    /// Support graph of the precision off-diagonal.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::empty(self.p());
        for blk in self.pairs.iter().filter(|blk| blk.off != 0.0) {
            g.add_edge(blk.a, blk.b).expect("pairs validated on construction");
        }
        g
    }

    pub fn precision(&self) -> DMatrix<f64> {
        let mut m = DMatrix::from_diagonal(&self.precision_diag.clone().into());
        for blk in &self.pairs {
            m[(blk.a, blk.b)] = blk.off;
            m[(blk.b, blk.a)] = blk.off;
        }
        m
    }

    /// Covariance entries `[[c_aa, c_ab], [c_ab, c_bb]]` of a pair.
    fn pair_covariance(&self, blk: &PairBlock) -> [f64; 3] {
        let (da, db) = (self.precision_diag[blk.a], self.precision_diag[blk.b]);
        let det = da * db - blk.off * blk.off;
        [db / det, -blk.off / det, da / det]
    }

    pub fn covariance(&self) -> DMatrix<f64> {
        let mut m = DMatrix::from_diagonal(
            &self
                .precision_diag
                .iter()
                .map(|d| 1.0 / d)
                .collect::<Vec<_>>()
                .into(),
        );
        for blk in &self.pairs {
            let [caa, cab, cbb] = self.pair_covariance(blk);
            m[(blk.a, blk.a)] = caa;
            m[(blk.b, blk.b)] = cbb;
            m[(blk.a, blk.b)] = cab;
            m[(blk.b, blk.a)] = cab;
        }
        m
    }

    /// Smallest and largest eigenvalue of the covariance.
    pub fn eigen_range(&self) -> (f64, f64) {
        let mut paired = vec![false; self.p()];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for blk in &self.pairs {
            paired[blk.a] = true;
            paired[blk.b] = true;
            let [caa, cab, cbb] = self.pair_covariance(blk);
            let mean = 0.5 * (caa + cbb);
            let rad = (0.25 * (caa - cbb).powi(2) + cab * cab).sqrt();
            lo = lo.min(mean - rad);
            hi = hi.max(mean + rad);
        }
        for (r, d) in self.precision_diag.iter().enumerate() {
            if !paired[r] {
                lo = lo.min(1.0 / d);
                hi = hi.max(1.0 / d);
            }
        }
        (lo, hi)
    }

    /// Lower-triangular factor `L` with `L Lᵀ = C`, as a list of per-block
    /// instructions consumed by the sampler.
    pub(crate) fn sampling_factor(&self) -> Vec<FactorBlock> {
        let mut paired = vec![false; self.p()];
        let mut out = Vec::with_capacity(self.p());
        for blk in &self.pairs {
            paired[blk.a] = true;
            paired[blk.b] = true;
            let [caa, cab, cbb] = self.pair_covariance(blk);
            let l11 = caa.sqrt();
            let l21 = cab / l11;
            let l22 = (cbb - l21 * l21).sqrt();
            out.push(FactorBlock::Pair {
                a: blk.a,
                b: blk.b,
                l11,
                l21,
                l22,
            });
        }
        for (r, d) in self.precision_diag.iter().enumerate() {
            if !paired[r] {
                out.push(FactorBlock::Single {
                    r,
                    sd: (1.0 / d).sqrt(),
                });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum FactorBlock {
    Single { r: usize, sd: f64 },
    Pair { a: usize, b: usize, l11: f64, l21: f64, l22: f64 },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{spd_inverse, symmetric_eigenvalues};

    #[test]
    fn closed_forms_match_dense_algebra() {
        let c = InnovationCovariance::matched(5, &[(0, 3), (4, 1)], &[0.4, -0.7], 1.7).unwrap();
        let dense = spd_inverse(&c.precision()).unwrap();
        assert!((dense - c.covariance()).abs().max() < 1e-13);
        let ev = symmetric_eigenvalues(&c.covariance());
        let (lo, hi) = c.eigen_range();
        assert!((ev[0] - lo).abs() < 1e-12 && (ev[4] - hi).abs() < 1e-12);
        assert_eq!(c.graph().edges().collect::<Vec<_>>(), vec![(0, 3), (1, 4)]);
    }

    #[test]
    fn rejects_overlap_and_bad_kappa() {
        assert!(InnovationCovariance::matched(4, &[(0, 1), (1, 2)], &[0.1, 0.1], 1.0).is_err());
        assert!(InnovationCovariance::matched(4, &[(0, 1)], &[1.0], 1.0).is_err());
        assert!(InnovationCovariance::matched(4, &[(0, 0)], &[0.1], 1.0).is_err());
    }
}
