use nalgebra::{DMatrix, DVector};

use super::{FilterSpec, InnovationCovariance, PairBlock, ProcessKind, ProcessSpec};
use crate::error::{Error, Result};

/// Shrinkage `c = 4ρ/(1+4ρ)` for which `(2I − c·vvᵀ)^{-1} = (I + 2ρ·vvᵀ)/2`
/// when `vᵀv = 2`.
pub fn corrected_shrinkage(rho: f64) -> f64 {
    4.0 * rho / (1.0 + 4.0 * rho)
}

/// The `C(p, 2)` white processes with spectral density
/// `S_i = 2I − c·v_i v_iᵀ`, one per possible single edge `v_i = e_r + e_r'`.
#[derive(Debug, Clone)]
pub struct FanoEnsemble {
    pub p: usize,
    pub rho: f64,
    /// Shrinkage coefficient `c` used for every member.
    pub shrinkage: f64,
    pub members: Vec<ProcessSpec>,
}

/// Builds the single-edge ensemble for `0 < ρ ≤ 1/4`.
///
/// Member `i` corresponds to the `i`-th pair `(r, r')`, `r < r'`, in
/// lexicographic order.
pub fn build_fano_ensemble(p: usize, rho: f64) -> Result<FanoEnsemble> {
    if !(rho > 0.0 && rho <= 0.25) {
        return Err(Error::Domain(format!("rho = {rho} not in (0, 1/4]")));
    }
    FanoEnsemble::with_shrinkage(p, rho, corrected_shrinkage(rho))
}

impl FanoEnsemble {
    /// Ensemble with an arbitrary shrinkage coefficient `c ∈ (0, 1)`; used to
    /// check that the validity tests detect a wrong constant.
    pub fn with_shrinkage(p: usize, rho: f64, shrinkage: f64) -> Result<Self> {
        if p < 2 {
            return Err(Error::Domain(format!("the ensemble needs p >= 2, got {p}")));
        }
        if !(shrinkage > 0.0 && shrinkage < 1.0) {
            return Err(Error::Domain(format!("shrinkage {shrinkage} not in (0, 1)")));
        }
        let members = edge_enumeration(p)
            .map(|pair| member(p, pair, rho, shrinkage))
            .collect::<Result<Vec<_>>>()?;
        Ok(FanoEnsemble {
            p,
            rho,
            shrinkage,
            members,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Flat spectral density `S_i(0)` of member `i`.
    pub fn member_sdm(&self, i: usize) -> DMatrix<f64> {
        self.members[i].innovations.covariance()
    }

    /// `S̄ = (1/M) Σ_i S_i(0)`, assembled directly from the rank-one form.
    pub fn average_sdm(&self) -> DMatrix<f64> {
        let m = self.members.len() as f64;
        let mut acc = DMatrix::identity(self.p, self.p) * 2.0;
        for (a, b) in edge_enumeration(self.p) {
            let mut v = DVector::zeros(self.p);
            v[a] = 1.0;
            v[b] = 1.0;
            acc -= &v * v.transpose() * (self.shrinkage / m);
        }
        acc
    }
}

/// Lexicographic enumeration of the `C(p, 2)` node pairs.
pub(crate) fn edge_enumeration(p: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..p).flat_map(move |a| ((a + 1)..p).map(move |b| (a, b)))
}

pub(crate) fn member(p: usize, pair: (usize, usize), rho: f64, shrinkage: f64) -> Result<ProcessSpec> {
    // Pair covariance block [[2-c, -c], [-c, 2-c]]; singletons have variance 2.
    let c = shrinkage;
    let det = (2.0 - c).powi(2) - c * c;
    let mut diag = vec![0.5; p];
    diag[pair.0] = (2.0 - c) / det;
    diag[pair.1] = (2.0 - c) / det;
    let innovations = InnovationCovariance::from_precision(
        diag,
        vec![PairBlock {
            a: pair.0,
            b: pair.1,
            off: c / det,
        }],
    )?;
    Ok(ProcessSpec::assemble(
        ProcessKind::FanoMember,
        FilterSpec::unit_impulse(),
        innovations,
        vec![rho],
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::symmetric_eigenvalues;

    #[test]
    fn ensemble_sizes() {
        let e = build_fano_ensemble(3, 0.1).unwrap();
        let edges: Vec<_> = e.members.iter().map(|m| m.truth.edges().next().unwrap()).collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(build_fano_ensemble(10, 0.1).unwrap().len(), 45);
    }

    #[test]
    fn rho_domain() {
        assert!(build_fano_ensemble(4, 0.0).is_err());
        assert!(build_fano_ensemble(4, 0.26).is_err());
        assert!(build_fano_ensemble(4, 0.25).is_ok());
        assert!(build_fano_ensemble(1, 0.1).is_err());
    }

    #[test]
    fn member_matches_rank_one_form() {
        let rho = 0.25;
        let e = build_fano_ensemble(5, rho).unwrap();
        let mut v = DVector::zeros(5);
        v[1] = 1.0;
        v[3] = 1.0;
        let expected = DMatrix::identity(5, 5) * 2.0 - &v * v.transpose() * corrected_shrinkage(rho);
        let idx = edge_enumeration(5).position(|e| e == (1, 3)).unwrap();
        assert!((e.member_sdm(idx) - expected).abs().max() < 1e-14);
        let precision = (DMatrix::identity(5, 5) + &v * v.transpose() * (2.0 * rho)) * 0.5;
        assert!((e.members[idx].innovations.precision() - precision).abs().max() < 1e-14);

        let ev = symmetric_eigenvalues(&e.member_sdm(idx));
        assert!((ev[0] - 1.0).abs() < 1e-14);
        assert!(ev[1..].iter().all(|l| (l - 2.0).abs() < 1e-14));
    }

    #[test]
    fn average_matches_member_mean() {
        let e = build_fano_ensemble(4, 0.1).unwrap();
        let mean = (0..e.len()).fold(DMatrix::zeros(4, 4), |acc, i| acc + e.member_sdm(i))
            / e.len() as f64;
        assert!((mean - e.average_sdm()).abs().max() < 1e-14);
    }
}
