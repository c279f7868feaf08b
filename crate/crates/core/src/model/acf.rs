use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{is_symmetric, max_abs, symmetric_eigenvalues};

/// Finite-support real autocovariance sequence `R[m]`, `m = 0..=support`.
///
/// Negative lags are implied by `R[-m] = R[m]`, so every lag matrix must be
/// symmetric. Trailing all-zero lags are trimmed on construction, which makes
/// `support` the exact support.
#[derive(Debug, Clone, PartialEq)]
pub struct Acf {
    p: usize,
    lags: Vec<DMatrix<f64>>,
}

const SYMMETRY_TOL: f64 = 1e-12;

impl Acf {
    pub fn new(lags: Vec<DMatrix<f64>>) -> Result<Self> {
        let first = lags
            .first()
            .ok_or_else(|| Error::InvalidInput("ACF needs at least the lag-0 matrix".into()))?;
        let p = first.nrows();
        if p == 0 {
            return Err(Error::InvalidInput("ACF dimension must be positive".into()));
        }
        for (m, r) in lags.iter().enumerate() {
            if r.nrows() != p || r.ncols() != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    found: r.nrows().max(r.ncols()),
                });
            }
            if r.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite entry at lag {m}")));
            }
            if !is_symmetric(r, SYMMETRY_TOL) {
                return Err(Error::InvalidInput(format!(
                    "lag {m} is not symmetric; only R[-m] = R[m] sequences are supported"
                )));
            }
        }
        let floor = symmetric_eigenvalues(first)[0];
        if floor < -1e-12 * max_abs(first).max(1.0) {
            return Err(Error::InvalidInput(format!(
                "lag-0 matrix is not positive semidefinite (min eigenvalue {floor:e})"
            )));
        }
        let mut lags = lags;
        while lags.len() > 1 && lags.last().is_some_and(|r| r.iter().all(|&v| v == 0.0)) {
            lags.pop();
        }
        Ok(Acf { p, lags })
    }

    /// White-noise sequence `R[m] = C δ[m]`.
    pub fn white(c: DMatrix<f64>) -> Result<Self> {
        Acf::new(vec![c])
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn support(&self) -> usize {
        self.lags.len() - 1
    }

    /// `R[m]` for any integer lag; zero outside the support.
    pub fn lag(&self, m: i64) -> DMatrix<f64> {
        let idx = m.unsigned_abs() as usize;
        self.lags
            .get(idx)
            .cloned()
            .unwrap_or_else(|| DMatrix::zeros(self.p, self.p))
    }

    /// Nonnegative lags `R[0..=support]`.
    pub fn lags(&self) -> &[DMatrix<f64>] {
        &self.lags
    }
}

/// `Σ_m |m| · max_ij |R[m]_ij|` over the full two-sided support.
pub fn acf_moment(acf: &Acf) -> f64 {
    acf.lags
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, r)| 2.0 * m as f64 * max_abs(r))
        .sum()
}
