use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::Acf;
use crate::error::{Error, Result};
use crate::linalg::{is_symmetric, symmetric_eigenvalues};

/// Grid size used for analysis-only spectral evaluations.
pub const ANALYSIS_GRID: usize = 512;

const SYMMETRY_TOL: f64 = 1e-12;

/// Spectral density matrix sampled at `θ_k = k / F`, `k = 0..F`.
#[derive(Debug, Clone, PartialEq)]
pub struct SdmGrid {
    p: usize,
    mats: Vec<DMatrix<f64>>,
}

impl SdmGrid {
    pub fn new(mats: Vec<DMatrix<f64>>) -> Result<Self> {
        let p = mats
            .first()
            .ok_or_else(|| Error::InvalidInput("empty frequency grid".into()))?
            .nrows();
        for (k, m) in mats.iter().enumerate() {
            if m.nrows() != p || m.ncols() != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    found: m.nrows().max(m.ncols()),
                });
            }
            if !is_symmetric(m, SYMMETRY_TOL) {
                return Err(Error::InvalidInput(format!(
                    "grid matrix {k} is not symmetric"
                )));
            }
        }
        Ok(SdmGrid { p, mats })
    }

    /// Same matrix at every frequency (a white process).
    pub fn constant(m: DMatrix<f64>, grid: usize) -> Result<Self> {
        SdmGrid::new(vec![m; grid])
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn freq(&self, k: usize) -> f64 {
        k as f64 / self.mats.len() as f64
    }

    pub fn mats(&self) -> &[DMatrix<f64>] {
        &self.mats
    }

    pub fn at(&self, k: usize) -> &DMatrix<f64> {
        &self.mats[k]
    }

    pub fn scaled(&self, c: f64) -> SdmGrid {
        SdmGrid {
            p: self.p,
            mats: self.mats.iter().map(|m| m * c).collect(),
        }
    }
}

/// Evaluates `S(θ_k) = Σ_{|m| ≤ S} R[m] cos(2π θ_k m)` on a grid of `grid` points.
///
/// The finite sum is exact; the grid must be large enough that the sampled
/// spectrum determines the ACF (`grid ≥ 2·support + 1`).
pub fn sdm_from_acf(acf: &Acf, grid: usize) -> Result<SdmGrid> {
    let support = acf.support();
    if grid < 2 * support + 1 {
        return Err(Error::Aliasing { support, grid });
    }
    let lags = acf.lags();
    let mats = (0..grid)
        .map(|k| {
            let mut s = lags[0].clone();
            for (m, r) in lags.iter().enumerate().skip(1) {
                let w = 2.0 * (2.0 * PI * (k * m % grid) as f64 / grid as f64).cos();
                s += r * w;
            }
            s
        })
        .collect();
    Ok(SdmGrid {
        p: acf.p(),
        mats,
    })
}

/// Global eigenvalue range of an SDM over its grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenBand {
    pub min: f64,
    pub max: f64,
}

impl EigenBand {
    /// `floor ≤ λ_min` and `λ_max ≤ ceiling`.
    pub fn within(&self, floor: f64, ceiling: f64) -> bool {
        self.min >= floor && self.max <= ceiling
    }

    /// Same as [`within`](Self::within) with a relative slack for rounding.
    pub fn within_tol(&self, floor: f64, ceiling: f64, rel: f64) -> bool {
        self.min >= floor * (1.0 - rel) && self.max <= ceiling * (1.0 + rel)
    }
}

pub fn eigen_band(sdm: &SdmGrid) -> Result<EigenBand> {
    let mut band = EigenBand {
        min: f64::INFINITY,
        max: f64::NEG_INFINITY,
    };
    for (k, m) in sdm.mats.iter().enumerate() {
        if !is_symmetric(m, SYMMETRY_TOL) {
            return Err(Error::InvalidInput(format!(
                "grid matrix {k} is not symmetric"
            )));
        }
        let ev = symmetric_eigenvalues(m);
        band.min = band.min.min(ev[0]);
        band.max = band.max.max(ev[ev.len() - 1]);
    }
    Ok(band)
}
