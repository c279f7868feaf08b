use serde::{Deserialize, Serialize};

use super::{cig_from_inverse_sdm, eigen_band, partial_coherence, EigenBand, SdmGrid};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parameters of the process class: dimension, degree bound, minimum partial
/// coherence and the eigenvalue band `[A, B]` with the floor fixed at `A = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassParams {
    pub p: usize,
    pub d_max: usize,
    pub rho_min: f64,
    pub b: f64,
}

impl ClassParams {
    pub const A: f64 = 1.0;

    pub fn new(p: usize, d_max: usize, rho_min: f64, b: f64) -> Result<Self> {
        if p == 0 {
            return Err(Error::Domain("p must be positive".into()));
        }
        if !(rho_min > 0.0 && rho_min < 1.0) {
            return Err(Error::Domain(format!("rho_min = {rho_min} not in (0, 1)")));
        }
        if !(b >= Self::A) || !b.is_finite() {
            return Err(Error::Domain(format!("B = {b} must be finite and at least 1")));
        }
        Ok(ClassParams { p, d_max, rho_min, b })
    }

    /// Checks an SDM against every class condition.
    pub fn membership(&self, sdm: &SdmGrid) -> Result<ClassMembership> {
        if sdm.p() != self.p {
            return Err(Error::DimensionMismatch {
                expected: self.p,
                found: sdm.p(),
            });
        }
        let band = eigen_band(sdm)?;
        let graph = cig_from_inverse_sdm(sdm, None)?;
        let coherence = partial_coherence(sdm, &graph)?.min;
        Ok(ClassMembership {
            band_ok: band.within_tol(Self::A, self.b, 1e-12),
            degree_ok: graph.max_degree() <= self.d_max,
            coherence_ok: coherence.is_none_or(|c| c >= self.rho_min * (1.0 - 1e-10)),
            band,
            coherence,
            graph,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassMembership {
    pub band: EigenBand,
    pub graph: Graph,
    pub coherence: Option<f64>,
    pub band_ok: bool,
    pub degree_ok: bool,
    pub coherence_ok: bool,
}

impl ClassMembership {
    pub fn is_member(&self) -> bool {
        self.band_ok && self.degree_ok && self.coherence_ok
    }
}
