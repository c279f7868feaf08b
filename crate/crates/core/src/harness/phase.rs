use serde::Serialize;

use super::sweep::Cell;
use super::trial::{estimate_error_prob, SpectralThreshold};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseProbe {
    pub n: usize,
    pub success_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseTransition {
    pub p: usize,
    /// Smallest probed `N` with success rate at least 1/2.
    pub n_star: usize,
    pub probes: Vec<PhaseProbe>,
}

/// Bisects (on a log scale) for the sample size at which the empirical
/// success rate crosses 1/2. `lo` is assumed to fail and `hi` to succeed;
/// each probe runs `trials` trials seeded from the probe's own cell.
pub fn phase_transition(
    template: &Cell,
    lo: usize,
    hi: usize,
    trials: usize,
    master_seed: u64,
) -> Result<PhaseTransition> {
    let min_n = 2 * template.filter.k - 1;
    if lo < min_n || hi <= lo {
        return Err(Error::InvalidConfiguration(format!(
            "bisection bracket [{lo}, {hi}] invalid (need {min_n} <= lo < hi)"
        )));
    }
    let spec = template.process()?;
    let decoder = SpectralThreshold {
        rho_min: template.rho_min(),
        b: spec.b_actual(),
    };
    let (mut lo, mut hi) = (lo, hi);
    let mut probes = Vec::new();
    while hi - lo > 1 && (hi as f64) > 1.02 * lo as f64 {
        let mid = ((lo as f64 * hi as f64).sqrt().round() as usize).clamp(lo + 1, hi - 1);
        let cell = Cell { n: mid, ..*template };
        let est = estimate_error_prob(&spec, mid, trials, master_seed, cell.id(), &decoder)?;
        let success_rate = 1.0 - est.rate;
        probes.push(PhaseProbe { n: mid, success_rate });
        if success_rate >= 0.5 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(PhaseTransition {
        p: template.p,
        n_star: hi,
        probes,
    })
}

/// Least-squares fit `N*(p) ≈ c · ln p` through the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogFit {
    pub c: f64,
    /// `N*(p) / (c ln p)` per point.
    pub ratios: Vec<f64>,
}

impl LogFit {
    /// Every point within a multiplicative `factor` of the fit.
    pub fn within_factor(&self, factor: f64) -> bool {
        self.ratios.iter().all(|&r| r <= factor && r >= 1.0 / factor)
    }
}

pub fn fit_log_scaling(points: &[(usize, f64)]) -> LogFit {
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(p, n)| {
        let l = (p as f64).ln();
        (num + n * l, den + l * l)
    });
    let c = num / den;
    LogFit {
        c,
        ratios: points.iter().map(|&(p, n)| n / (c * (p as f64).ln())).collect(),
    }
}
