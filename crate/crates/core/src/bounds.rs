//! Closed-form sample-size bounds and the mutual-information / Fano
//! machinery behind the necessary condition.
//!
//! Mutual information is carried in nats; graph entropy in bits. The only
//! conversion happens in [`fano_error_floor`].

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::log_det_spd;
use crate::process::{build_fano_ensemble, FanoEnsemble};

/// Largest dimension for which [`mi_entropy_bound`] is evaluated.
pub const MI_DESK_LIMIT: usize = 32;

pub fn num_pairs(p: usize) -> usize {
    p * p.saturating_sub(1) / 2
}

/// `(ln C(p,2) − 1) / (4ρ²)`, valid for `ρ ∈ (0, 1/4]`. May be negative
/// (vacuous) for tiny `p`.
pub fn necessary_sample_size(p: usize, rho: f64) -> Result<f64> {
    if p < 2 {
        return Err(Error::Domain(format!("p = {p} must be at least 2")));
    }
    if !(rho > 0.0 && rho <= 0.25) {
        return Err(Error::Domain(format!("rho = {rho} not in (0, 1/4]")));
    }
    Ok(((num_pairs(p) as f64).ln() - 1.0) / (4.0 * rho * rho))
}

/// `(32 B⁴ / ρ²) · ln(2p² / δ)`.
pub fn sufficient_sample_size(p: usize, rho: f64, b: f64, delta: f64) -> Result<f64> {
    if p < 2 {
        return Err(Error::Domain(format!("p = {p} must be at least 2")));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Domain(format!("rho = {rho} not in (0, 1)")));
    }
    if !(b >= 1.0) || !b.is_finite() {
        return Err(Error::Domain(format!("B = {b} must be finite and at least 1")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("delta = {delta} not in (0, 1)")));
    }
    let p = p as f64;
    Ok(32.0 * b.powi(4) / (rho * rho) * (2.0 * p * p / delta).ln())
}

/// Entropy in bits of a uniform choice among `m` graphs.
pub fn graph_entropy(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("ensemble size must be at least 1".into()));
    }
    Ok((m as f64).log2())
}

/// `N · (ln|S̄| − (1/M) Σ_i ln|S_i(0)|)` in nats, with exact determinants.
pub fn mi_entropy_bound(ensemble: &FanoEnsemble, n: usize) -> Result<f64> {
    if ensemble.p > MI_DESK_LIMIT {
        return Err(Error::OracleTooLarge {
            size: ensemble.p,
            limit: MI_DESK_LIMIT,
        });
    }
    let avg = log_det_spd(&ensemble.average_sdm())
        .ok_or_else(|| Error::Invariant("average ensemble SDM is not positive definite".into()))?;
    let mut members = 0.0;
    for i in 0..ensemble.len() {
        members += log_det_spd(&ensemble.member_sdm(i)).ok_or_else(|| {
            Error::Invariant(format!("ensemble member {i} is not positive definite"))
        })?;
    }
    let per_sample = avg - members / ensemble.len() as f64;
    Ok(n as f64 * per_sample)
}

/// `16 N ρ²` in nats.
pub fn mi_linear_bound(n: usize, rho: f64) -> f64 {
    16.0 * n as f64 * rho * rho
}

/// Unclamped `1 − (I/ln 2 + 1) / H`.
pub fn fano_error_floor_raw(mi_nats: f64, entropy_bits: f64) -> Result<f64> {
    if !(entropy_bits > 0.0) {
        return Err(Error::Domain(format!(
            "graph entropy {entropy_bits} bits must be positive"
        )));
    }
    if !(mi_nats >= 0.0) {
        return Err(Error::Domain(format!("mutual information {mi_nats} must be nonnegative")));
    }
    Ok(1.0 - (mi_nats / LN_2 + 1.0) / entropy_bits)
}

/// Fano lower bound on the minimax selection error, clamped to `[0, 1]`.
pub fn fano_error_floor(mi_nats: f64, entropy_bits: f64) -> Result<f64> {
    Ok(fano_error_floor_raw(mi_nats, entropy_bits)?.clamp(0.0, 1.0))
}

/// Unclamped values of the clamped report fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawBounds {
    pub necessary_n: Option<f64>,
    pub fano_error_floor: Option<f64>,
}

/// Every bound evaluated at one parameter point.
///
/// Fields that only exist for `ρ ≤ 1/4` (the lower-bound ensemble) or small
/// `p` are `None` outside that range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: usize,
    pub rho_min: f64,
    pub b: f64,
    pub delta: f64,
    /// Sample size at which the MI bounds and the Fano floor are evaluated.
    pub n: usize,
    pub necessary_n: Option<f64>,
    pub sufficient_n: f64,
    pub graph_entropy_bits: f64,
    /// Exact entropy-based MI bound (nats).
    pub mi_upper: Option<f64>,
    /// `16 N ρ²` (nats).
    pub mi_linear: f64,
    /// Fano floor using `mi_linear`.
    pub fano_error_floor: Option<f64>,
    /// Fano floor using `mi_upper` (never below `fano_error_floor`).
    pub fano_error_floor_exact: Option<f64>,
    pub raw: RawBounds,
}

impl BoundReport {
    /// Evaluates all bounds. `n = None` picks `max(1, ⌈necessary_n⌉)`, or
    /// `⌈sufficient_n⌉` when the necessary bound is undefined.
    pub fn evaluate(p: usize, rho_min: f64, b: f64, delta: f64, n: Option<usize>) -> Result<Self> {
        let sufficient_n = sufficient_sample_size(p, rho_min, b, delta)?;
        let in_ensemble_range = rho_min <= 0.25;
        let necessary_raw = if in_ensemble_range {
            Some(necessary_sample_size(p, rho_min)?)
        } else {
            None
        };
        let n = n.unwrap_or_else(|| match necessary_raw {
            Some(v) => v.ceil().max(1.0) as usize,
            None => sufficient_n.ceil() as usize,
        });
        let m = num_pairs(p);
        let graph_entropy_bits = graph_entropy(m)?;
        let mi_linear = mi_linear_bound(n, rho_min);
        let mi_upper = if in_ensemble_range && p <= MI_DESK_LIMIT {
            Some(mi_entropy_bound(&build_fano_ensemble(p, rho_min)?, n)?)
        } else {
            None
        };
        let floor_of = |mi: f64| -> Result<Option<f64>> {
            if in_ensemble_range && graph_entropy_bits > 0.0 {
                Ok(Some(fano_error_floor_raw(mi, graph_entropy_bits)?))
            } else {
                Ok(None)
            }
        };
        let fano_raw = floor_of(mi_linear)?;
        let fano_exact = match mi_upper {
            Some(mi) => floor_of(mi)?.map(|v| v.clamp(0.0, 1.0)),
            None => None,
        };
        Ok(BoundReport {
            p,
            rho_min,
            b,
            delta,
            n,
            necessary_n: necessary_raw.map(|v| v.max(0.0)),
            sufficient_n,
            graph_entropy_bits,
            mi_upper,
            mi_linear,
            fano_error_floor: fano_raw.map(|v| v.clamp(0.0, 1.0)),
            fano_error_floor_exact: fano_exact,
            raw: RawBounds {
                necessary_n: necessary_raw,
                fano_error_floor: fano_raw,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necessary_examples() {
        let v = necessary_sample_size(10, 0.25).unwrap();
        assert!((v - ((45f64).ln() - 1.0) / 0.25).abs() < 1e-12);
        assert!((v - 11.2267).abs() < 1e-3);
        assert_eq!(necessary_sample_size(2, 0.25).unwrap(), -4.0);
        assert!(necessary_sample_size(10, 0.3).is_err());
        assert!(necessary_sample_size(1, 0.1).is_err());
    }

    #[test]
    fn sufficient_examples() {
        let v = sufficient_sample_size(64, 0.5, 3.0, 0.05).unwrap();
        assert!((v - 10368.0 * 163840f64.ln()).abs() < 1e-6);
        assert!((v - 1.2449e5).abs() < 1e1);
        let base = sufficient_sample_size(20, 0.2, 2.0, 0.1).unwrap();
        assert_eq!(sufficient_sample_size(20, 0.2, 4.0, 0.1).unwrap(), 16.0 * base);
        assert!((sufficient_sample_size(20, 0.4, 2.0, 0.1).unwrap() * 4.0 - base).abs() < 1e-9 * base);
        assert!(sufficient_sample_size(20, 0.4, 0.5, 0.1).is_err());
        assert!(sufficient_sample_size(20, 0.4, 2.0, 1.0).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(graph_entropy(1).unwrap(), 0.0);
        assert!((graph_entropy(45).unwrap() - 5.4919).abs() < 1e-4);
        assert!((graph_entropy(3).unwrap() - 1.585).abs() < 1e-3);
        assert!(graph_entropy(0).is_err());
    }

    #[test]
    fn linear_bound_examples() {
        assert_eq!(mi_linear_bound(1, 0.25), 1.0);
        assert_eq!(mi_linear_bound(0, 0.25), 0.0);
        assert!((mi_linear_bound(100, 0.1) - 16.0).abs() < 1e-12);
    }

    #[test]
    fn fano_examples() {
        assert_eq!(fano_error_floor(0.0, 2.0).unwrap(), 0.5);
        assert_eq!(fano_error_floor(5.0 * LN_2, 2.0).unwrap(), 0.0);
        assert!(fano_error_floor(0.0, 0.0).is_err());
        let f = fano_error_floor(mi_linear_bound(5, 0.25), 45f64.log2()).unwrap();
        let expected = (1.0 - (5.0 / LN_2 + 1.0) / 45f64.log2()).max(0.0);
        assert_eq!(f, expected);
    }

    #[test]
    fn mi_entropy_spot_value_and_linearity() {
        let e = build_fano_ensemble(3, 0.25).unwrap();
        let one = mi_entropy_bound(&e, 1).unwrap();
        let closed = (4.0f64 / 3.0).ln() + 2.0 * (11.0f64 / 6.0).ln() - 2.0 * 2f64.ln();
        assert!((one - closed).abs() < 1e-12);
        assert!((one - 0.1137).abs() < 1e-3);
        assert_eq!(mi_entropy_bound(&e, 10).unwrap(), 10.0 * one);
    }

    #[test]
    fn report_clamps_and_keeps_raw() {
        let r = BoundReport::evaluate(2, 0.25, 3.0, 0.05, None).unwrap();
        assert_eq!(r.necessary_n, Some(0.0));
        assert!(r.raw.necessary_n.unwrap() < 0.0);
        assert_eq!(r.n, 1);
        assert_eq!(r.fano_error_floor, None);
        let r = BoundReport::evaluate(3, 0.25, 3.0, 0.05, None).unwrap();
        assert_eq!(r.n, 1);
        assert!(r.fano_error_floor_exact.unwrap() >= r.fano_error_floor.unwrap());

        let wide = BoundReport::evaluate(64, 0.5, 3.0, 0.05, Some(10)).unwrap();
        assert_eq!(wide.necessary_n, None);
        assert_eq!(wide.mi_upper, None);
        assert_eq!(wide.fano_error_floor, None);
        assert!((wide.mi_linear - 40.0).abs() < 1e-12);
    }
}
