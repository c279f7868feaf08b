use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Real FIR filter applied identically to every component, normalized so that
/// `Σ h[m]² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterSpec {
    taps: Vec<f64>,
    shape: FilterShape,
}

/// How the taps were produced; kept so the filter serializes compactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub(crate) enum FilterShape {
    Exponential { beta: f64, k: usize },
    Taps,
}

impl FilterSpec {
    /// Accepts taps that are already unit-energy.
    pub fn new(taps: Vec<f64>) -> Result<Self> {
        if taps.is_empty() {
            return Err(Error::InvalidInput("filter needs at least one tap".into()));
        }
        if taps.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("filter taps must be finite".into()));
        }
        let energy: f64 = taps.iter().map(|v| v * v).sum();
        if (energy - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidInput(format!(
                "filter energy {energy} is not 1; use FilterSpec::normalized"
            )));
        }
        Ok(FilterSpec {
            taps,
            shape: FilterShape::Taps,
        })
    }

    /// Rescales arbitrary taps to unit energy.
    pub fn normalized(taps: Vec<f64>) -> Result<Self> {
        let energy: f64 = taps.iter().map(|v| v * v).sum();
        if !(energy > 0.0) || !energy.is_finite() {
            return Err(Error::InvalidInput("filter taps have no energy".into()));
        }
        let norm = energy.sqrt();
        FilterSpec::new(taps.into_iter().map(|v| v / norm).collect())
    }

    pub fn unit_impulse() -> Self {
        FilterSpec {
            taps: vec![1.0],
            shape: FilterShape::Exponential { beta: 0.0, k: 1 },
        }
    }

    /// Truncated exponential `h[m] ∝ β^m`, `m < K`.
    pub fn exponential(beta: f64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("filter length K must be at least 1".into()));
        }
        if !beta.is_finite() {
            return Err(Error::InvalidInput(format!("beta = {beta} is not finite")));
        }
        let taps = (0..k).map(|m| beta.powi(m as i32)).collect();
        let mut f = FilterSpec::normalized(taps)?;
        f.shape = FilterShape::Exponential { beta, k };
        Ok(f)
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub(crate) fn shape(&self) -> FilterShape {
        self.shape
    }

    /// `r_h[m] = Σ_k h[k] h[k+m]` for `m = 0..K`.
    pub fn autocorrelation(&self) -> Vec<f64> {
        let h = &self.taps;
        (0..h.len())
            .map(|m| h.iter().zip(&h[m..]).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `|H(θ)|²`.
    pub fn power_response(&self, theta: f64) -> f64 {
        power_at(&self.autocorrelation(), theta)
    }

    /// Minimum and maximum of `|H(θ)|²` over `θ ∈ [0, 1)`.
    ///
    /// Dense evaluation followed by golden-section refinement around the best
    /// grid points; `θ = 0` and `θ = 1/2` are always on the grid.
    pub fn power_range(&self) -> (f64, f64) {
        let r = self.autocorrelation();
        if r.len() == 1 {
            return (r[0], r[0]);
        }
        let grid = (64 * r.len()).max(4096);
        let step = 1.0 / grid as f64;
        // |H|² is even in θ, so [0, 1/2] suffices.
        let half = grid / 2;
        let values: Vec<f64> = (0..=half).map(|k| power_at(&r, k as f64 * step)).collect();
        let argmin = (0..values.len())
            .min_by(|&a, &b| values[a].total_cmp(&values[b]))
            .unwrap_or(0);
        let argmax = (0..values.len())
            .max_by(|&a, &b| values[a].total_cmp(&values[b]))
            .unwrap_or(0);
        let refine = |k: usize, sign: f64| {
            let lo = (k as f64 - 1.0).max(0.0) * step;
            let hi = ((k + 1) as f64 * step).min(0.5);
            let best = golden_section(|t| sign * power_at(&r, t), lo, hi);
            sign * best.min(sign * values[k])
        };
        (refine(argmin, 1.0), refine(argmax, -1.0))
    }
}

fn power_at(r: &[f64], theta: f64) -> f64 {
    r[0] + 2.0
        * r.iter()
            .enumerate()
            .skip(1)
            .map(|(m, v)| v * (2.0 * PI * theta * m as f64).cos())
            .sum::<f64>()
}

/// Minimum value of `f` on `[lo, hi]`, assuming unimodality there.
fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    f(lo).min(f(hi)).min(f1).min(f2)
}
