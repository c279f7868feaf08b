use serde::Serialize;

use crate::error::{Error, Result};
use crate::process::{acf_of_spec, sample, ProcessSpec};

/// One entry of an empirical autocovariance check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcfEntry {
    pub lag: usize,
    pub a: usize,
    pub b: usize,
    pub empirical: f64,
    pub expected: f64,
    /// Exact standard error of the estimator under the Gaussian model.
    pub std_error: f64,
}

impl AcfEntry {
    pub fn z_score(&self) -> f64 {
        (self.empirical - self.expected) / self.std_error
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AcfFidelity {
    pub entries: Vec<AcfEntry>,
}

impl AcfFidelity {
    pub fn max_abs_z(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.z_score().abs()))
    }
}

/// Compares the lag-`0..=max_lag` sample autocovariances
/// `γ̂_ab(m) = (1/L) Σ_t x_a[t+m] x_b[t]` of one long draw against the model
/// ACF, scoring each entry by its exact (Isserlis) standard error.
pub fn acf_fidelity(spec: &ProcessSpec, n: usize, seed: u64, max_lag: usize) -> Result<AcfFidelity> {
    if max_lag >= n {
        return Err(Error::InvalidInput(format!("max_lag {max_lag} must be below N = {n}")));
    }
    let x = sample(spec, n, seed)?;
    let acf = acf_of_spec(spec);
    let p = spec.p();
    let r = |lag: i64, i: usize, j: usize| acf.lag(lag)[(i, j)];
    let reach = (acf.support() + max_lag) as i64;
    let mut entries = Vec::with_capacity((max_lag + 1) * p * p);
    for m in 0..=max_lag {
        let len = x.cols() - m;
        let lf = len as f64;
        for a in 0..p {
            let xa = &x.row(a)[m..];
            for b in 0..p {
                let xb = &x.row(b)[..len];
                let empirical = xa.iter().zip(xb).map(|(u, v)| u * v).sum::<f64>() / lf;
                let mi = m as i64;
                let var = (-reach..=reach)
                    .filter(|d| d.unsigned_abs() < len as u64)
                    .map(|d| {
                        let w = (len as i64 - d.abs()) as f64;
                        w * (r(d, a, a) * r(d, b, b) + r(d + mi, a, b) * r(d - mi, b, a))
                    })
                    .sum::<f64>()
                    / (lf * lf);
                entries.push(AcfEntry {
                    lag: m,
                    a,
                    b,
                    empirical,
                    expected: r(mi, a, b),
                    std_error: var.sqrt(),
                });
            }
        }
    }
    Ok(AcfFidelity { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::{build_matching_process, FilterSpec};

    #[test]
    fn white_scalar_standard_error() {
        // Unit-variance white noise: Var(γ̂(0)) = 2/L, Var(γ̂(m>0)) = 1/L.
        let spec = build_matching_process(1, &[], &[], FilterSpec::unit_impulse()).unwrap();
        let f = acf_fidelity(&spec, 999, 3, 2).unwrap();
        assert!((f.entries[0].std_error - (2.0f64 / 1000.0).sqrt()).abs() < 1e-15);
        assert!((f.entries[1].std_error - (1.0f64 / 999.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn zero_kappa_lag0_covariance() {
        let spec = build_matching_process(3, &[], &[], FilterSpec::unit_impulse()).unwrap();
        let s = spec.scale.unwrap();
        let f = acf_fidelity(&spec, 100_000, 17, 0).unwrap();
        for e in &f.entries {
            let target = if e.a == e.b { s } else { 0.0 };
            assert!((e.empirical - target).abs() < 0.02, "{e:?}");
        }
    }
}
