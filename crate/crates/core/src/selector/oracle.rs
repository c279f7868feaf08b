use std::f64::consts::PI;

use nalgebra::DMatrix;
use rustfft::num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{sdm_from_acf, Acf};
use crate::process::{acf_of_spec, ProcessSpec};

/// Largest `2N·p` accepted by the dense oracles.
pub const ORACLE_LIMIT: usize = 512;

fn check_size(p: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    if 2 * n * p > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            size: 2 * n * p,
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// Block circulant matrix with first block row
/// `(R[0], R[1], …, R[N], R[N−1], …, R[1])` (`2N` blocks).
pub fn circulant_extension_covariance(acf: &Acf, n: usize) -> Result<DMatrix<f64>> {
    check_size(acf.p(), n)?;
    let p = acf.p();
    let len = 2 * n;
    let mut out = DMatrix::zeros(len * p, len * p);
    for a in 0..len {
        for b in 0..len {
            let j = (b + len - a) % len;
            let lag = j.min(len - j) as i64;
            out.view_mut((a * p, b * p), (p, p)).copy_from(&acf.lag(lag));
        }
    }
    Ok(out)
}

/// Actual covariance of the mirror-extended window: block `(a, b)` is
/// `R[σ(a) − σ(b)]` where `σ` maps an extended index to its source sample.
pub fn mirror_extension_covariance(acf: &Acf, n: usize) -> Result<DMatrix<f64>> {
    check_size(acf.p(), n)?;
    let p = acf.p();
    let len = 2 * n;
    let source = |i: usize| if i <= n { i } else { len - i };
    let mut out = DMatrix::zeros(len * p, len * p);
    for a in 0..len {
        for b in 0..len {
            let lag = source(a) as i64 - source(b) as i64;
            out.view_mut((a * p, b * p), (p, p)).copy_from(&acf.lag(lag));
        }
    }
    Ok(out)
}

/// Result of conjugating the extended covariance by the unitary block DFT.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalizationReport {
    /// Largest entry magnitude of any off-diagonal block `(k, l)`, `k ≠ l`,
    /// within the half range `0..=N`.
    pub cross_bin_max: f64,
    /// Per-bin `max |Ĉ_kk − S(k/2N)| / max |S(k/2N)|`, `k = 0..=N`.
    pub bin_deviation: Vec<f64>,
    /// Largest entry of the half-range spectral covariance of the *actual*
    /// mirror-extended window minus the circulant model, relative to
    /// `max_k max |S(k/2N)|`. Nonzero in general: the extension duplicates
    /// samples, so its covariance is only approximately circulant.
    pub mirror_gap: f64,
}

impl DiagonalizationReport {
    pub fn max_bin_deviation(&self) -> f64 {
        self.bin_deviation.iter().copied().fold(0.0, f64::max)
    }
}

/// `F C Fᴴ` with `F = F_{2N} ⊗ I_p` the unitary DFT acting on block indices;
/// returns the half-range blocks `(k, l)`, `k, l ∈ 0..=N`.
fn conjugate_by_dft(cov: &DMatrix<f64>, p: usize, n: usize) -> Vec<Vec<DMatrix<Complex<f64>>>> {
    let len = 2 * n;
    let scale = 1.0 / len as f64;
    let omega = |k: usize, a: usize| {
        let ang = -2.0 * PI * ((k * a) % len) as f64 / len as f64;
        Complex::new(ang.cos(), ang.sin())
    };
    // T[k][b] = Σ_a ω^{ka} C_ab
    let t: Vec<Vec<DMatrix<Complex<f64>>>> = (0..=n)
        .map(|k| {
            (0..len)
                .map(|b| {
                    let mut acc = DMatrix::<Complex<f64>>::zeros(p, p);
                    for a in 0..len {
                        let w = omega(k, a);
                        let blk = cov.view((a * p, b * p), (p, p));
                        acc.zip_apply(&blk, |x, y| *x += w * y);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    (0..=n)
        .map(|k| {
            (0..=n)
                .map(|l| {
                    let mut acc = DMatrix::<Complex<f64>>::zeros(p, p);
                    for (b, tb) in t[k].iter().enumerate() {
                        let w = omega(l, b).conj() * scale;
                        acc += tb.map(|v| v * w);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Checks that the unitary DFT block-diagonalizes the circulant extension
/// covariance with diagonal blocks equal to the SDM at `θ = k/(2N)`.
pub fn diagonalization_oracle(spec: &ProcessSpec, n: usize) -> Result<DiagonalizationReport> {
    let p = spec.p();
    check_size(p, n)?;
    let acf = acf_of_spec(spec);
    if 2 * acf.support() >= n {
        return Err(Error::InvalidConfiguration(format!(
            "ACF support {} must be below N/2 = {}",
            acf.support(),
            n as f64 / 2.0
        )));
    }
    let sdm = sdm_from_acf(&acf, 2 * n)?;
    let circ = conjugate_by_dft(&circulant_extension_covariance(&acf, n)?, p, n);
    let mirror = conjugate_by_dft(&mirror_extension_covariance(&acf, n)?, p, n);

    let max_abs = |m: &DMatrix<Complex<f64>>| m.iter().fold(0.0_f64, |acc, v| acc.max(v.norm()));
    let s_scale = sdm
        .mats()
        .iter()
        .fold(0.0_f64, |acc, m| acc.max(m.abs().max()))
        .max(f64::MIN_POSITIVE);

    let mut cross_bin_max = 0.0_f64;
    let mut bin_deviation = Vec::with_capacity(n + 1);
    let mut mirror_gap = 0.0_f64;
    for k in 0..=n {
        for l in 0..=n {
            let blk = &circ[k][l];
            if k == l {
                let s = sdm.at(k);
                let dev = blk.zip_map(s, |c, s| (c - Complex::new(s, 0.0)).norm()).max();
                bin_deviation.push(dev / s.abs().max().max(f64::MIN_POSITIVE));
            } else {
                cross_bin_max = cross_bin_max.max(max_abs(blk));
            }
            mirror_gap = mirror_gap.max(max_abs(&(&mirror[k][l] - blk)) / s_scale);
        }
    }
    Ok(DiagonalizationReport {
        cross_bin_max,
        bin_deviation,
        mirror_gap,
    })
}
