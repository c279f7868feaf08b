//! Seeded Monte Carlo checks of the spectral statistics.

use std::f64::consts::PI;

use cigsel::harness::trial_seed;
use cigsel::process::{acf_of_spec, build_matching_process, sample, FilterSpec};
use cigsel::selector::{dft_rows, mirror_extend, mirror_extension_covariance, z_statistics};

#[test]
fn z_statistic_mean_is_scaled_covariance() {
    let spec = build_matching_process(2, &[(0, 1)], &[0.5], FilterSpec::exponential(0.5, 3).unwrap()).unwrap();
    let c01 = acf_of_spec(&spec).lag(0)[(0, 1)];
    let (n, draws) = (32, 4000);
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for t in 0..draws {
        let x = sample(&spec, n, trial_seed(11, 0, t)).unwrap();
        let s = dft_rows(&mirror_extend(&x).unwrap()).unwrap();
        let st = z_statistics(&s, 0).unwrap();
        let v = st.z[0] / st.normalizer;
        sum += v;
        sumsq += v * v;
    }
    let mean = sum / draws as f64;
    let se = ((sumsq / draws as f64 - mean * mean) / draws as f64).sqrt();
    assert!((mean - c01).abs() < 4.0 * se, "mean {mean} vs {c01} (se {se})");
}

#[test]
fn bin_variance_matches_exact_mirror_covariance() {
    let spec = build_matching_process(1, &[], &[], FilterSpec::exponential(0.6, 3).unwrap()).unwrap();
    let n = 8;
    let len = 2 * n;
    let cov = mirror_extension_covariance(&acf_of_spec(&spec), n).unwrap();
    let weights = |k: usize| -> Vec<f64> {
        (0..len)
            .map(|i| (2.0 * PI * (k * i) as f64 / len as f64).cos() / (len as f64).sqrt())
            .collect()
    };
    let bins = [0, 3, n];
    let expected: Vec<f64> = bins
        .iter()
        .map(|&k| {
            let w = weights(k);
            let mut v = 0.0;
            for a in 0..len {
                for b in 0..len {
                    v += w[a] * cov[(a, b)] * w[b];
                }
            }
            v
        })
        .collect();

    let draws = 20_000;
    let mut acc = vec![0.0; bins.len()];
    for t in 0..draws {
        let x = sample(&spec, n, trial_seed(12, 0, t)).unwrap();
        let s = dft_rows(&mirror_extend(&x).unwrap()).unwrap();
        for (slot, &k) in acc.iter_mut().zip(&bins) {
            *slot += s.row(0)[k].powi(2);
        }
    }
    for ((&k, e), a) in bins.iter().zip(&expected).zip(&acc) {
        let est = a / draws as f64;
        // Relative standard error of a Gaussian second moment is sqrt(2/draws) ≈ 1%.
        assert!((est / e - 1.0).abs() < 0.05, "bin {k}: {est} vs {e}");
    }
}
