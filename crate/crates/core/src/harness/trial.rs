use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::seeds::{fold_id, trial_seed};
use super::stats::wilson_interval;
use crate::error::Result;
use crate::graph::{graph_equal, Graph};
use crate::process::{sample, FanoEnsemble, ProcessSpec};
use crate::selector::{select_graph, SampleBlock};

/// Anything that maps observations to a graph estimate.
pub trait Decoder: Sync {
    fn decode(&self, x: &SampleBlock) -> Result<Graph>;
}

impl<F> Decoder for F
where
    F: Fn(&SampleBlock) -> Result<Graph> + Sync,
{
    fn decode(&self, x: &SampleBlock) -> Result<Graph> {
        self(x)
    }
}

/// The spectral thresholding selector with fixed class parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralThreshold {
    pub rho_min: f64,
    pub b: f64,
}

impl Decoder for SpectralThreshold {
    fn decode(&self, x: &SampleBlock) -> Result<Graph> {
        Ok(select_graph(x, self.rho_min, self.b)?.graph)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub p: usize,
    pub n: usize,
    pub trial: u64,
    pub seed: u64,
    pub success: bool,
    /// `|E Δ Ê|`.
    pub edge_errors: usize,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// One draw of the selection-error event: sample, decode, compare.
pub fn run_trial<D: Decoder + ?Sized>(
    spec: &ProcessSpec,
    n: usize,
    trial: u64,
    seed: u64,
    decoder: &D,
) -> Result<TrialRecord> {
    let start = Instant::now();
    let x = sample(spec, n, seed)?;
    let estimate = decoder.decode(&x)?;
    let (success, edge_errors) = graph_equal(&spec.truth, &estimate)?;
    Ok(TrialRecord {
        p: spec.p(),
        n,
        trial,
        seed,
        success,
        edge_errors,
        wall_time: start.elapsed(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorEstimate {
    pub trials: usize,
    pub failures: usize,
    pub rate: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

impl ErrorEstimate {
    pub fn from_counts(failures: usize, trials: usize) -> Self {
        let (wilson_lo, wilson_hi) = wilson_interval(failures, trials);
        ErrorEstimate {
            trials,
            failures,
            rate: failures as f64 / trials.max(1) as f64,
            wilson_lo,
            wilson_hi,
        }
    }
}

/// Failure rate over `trials` independently seeded trials; trial `t` uses
/// `trial_seed(master_seed, cell_id, t)`.
pub fn estimate_error_prob<D: Decoder + ?Sized>(
    spec: &ProcessSpec,
    n: usize,
    trials: usize,
    master_seed: u64,
    cell_id: u64,
    decoder: &D,
) -> Result<ErrorEstimate> {
    let records = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(spec, n, t, trial_seed(master_seed, cell_id, t), decoder))
        .collect::<Result<Vec<_>>>()?;
    let failures = records.iter().filter(|r| !r.success).count();
    Ok(ErrorEstimate::from_counts(failures, trials))
}

/// Error of a decoder on uniformly drawn ensemble members.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleEstimate {
    /// Pooled over all trials (the Bayes error under the uniform prior).
    pub overall: ErrorEstimate,
    /// Mean of the per-member rates over members drawn at least once.
    pub mean_member_rate: f64,
    /// Largest per-member rate.
    pub max_member_rate: f64,
}

const ENSEMBLE_STREAM: u64 = 0x656e_7365_6d62_6c65;

pub fn estimate_ensemble_error<D: Decoder + ?Sized>(
    ensemble: &FanoEnsemble,
    n: usize,
    trials: usize,
    master_seed: u64,
    decoder: &D,
) -> Result<EnsembleEstimate> {
    let cell = fold_id(&[ENSEMBLE_STREAM, ensemble.p as u64, ensemble.rho.to_bits(), n as u64]);
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(master_seed, cell, t);
            let member = ChaCha8Rng::seed_from_u64(seed).random_range(0..ensemble.len());
            let sample_seed = trial_seed(seed, member as u64, t);
            run_trial(&ensemble.members[member], n, t, sample_seed, decoder)
                .map(|rec| (member, rec.success))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut per_member = vec![(0usize, 0usize); ensemble.len()];
    for &(m, ok) in &outcomes {
        per_member[m].0 += 1;
        if !ok {
            per_member[m].1 += 1;
        }
    }
    let rates: Vec<f64> = per_member
        .iter()
        .filter(|(draws, _)| *draws > 0)
        .map(|&(draws, fails)| fails as f64 / draws as f64)
        .collect();
    let failures = outcomes.iter().filter(|(_, ok)| !ok).count();
    Ok(EnsembleEstimate {
        overall: ErrorEstimate::from_counts(failures, trials),
        mean_member_rate: rates.iter().sum::<f64>() / rates.len().max(1) as f64,
        max_member_rate: rates.iter().copied().fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::process::{build_fano_ensemble, build_matching_process, FilterSpec};

    #[test]
    fn trial_is_deterministic() {
        let spec = build_matching_process(4, &[(0, 1)], &[0.5], FilterSpec::unit_impulse()).unwrap();
        let dec = SpectralThreshold { rho_min: 0.5, b: spec.b_actual() };
        let a = run_trial(&spec, 64, 0, 99, &dec).unwrap();
        let b = run_trial(&spec, 64, 0, 99, &dec).unwrap();
        assert_eq!((a.success, a.edge_errors, a.seed), (b.success, b.edge_errors, b.seed));
    }

    #[test]
    fn finite_support_violation_propagates() {
        let spec = build_matching_process(2, &[(0, 1)], &[0.5], FilterSpec::exponential(0.5, 8).unwrap())
            .unwrap();
        let dec = SpectralThreshold { rho_min: 0.5, b: spec.b_actual() };
        assert!(matches!(
            run_trial(&spec, 4, 0, 1, &dec),
            Err(Error::InvalidConfiguration(_))
        ));
    }

    #[test]
    fn stub_decoders() {
        let spec = build_matching_process(3, &[(0, 2)], &[0.5], FilterSpec::unit_impulse()).unwrap();
        let truth = spec.truth.clone();
        let oracle = move |_: &SampleBlock| Ok(truth.clone());
        let est = estimate_error_prob(&spec, 8, 200, 5, 0, &oracle).unwrap();
        assert_eq!(est.rate, 0.0);
        assert_eq!(est.wilson_lo, 0.0);
        assert!((est.wilson_hi - 0.0188).abs() < 5e-4);

        let empty = |x: &SampleBlock| Ok(Graph::empty(x.p()));
        assert_eq!(estimate_error_prob(&spec, 8, 50, 5, 0, &empty).unwrap().rate, 1.0);
    }

    #[test]
    fn ensemble_draws_cover_members() {
        let e = build_fano_ensemble(4, 0.25).unwrap();
        let empty = |x: &SampleBlock| Ok(Graph::empty(x.p()));
        let est = estimate_ensemble_error(&e, 4, 120, 3, &empty).unwrap();
        assert_eq!(est.overall.rate, 1.0);
        assert_eq!(est.max_member_rate, 1.0);
        assert_eq!(est.mean_member_rate, 1.0);
    }
}
