use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::filter::FilterShape;
use super::{FilterSpec, InnovationCovariance};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::Acf;

/// Largest `n·p` accepted by [`exact_covariance`].
pub const EXACT_COVARIANCE_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProcessKind {
    /// Matched-pair innovations scaled so the spectral floor is exactly 1.
    MatchedPair,
    /// Member of the single-edge white ensemble.
    FanoMember,
    /// Matched-pair structure with a caller-chosen scale.
    Custom,
}

/// A fully specified filtered-white-noise process
/// `x[n] = Σ_m h[m] w[n-m]`, `w[n] ~ N(0, C)` i.i.d.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessSpec {
    pub kind: ProcessKind,
    pub filter: FilterSpec,
    pub innovations: InnovationCovariance,
    pub truth: Graph,
    /// Pair parameters as supplied (partial correlations for matched pairs,
    /// `ρ` for ensemble members).
    pub kappa: Vec<f64>,
    /// Innovation scale `s`; `None` for ensemble members.
    pub scale: Option<f64>,
    /// Spectral eigenvalue range `(λ_min, λ_max)` over all frequencies.
    pub band: (f64, f64),
}

impl ProcessSpec {
    pub fn p(&self) -> usize {
        self.innovations.p()
    }

    /// Spectral ceiling `B` realized by this process.
    pub fn b_actual(&self) -> f64 {
        self.band.1
    }

    pub(crate) fn assemble(
        kind: ProcessKind,
        filter: FilterSpec,
        innovations: InnovationCovariance,
        kappa: Vec<f64>,
        scale: Option<f64>,
    ) -> Self {
        let (hmin, hmax) = filter.power_range();
        let (cmin, cmax) = innovations.eigen_range();
        ProcessSpec {
            kind,
            truth: innovations.graph(),
            band: (hmin * cmin, hmax * cmax),
            filter,
            innovations,
            kappa,
            scale,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SpecRepr::from(self)).expect("spec serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: SpecRepr = serde_json::from_str(s)?;
        repr.build()
    }
}

/// Disjoint pairs `(0,1), (2,3), …`; the last node is a singleton when `p` is odd.
pub fn full_matching(p: usize) -> Vec<(usize, usize)> {
    (0..p / 2).map(|i| (2 * i, 2 * i + 1)).collect()
}

/// Pairs covering the first half of the nodes; the rest are singletons.
pub fn half_matching(p: usize) -> Vec<(usize, usize)> {
    full_matching(p / 2 + (p / 2) % 2)
        .into_iter()
        .filter(|&(_, b)| b < p)
        .collect()
}

/// Matched-pair process with innovation precision `[[1, κ], [κ, 1]]/s` on each
/// pair and `1/s` on singletons.
///
/// `s = (1 + max|κ|) / min_θ |H(θ)|²`, which puts the smallest spectral
/// eigenvalue exactly at 1; the ceiling `B` is then whatever the filter and
/// `κ` produce and is stored in the spec.
pub fn build_matching_process(
    p: usize,
    pairs: &[(usize, usize)],
    kappa: &[f64],
    filter: FilterSpec,
) -> Result<ProcessSpec> {
    if kappa.len() != pairs.len() {
        return Err(Error::DimensionMismatch {
            expected: pairs.len(),
            found: kappa.len(),
        });
    }
    let (hmin, _) = filter.power_range();
    if !(hmin > 1e-12) {
        return Err(Error::InvalidInput(format!(
            "filter response vanishes (min |H|² = {hmin:e}); the spectral floor cannot be met"
        )));
    }
    let kmax = kappa.iter().fold(0.0_f64, |m, k| m.max(k.abs()));
    let scale = (1.0 + kmax) / hmin;
    let innovations = InnovationCovariance::matched(p, pairs, kappa, scale)?;
    Ok(ProcessSpec::assemble(
        ProcessKind::MatchedPair,
        filter,
        innovations,
        kappa.to_vec(),
        Some(scale),
    ))
}

/// Matched-pair structure with an explicit innovation scale (no floor guarantee).
pub(crate) fn build_custom_process(
    p: usize,
    pairs: &[(usize, usize)],
    kappa: &[f64],
    filter: FilterSpec,
    scale: f64,
) -> Result<ProcessSpec> {
    let innovations = InnovationCovariance::matched(p, pairs, kappa, scale)?;
    Ok(ProcessSpec::assemble(
        ProcessKind::Custom,
        filter,
        innovations,
        kappa.to_vec(),
        Some(scale),
    ))
}

/// `R[m] = r_h[m] · C`, support `K - 1`.
pub fn acf_of_spec(spec: &ProcessSpec) -> Acf {
    let c = spec.innovations.covariance();
    Acf::new(spec.filter.autocorrelation().into_iter().map(|r| &c * r).collect())
        .expect("a valid spec always yields a valid ACF")
}

/// Covariance of `(x[1]ᵀ, …, x[n]ᵀ)ᵀ`: block Toeplitz with block `(a, b)`
/// equal to `R[a - b]`.
pub fn exact_covariance(spec: &ProcessSpec, n: usize) -> Result<DMatrix<f64>> {
    let p = spec.p();
    if n == 0 {
        return Err(Error::InvalidInput("window length must be at least 1".into()));
    }
    if n * p > EXACT_COVARIANCE_LIMIT {
        return Err(Error::OracleTooLarge {
            size: n * p,
            limit: EXACT_COVARIANCE_LIMIT,
        });
    }
    let acf = acf_of_spec(spec);
    Ok(block_toeplitz(&acf, n))
}

pub(crate) fn block_toeplitz(acf: &Acf, n: usize) -> DMatrix<f64> {
    let p = acf.p();
    let mut out = DMatrix::zeros(n * p, n * p);
    for a in 0..n {
        for b in 0..n {
            let lag = a as i64 - b as i64;
            if lag.unsigned_abs() as usize > acf.support() {
                continue;
            }
            out.view_mut((a * p, b * p), (p, p)).copy_from(&acf.lag(lag));
        }
    }
    out
}

// JSON layout:
// {"kind": "...", "p": ..., "pairs": [[a,b],...], "kappa": ..., "filter": {"beta": ..., "K": ...}, "scale": ...}

#[derive(Debug, Serialize, Deserialize)]
struct SpecRepr {
    kind: ProcessKind,
    p: usize,
    pairs: Vec<[usize; 2]>,
    kappa: KappaRepr,
    filter: FilterRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum KappaRepr {
    Uniform(f64),
    PerPair(Vec<f64>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum FilterRepr {
    Exponential {
        beta: f64,
        #[serde(rename = "K")]
        k: usize,
    },
    Taps {
        taps: Vec<f64>,
    },
}

impl From<&ProcessSpec> for SpecRepr {
    fn from(spec: &ProcessSpec) -> Self {
        let kappa = match spec.kappa.split_first() {
            Some((first, rest)) if rest.iter().all(|k| k == first) => KappaRepr::Uniform(*first),
            _ => KappaRepr::PerPair(spec.kappa.clone()),
        };
        let filter = match spec.filter.shape() {
            FilterShape::Exponential { beta, k } => FilterRepr::Exponential { beta, k },
            FilterShape::Taps => FilterRepr::Taps {
                taps: spec.filter.taps().to_vec(),
            },
        };
        SpecRepr {
            kind: spec.kind,
            p: spec.p(),
            pairs: spec.innovations.pairs().iter().map(|b| [b.a, b.b]).collect(),
            kappa,
            filter,
            scale: spec.scale,
        }
    }
}

impl SpecRepr {
    fn build(self) -> Result<ProcessSpec> {
        let pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&[a, b]| (a, b)).collect();
        let kappa = match self.kappa {
            KappaRepr::Uniform(k) => vec![k; pairs.len()],
            KappaRepr::PerPair(v) => v,
        };
        let filter = match self.filter {
            FilterRepr::Exponential { beta, k } => FilterSpec::exponential(beta, k)?,
            FilterRepr::Taps { taps } => FilterSpec::normalized(taps)?,
        };
        match self.kind {
            ProcessKind::MatchedPair => {
                let spec = build_matching_process(self.p, &pairs, &kappa, filter)?;
                if let (Some(given), Some(derived)) = (self.scale, spec.scale) {
                    if (given - derived).abs() > 1e-9 * derived {
                        return Err(Error::InvalidConfiguration(format!(
                            "scale {given} disagrees with the floor-achieving scale {derived}; \
                             use kind \"custom\" to set it explicitly"
                        )));
                    }
                }
                Ok(spec)
            }
            ProcessKind::Custom => {
                let scale = self.scale.ok_or_else(|| {
                    Error::InvalidConfiguration("kind \"custom\" requires \"scale\"".into())
                })?;
                build_custom_process(self.p, &pairs, &kappa, filter, scale)
            }
            ProcessKind::FanoMember => {
                let (&pair, &rho) = match (pairs.as_slice(), kappa.as_slice()) {
                    ([pair], [rho]) => (pair, rho),
                    _ => {
                        return Err(Error::InvalidConfiguration(
                            "a fano-member spec has exactly one pair and one kappa (= rho)".into(),
                        ))
                    }
                };
                if filter.len() != 1 {
                    return Err(Error::InvalidConfiguration(
                        "fano-member processes are white (filter length 1)".into(),
                    ));
                }
                super::fano::member(self.p, pair, rho, super::corrected_shrinkage(rho))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        acf_moment, cig_from_inverse_sdm, eigen_band, partial_coherence, sdm_from_acf,
    };

    #[test]
    fn matched_pair_coherence_and_truth() {
        let spec = build_matching_process(2, &[(0, 1)], &[0.4], FilterSpec::unit_impulse()).unwrap();
        assert_eq!(spec.truth.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let sdm = sdm_from_acf(&acf_of_spec(&spec), 8).unwrap();
        let coh = partial_coherence(&sdm, &spec.truth).unwrap();
        assert!((coh.min.unwrap() - 0.4).abs() < 1e-12);
        let band = eigen_band(&sdm).unwrap();
        assert!((band.min - 1.0).abs() < 1e-12);
        assert!((band.max - spec.b_actual()).abs() < 1e-12);
    }

    #[test]
    fn empty_matching_has_no_edges() {
        let spec = build_matching_process(3, &[], &[], FilterSpec::exponential(0.3, 3).unwrap())
            .unwrap();
        assert!(spec.truth.is_empty());
        let sdm = sdm_from_acf(&acf_of_spec(&spec), 16).unwrap();
        assert_eq!(partial_coherence(&sdm, &spec.truth).unwrap().min, None);
    }

    #[test]
    fn two_pairs_have_unit_degree() {
        let spec = build_matching_process(4, &[(0, 1), (2, 3)], &[0.5, 0.5], FilterSpec::unit_impulse())
            .unwrap();
        assert_eq!(spec.truth.max_degree(), 1);
    }

    #[test]
    fn vanishing_filter_is_rejected() {
        let f = FilterSpec::normalized(vec![1.0, -1.0]).unwrap();
        assert!(build_matching_process(2, &[(0, 1)], &[0.2], f).is_err());
        assert!(build_matching_process(4, &[(0, 1), (1, 2)], &[0.2, 0.2], FilterSpec::unit_impulse()).is_err());
        assert!(build_matching_process(2, &[(0, 1)], &[1.2], FilterSpec::unit_impulse()).is_err());
    }

    #[test]
    fn acf_examples() {
        let white = build_matching_process(3, &[(0, 2)], &[0.3], FilterSpec::unit_impulse()).unwrap();
        let acf = acf_of_spec(&white);
        assert_eq!(acf.support(), 0);
        assert_eq!(acf.lag(0), white.innovations.covariance());

        let avg = FilterSpec::new(vec![0.5f64.sqrt(), 0.5f64.sqrt()]).unwrap();
        let spec = build_custom_process(2, &[], &[], avg, 1.0).unwrap();
        let acf = acf_of_spec(&spec);
        assert!((acf.lag(0) - DMatrix::identity(2, 2)).abs().max() < 1e-15);
        assert!((acf.lag(-1) - DMatrix::identity(2, 2) * 0.5).abs().max() < 1e-15);
        assert!((acf_moment(&acf) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exact_covariance_examples() {
        let white = build_matching_process(2, &[(0, 1)], &[0.3], FilterSpec::unit_impulse()).unwrap();
        let c = white.innovations.covariance();
        let cov = exact_covariance(&white, 2).unwrap();
        assert_eq!(cov.view((0, 0), (2, 2)), c.view((0, 0), (2, 2)));
        assert_eq!(cov.view((2, 2), (2, 2)), c.view((0, 0), (2, 2)));
        assert_eq!(cov.view((0, 2), (2, 2)).abs().max(), 0.0);

        let avg = FilterSpec::new(vec![0.5f64.sqrt(), 0.5f64.sqrt()]).unwrap();
        let spec = build_custom_process(1, &[], &[], avg, 1.0).unwrap();
        let cov = exact_covariance(&spec, 3).unwrap();
        let expected = DMatrix::from_row_slice(3, 3, &[1.0, 0.5, 0.0, 0.5, 1.0, 0.5, 0.0, 0.5, 1.0]);
        assert!((cov - expected).abs().max() < 1e-15);

        assert!(matches!(
            exact_covariance(&white, 4000),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn ground_truth_matches_inverse_sdm() {
        let spec = build_matching_process(
            6,
            &[(0, 5), (1, 3)],
            &[0.6, -0.2],
            FilterSpec::exponential(-0.4, 5).unwrap(),
        )
        .unwrap();
        let sdm = sdm_from_acf(&acf_of_spec(&spec), 64).unwrap();
        assert_eq!(cig_from_inverse_sdm(&sdm, None).unwrap(), spec.truth);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let spec = build_matching_process(
            4,
            &[(0, 1), (2, 3)],
            &[0.5, 0.5],
            FilterSpec::exponential(0.5, 4).unwrap(),
        )
        .unwrap();
        let back = ProcessSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);

        let minimal = r#"{"kind":"matched-pair","p":3,"pairs":[[0,2]],"kappa":0.4,"filter":{"beta":0.0,"K":1}}"#;
        let parsed = ProcessSpec::from_json(minimal).unwrap();
        assert!((parsed.scale.unwrap() - 1.4).abs() < 1e-15);

        let wrong_scale = r#"{"kind":"matched-pair","p":3,"pairs":[[0,2]],"kappa":0.4,"filter":{"beta":0.0,"K":1},"scale":2.0}"#;
        assert!(ProcessSpec::from_json(wrong_scale).is_err());

        let custom = r#"{"kind":"custom","p":2,"pairs":[[0,1]],"kappa":[0.1],"filter":{"taps":[1.0,1.0]},"scale":2.0}"#;
        let parsed = ProcessSpec::from_json(custom).unwrap();
        assert_eq!(parsed.kind, ProcessKind::Custom);
        assert_eq!(parsed.filter.len(), 2);
    }

    #[test]
    fn matchings() {
        assert_eq!(full_matching(5), vec![(0, 1), (2, 3)]);
        assert_eq!(half_matching(8), vec![(0, 1), (2, 3)]);
        assert_eq!(half_matching(6), vec![(0, 1), (2, 3)]);
        assert_eq!(half_matching(2), vec![(0, 1)]);
    }
}
