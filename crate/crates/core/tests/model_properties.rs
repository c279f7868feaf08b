use cigsel::model::{cig_from_inverse_sdm, partial_coherence, sdm_from_acf, ANALYSIS_GRID};
use cigsel::process::{acf_of_spec, build_matching_process, full_matching, FilterSpec};
use proptest::prelude::*;

fn permutation(p: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..p).collect();
    let mut s = seed;
    for i in (1..p).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn graph_and_coherence_are_scale_invariant(
        p in 2usize..7,
        kappa in -0.9f64..0.9,
        beta in -0.8f64..0.8,
        k in 1usize..5,
        c in 0.01f64..100.0,
    ) {
        prop_assume!(kappa.abs() > 0.05);
        let pairs = full_matching(p);
        let spec = build_matching_process(p, &pairs, &vec![kappa; pairs.len()], FilterSpec::exponential(beta, k).unwrap()).unwrap();
        let sdm = sdm_from_acf(&acf_of_spec(&spec), ANALYSIS_GRID).unwrap();
        let scaled = sdm.scaled(c);
        let g = cig_from_inverse_sdm(&sdm, None).unwrap();
        prop_assert_eq!(&g, &cig_from_inverse_sdm(&scaled, None).unwrap());
        prop_assert_eq!(&g, &spec.truth);
        let a = partial_coherence(&sdm, &g).unwrap();
        let b = partial_coherence(&scaled, &g).unwrap();
        match (a.min, b.min) {
            (Some(x), Some(y)) => {
                prop_assert!((x - y).abs() < 1e-10);
                prop_assert!((x - kappa.abs()).abs() < 1e-9);
            }
            (None, None) => prop_assert!(p < 2),
            _ => prop_assert!(false, "coherence presence differs"),
        }
    }

    #[test]
    fn cig_is_permutation_equivariant(p in 2usize..8, seed in any::<u64>(), kappa in 0.1f64..0.9) {
        let pairs = full_matching(p);
        let perm = permutation(p, seed);
        let spec = build_matching_process(p, &pairs, &vec![kappa; pairs.len()], FilterSpec::exponential(0.4, 3).unwrap()).unwrap();
        let moved: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let permuted = build_matching_process(p, &moved, &vec![kappa; moved.len()], FilterSpec::exponential(0.4, 3).unwrap()).unwrap();
        let g = cig_from_inverse_sdm(&sdm_from_acf(&acf_of_spec(&spec), 64).unwrap(), None).unwrap();
        let gp = cig_from_inverse_sdm(&sdm_from_acf(&acf_of_spec(&permuted), 64).unwrap(), None).unwrap();
        prop_assert_eq!(g.permuted(&perm).unwrap(), gp);
    }

    #[test]
    fn sdm_is_symmetric_and_real(p in 1usize..6, kappa in -0.9f64..0.9, beta in -0.9f64..0.9, k in 1usize..6) {
        let pairs = full_matching(p);
        let spec = build_matching_process(p, &pairs, &vec![kappa; pairs.len()], FilterSpec::exponential(beta, k).unwrap()).unwrap();
        let sdm = sdm_from_acf(&acf_of_spec(&spec), 32).unwrap();
        for m in sdm.mats() {
            prop_assert!(m.iter().all(|v| v.is_finite()));
            prop_assert!((m - m.transpose()).abs().max() <= 1e-12 * m.abs().max());
        }
    }
}

#[test]
fn spectral_band_matches_generator() {
    let spec = build_matching_process(4, &full_matching(4), &[0.5, -0.3], FilterSpec::exponential(0.6, 5).unwrap()).unwrap();
    let sdm = sdm_from_acf(&acf_of_spec(&spec), ANALYSIS_GRID).unwrap();
    let band = cigsel::model::eigen_band(&sdm).unwrap();
    assert!(band.min >= 1.0 - 1e-9, "min eigenvalue {}", band.min);
    assert!(band.max <= spec.b_actual() * (1.0 + 1e-9));
    assert!(band.max >= 0.95 * spec.b_actual());
}
