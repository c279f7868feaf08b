//! Spectral density, conditional independence graph and partial coherence
//! of a matched-pair process, plus the class-membership check.

use cigsel::model::{cig_from_inverse_sdm, eigen_band, partial_coherence, sdm_from_acf, ClassParams, ANALYSIS_GRID};
use cigsel::process::{acf_of_spec, build_matching_process, full_matching, FilterSpec};

fn main() -> cigsel::Result<()> {
    let p = 6;
    let pairs = full_matching(p);
    let spec = build_matching_process(p, &pairs, &[0.6, -0.4, 0.3], FilterSpec::exponential(0.5, 4)?)?;

    let acf = acf_of_spec(&spec);
    let sdm = sdm_from_acf(&acf, ANALYSIS_GRID)?;
    let band = eigen_band(&sdm)?;
    println!("ACF support {} lags, eigenvalues of S(theta) in [{:.4}, {:.4}]", acf.support(), band.min, band.max);

    let graph = cig_from_inverse_sdm(&sdm, None)?;
    println!("graph: {}", graph.to_json());
    let coh = partial_coherence(&sdm, &graph)?;
    for ((a, b), rho) in &coh.per_edge {
        println!("  coherence({a}, {b}) = {rho:.6}");
    }

    let class = ClassParams::new(p, 1, 0.3, spec.b_actual())?;
    let m = class.membership(&sdm)?;
    println!("member of class (d_max=1, rho_min=0.3, B={:.3}): {}", spec.b_actual(), m.is_member());
    let strict = ClassParams::new(p, 1, 0.5, spec.b_actual())?;
    println!("member with rho_min=0.5: {}", strict.membership(&sdm)?.is_member());
    Ok(())
}
