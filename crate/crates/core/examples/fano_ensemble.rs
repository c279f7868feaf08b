//! The single-edge lower-bound ensemble: validity, mutual information and
//! what goes wrong with a mis-specified shrinkage coefficient.

use cigsel::bounds::{mi_entropy_bound, mi_linear_bound};
use cigsel::harness::ensemble_validity;
use cigsel::process::{build_fano_ensemble, corrected_shrinkage, FanoEnsemble};

fn main() -> cigsel::Result<()> {
    for rho in [0.05, 0.1, 0.25] {
        let e = build_fano_ensemble(6, rho)?;
        let v = ensemble_validity(&e)?;
        println!(
            "p=6 rho={rho:.2}: {} members, c = {:.4}, valid {}, coherence margin {:.4}, I(N=1) = {:.5} <= {:.5}",
            e.len(),
            corrected_shrinkage(rho),
            v.is_valid(),
            v.coherence_margin,
            mi_entropy_bound(&e, 1)?,
            mi_linear_bound(1, rho)
        );
    }

    let rho = 0.25;
    let weak = FanoEnsemble::with_shrinkage(6, rho, 2.0 * rho / (1.0 + 4.0 * rho))?;
    let v = ensemble_validity(&weak)?;
    println!(
        "shrinkage 2rho/(1+4rho): band ok {}, coherence ok {} (margin {:.4})",
        v.band_ok, v.coherence_ok, v.coherence_margin
    );
    Ok(())
}
