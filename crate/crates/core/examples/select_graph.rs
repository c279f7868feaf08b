//! Runs the DFT thresholding selector on simulated data at a few sample sizes.

use cigsel::graph_equal;
use cigsel::process::{build_matching_process, full_matching, sample, FilterSpec};
use cigsel::selector::{select_graph, threshold};

fn main() -> cigsel::Result<()> {
    let p = 8;
    let rho_min = 0.5;
    let pairs = full_matching(p);
    let spec = build_matching_process(p, &pairs, &vec![rho_min; pairs.len()], FilterSpec::unit_impulse())?;
    let b = spec.b_actual();
    println!("truth {}  B = {b}", spec.truth.to_json());

    for n in [20, 100, 500, 2000] {
        let x = sample(&spec, n, 7)?;
        let result = select_graph(&x, rho_min, b)?;
        let (exact, diff) = graph_equal(&result.graph, &spec.truth)?;
        println!("N = {n:5}  eta = {:8.2}  exact = {exact}  |E diff| = {diff}", threshold(n, rho_min, b));
        if n == 100 {
            for d in &result.per_node {
                println!("    node {} -> {} |Z| = {:.2} kept {}", d.r, d.rhat, d.zmax, d.kept);
            }
        }
    }
    Ok(())
}
