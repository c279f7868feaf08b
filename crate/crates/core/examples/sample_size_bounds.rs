//! Necessary and sufficient sample sizes and the Fano floor across p.

use cigsel::bounds::{fano_error_floor, graph_entropy, mi_linear_bound, num_pairs, BoundReport};

fn main() -> cigsel::Result<()> {
    println!("{:>5} {:>12} {:>14}", "p", "necessary", "sufficient");
    for p in [8, 16, 32, 64, 128, 256] {
        let r = BoundReport::evaluate(p, 0.25, 3.0, 0.05, None)?;
        println!("{p:>5} {:>12.2} {:>14.1}", r.necessary_n.unwrap_or(f64::NAN), r.sufficient_n);
    }

    let (p, rho) = (10, 0.25);
    let h = graph_entropy(num_pairs(p))?;
    println!("\nFano floor for p = {p}, rho = {rho} (H = {h:.3} bits):");
    for n in [1, 2, 3, 5, 10] {
        println!("  N = {n:2}: {:.4}", fano_error_floor(mi_linear_bound(n, rho), h)?);
    }

    let report = BoundReport::evaluate(p, rho, 3.0, 0.05, Some(1))?;
    println!("\n{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
