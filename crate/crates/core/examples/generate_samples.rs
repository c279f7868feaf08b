//! Builds a process spec, draws a seeded sample block and compares the
//! empirical autocovariance with the exact one.

use cigsel::harness::acf_fidelity;
use cigsel::process::{build_matching_process, sample, FilterSpec, ProcessSpec};

fn main() -> cigsel::Result<()> {
    let spec = build_matching_process(4, &[(0, 1), (2, 3)], &[0.4, 0.7], FilterSpec::exponential(0.5, 4)?)?;
    let json = spec.to_json();
    println!("{json}");
    assert_eq!(ProcessSpec::from_json(&json)?.truth, spec.truth);

    let x = sample(&spec, 16, 42)?;
    let mut csv = Vec::new();
    x.write_csv(&mut csv)?;
    println!("first lines of the sample CSV:");
    for line in String::from_utf8_lossy(&csv).lines().take(3) {
        println!("  {line}");
    }

    let fid = acf_fidelity(&spec, 50_000, 42, 2)?;
    for e in fid.entries.iter().filter(|e| e.a <= e.b) {
        println!(
            "lag {} ({}, {}): empirical {:+.4} exact {:+.4} z {:+.2}",
            e.lag, e.a, e.b, e.empirical, e.expected, e.z_score()
        );
    }
    Ok(())
}
