//! A small error-rate sweep written as CSV, then the 50% success point
//! N*(p) and its fit against ln p.

use cigsel::harness::{fit_log_scaling, phase_transition, sweep, write_sweep_csv, Cell, Matching, SweepConfig};

fn main() -> cigsel::Result<()> {
    let config = SweepConfig::from_json(
        r#"{"p_list":[8,16],"N_list":[25,50,100,200],"kappa_list":[0.5],"trials":50,"master_seed":1}"#,
    )?;
    let rows = sweep(&config)?;
    write_sweep_csv(&rows, std::io::stdout().lock())?;

    let mut points = Vec::new();
    for p in [8, 16, 32] {
        let template = Cell {
            p,
            n: 0,
            kappa: 0.5,
            filter: Default::default(),
            matching: Matching::Full,
        };
        let pt = phase_transition(&template, 1, 4096, 50, 1)?;
        println!("p = {p:3}: N* = {} after {} probes", pt.n_star, pt.probes.len());
        points.push((p, pt.n_star as f64));
    }
    let fit = fit_log_scaling(&points);
    println!("N* ~ {:.1} ln p, ratios {:?}", fit.c, fit.ratios);
    Ok(())
}
