use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::seeds::fold_id;
use super::trial::{estimate_error_prob, ErrorEstimate, SpectralThreshold};
use crate::bounds::{
    fano_error_floor, graph_entropy, mi_linear_bound, necessary_sample_size, num_pairs,
    sufficient_sample_size,
};
use crate::error::{Error, Result};
use crate::process::{build_matching_process, full_matching, half_matching, FilterSpec, ProcessSpec};

/// Which nodes carry matched pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Matching {
    /// `(0,1), (2,3), …` over all nodes.
    #[default]
    Full,
    /// Pairs over the first half of the nodes only.
    Half,
}

impl Matching {
    pub fn pairs(self, p: usize) -> Vec<(usize, usize)> {
        match self {
            Matching::Full => full_matching(p),
            Matching::Half => half_matching(p),
        }
    }

    fn tag(self) -> u64 {
        match self {
            Matching::Full => 1,
            Matching::Half => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterParams {
    pub beta: f64,
    #[serde(rename = "K")]
    pub k: usize,
}

impl Default for FilterParams {
    fn default() -> Self {
        FilterParams { beta: 0.0, k: 1 }
    }
}

fn default_delta() -> f64 {
    0.05
}

/// Grid of `(p, N, κ)` cells. Every pair shares the partial correlation `κ`,
/// so the selector is run with `ρ_min = |κ|` and the generator's `B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub p_list: Vec<usize>,
    #[serde(rename = "N_list", alias = "n_list")]
    pub n_list: Vec<usize>,
    #[serde(alias = "rho_list")]
    pub kappa_list: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub filter: FilterParams,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub matching: Matching,
}

impl SweepConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfiguration(msg));
        if self.p_list.is_empty() || self.n_list.is_empty() || self.kappa_list.is_empty() {
            return bad("p_list, N_list and kappa_list must be nonempty".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if let Some(p) = self.p_list.iter().find(|&&p| p < 2) {
            return bad(format!("p = {p} must be at least 2"));
        }
        if let Some(k) = self.kappa_list.iter().find(|k| !(k.abs() > 0.0 && k.abs() < 1.0)) {
            return bad(format!("kappa = {k} must satisfy 0 < |kappa| < 1"));
        }
        if self.filter.k == 0 {
            return bad("filter length K must be at least 1".into());
        }
        if let Some(n) = self.n_list.iter().find(|&&n| 2 * (self.filter.k - 1) >= n) {
            return bad(format!(
                "N = {n} violates the finite-support condition K - 1 < N/2 (K = {})",
                self.filter.k
            ));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta = {} not in (0, 1)", self.delta));
        }
        Ok(())
    }

    /// Cells sorted by `(p, N, κ)`, duplicates removed.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &p in &self.p_list {
            for &n in &self.n_list {
                for &kappa in &self.kappa_list {
                    cells.push(Cell {
                        p,
                        n,
                        kappa,
                        filter: self.filter,
                        matching: self.matching,
                    });
                }
            }
        }
        cells.sort_by(|a, b| {
            (a.p, a.n)
                .cmp(&(b.p, b.n))
                .then(a.kappa.total_cmp(&b.kappa))
        });
        cells.dedup();
        cells
    }
}

/// One sweep cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub p: usize,
    pub n: usize,
    pub kappa: f64,
    pub filter: FilterParams,
    pub matching: Matching,
}

impl Cell {
    /// Seed-stream identifier; a function of the cell parameters only.
    pub fn id(&self) -> u64 {
        fold_id(&[
            self.p as u64,
            self.n as u64,
            self.kappa.to_bits(),
            self.filter.beta.to_bits(),
            self.filter.k as u64,
            self.matching.tag(),
        ])
    }

    pub fn process(&self) -> Result<ProcessSpec> {
        let pairs = self.matching.pairs(self.p);
        let kappa = vec![self.kappa; pairs.len()];
        build_matching_process(
            self.p,
            &pairs,
            &kappa,
            FilterSpec::exponential(self.filter.beta, self.filter.k)?,
        )
    }

    pub fn rho_min(&self) -> f64 {
        self.kappa.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub cell: Cell,
    pub rho_min: f64,
    pub b_actual: f64,
    /// `Err` carries the message of a cell that could not be evaluated.
    pub estimate: std::result::Result<ErrorEstimate, String>,
    pub necessary_n: Option<f64>,
    pub sufficient_n: Option<f64>,
    pub fano_floor: Option<f64>,
    pub master_seed: u64,
    pub delta: f64,
}

pub const SWEEP_CSV_HEADER: &str = "p,n_samples,kappa,rho_min,b_actual,trials,failures,rate,wilson_lo,wilson_hi,necessary_n,sufficient_n,fano_floor,master_seed,delta,filter_beta,filter_k,matching";

fn evaluate_cell(cell: &Cell, trials: usize, master_seed: u64, delta: f64) -> SweepRow {
    let rho = cell.rho_min();
    let necessary_n = necessary_sample_size(cell.p, rho).ok().map(|v| v.max(0.0));
    let fano_floor = if rho <= 0.25 && num_pairs(cell.p) > 1 {
        graph_entropy(num_pairs(cell.p))
            .and_then(|h| fano_error_floor(mi_linear_bound(cell.n, rho), h))
            .ok()
    } else {
        None
    };
    let run = || -> Result<(f64, ErrorEstimate)> {
        let spec = cell.process()?;
        let decoder = SpectralThreshold {
            rho_min: rho,
            b: spec.b_actual(),
        };
        let est = estimate_error_prob(&spec, cell.n, trials, master_seed, cell.id(), &decoder)?;
        Ok((spec.b_actual(), est))
    };
    let (b_actual, estimate) = match run() {
        Ok((b, est)) => (b, Ok(est)),
        Err(e) => (f64::NAN, Err(e.to_string())),
    };
    SweepRow {
        cell: *cell,
        rho_min: rho,
        b_actual,
        sufficient_n: sufficient_sample_size(cell.p, rho, b_actual, delta).ok(),
        estimate,
        necessary_n,
        fano_floor,
        master_seed,
        delta,
    }
}

/// Evaluates every cell (in parallel) and returns rows in cell order.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    Ok(config
        .cells()
        .par_iter()
        .map(|cell| evaluate_cell(cell, config.trials, config.master_seed, config.delta))
        .collect())
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes the sweep table. Cells that failed carry `ERROR` in the
/// trial-outcome columns. The trailing columns after `master_seed` echo the
/// remaining cell inputs so each row can be re-run on its own.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for row in rows {
        let mut line = String::new();
        let c = &row.cell;
        write!(line, "{},{},{},{},", c.p, c.n, c.kappa, row.rho_min).unwrap();
        if row.b_actual.is_finite() {
            write!(line, "{},", row.b_actual).unwrap();
        } else {
            line.push(',');
        }
        match &row.estimate {
            Ok(e) => write!(
                line,
                "{},{},{},{},{},",
                e.trials, e.failures, e.rate, e.wilson_lo, e.wilson_hi
            )
            .unwrap(),
            Err(_) => line.push_str("ERROR,ERROR,ERROR,ERROR,ERROR,"),
        }
        write!(
            line,
            "{},{},{},{},{},{},{},{}",
            opt(row.necessary_n),
            opt(row.sufficient_n),
            opt(row.fano_floor),
            row.master_seed,
            row.delta,
            c.filter.beta,
            c.filter.k,
            match c.matching {
                Matching::Full => "full",
                Matching::Half => "half",
            }
        )
        .unwrap();
        writeln!(out, "{line}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> SweepConfig {
        SweepConfig::from_json(
            r#"{"p_list":[4],"N_list":[32],"kappa_list":[0.25],"trials":20,"master_seed":11}"#,
        )
        .unwrap()
    }

    #[test]
    fn single_cell_row_is_fully_populated() {
        let rows = sweep(&config()).unwrap();
        assert_eq!(rows.len(), 1);
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_CSV_HEADER);
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), 18);
        assert!(fields.iter().all(|f| !f.is_empty()), "{fields:?}");
        assert_eq!(fields[0], "4");
        assert_eq!(fields[13], "11");
    }

    #[test]
    fn cells_are_sorted_and_ids_stable() {
        let mut cfg = config();
        cfg.p_list = vec![16, 4, 8];
        cfg.n_list = vec![64, 32];
        let cells = cfg.cells();
        let keys: Vec<_> = cells.iter().map(|c| (c.p, c.n)).collect();
        assert_eq!(keys, vec![(4, 32), (4, 64), (8, 32), (8, 64), (16, 32), (16, 64)]);
        assert_eq!(cells[0].id(), cfg.cells()[0].id());
        assert_ne!(cells[0].id(), cells[1].id());
    }

    #[test]
    fn invalid_configs() {
        let bad = [
            r#"{"p_list":[],"N_list":[32],"kappa_list":[0.25],"trials":2,"master_seed":1}"#,
            r#"{"p_list":[4],"N_list":[32],"kappa_list":[0.25],"trials":0,"master_seed":1}"#,
            r#"{"p_list":[4],"N_list":[4],"kappa_list":[0.25],"trials":2,"master_seed":1,"filter":{"beta":0.5,"K":8}}"#,
            r#"{"p_list":[4],"N_list":[32],"kappa_list":[1.5],"trials":2,"master_seed":1}"#,
            r#"{"p_list":[4],"N_list":[32],"kappa_list":[0.25],"trials":2,"master_seed":1,"bogus":1}"#,
        ];
        for cfg in bad {
            assert!(SweepConfig::from_json(cfg).is_err(), "{cfg}");
        }
        let alias = r#"{"p_list":[4],"n_list":[32],"rho_list":[0.25],"trials":2,"master_seed":1}"#;
        assert!(SweepConfig::from_json(alias).is_ok());
    }
}
