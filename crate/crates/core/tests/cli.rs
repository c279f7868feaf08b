use std::path::Path;
use std::process::{Command, Output};

use cigsel::graph::Graph;
use cigsel::process::{build_matching_process, full_matching, FilterSpec};

fn cigsel(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cigsel"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

#[test]
fn gen_then_select_recovers_truth() {
    let dir = tempfile::tempdir().unwrap();
    let spec = build_matching_process(6, &full_matching(6), &[0.6, 0.6, 0.6], FilterSpec::unit_impulse()).unwrap();
    std::fs::write(dir.path().join("spec.json"), spec.to_json()).unwrap();

    let out = cigsel(&["gen", "--spec", "spec.json", "--n", "4000", "--seed", "7", "--out", "x.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let first = std::fs::read(dir.path().join("x.csv")).unwrap();
    cigsel(&["gen", "--spec", "spec.json", "--n", "4000", "--seed", "7", "--out", "y.csv"], dir.path());
    assert_eq!(first, std::fs::read(dir.path().join("y.csv")).unwrap());

    let b = spec.b_actual().to_string();
    let out = cigsel(&["select", "--in", "x.csv", "--rho-min", "0.6", "--b", &b, "--out", "g.json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let g = Graph::from_json(&std::fs::read_to_string(dir.path().join("g.json")).unwrap()).unwrap();
    assert_eq!(g, spec.truth);
}

#[test]
fn bounds_prints_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = cigsel(&["bounds", "--p", "10", "--rho-min", "0.25", "--b", "3", "--delta", "0.05"], dir.path());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["necessary_n"].as_f64().unwrap() - 11.2267).abs() < 1e-3);
    assert_eq!(v["n"].as_u64(), Some(12));
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = cigsel(&["bounds", "--p", "10", "--rho-min", "1.5", "--b", "3", "--delta", "0.05"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(dir.path().join("bad.json"), r#"{"p_list":[4],"N_list":[2],"kappa_list":[0.5],"trials":3,"master_seed":1,"filter":{"beta":0.5,"K":4}}"#).unwrap();
    let out = cigsel(&["sweep", "--config", "bad.json", "--out", "r.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let out = cigsel(&["gen", "--spec", "missing.json", "--n", "10", "--out", "x.csv"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_writes_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s.json"), r#"{"p_list":[4,8],"N_list":[50],"kappa_list":[0.5],"trials":10,"master_seed":3}"#).unwrap();
    let out = cigsel(&["sweep", "--config", "s.json", "--out", "r.csv"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("p,n_samples,kappa,rho_min,b_actual,trials,failures,rate,wilson_lo,wilson_hi,necessary_n,sufficient_n,fano_floor,master_seed"));
    assert!(lines[1].starts_with("4,50,0.5,0.5,3,10,"));
}

#[test]
fn verify_fast_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = cigsel(&["verify", "--level", "fast"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
