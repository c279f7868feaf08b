//! Experiment engine: seeded Monte Carlo trials, error-rate estimation,
//! parameter sweeps with CSV output, phase-transition search and the
//! verification suite.

mod fidelity;
mod phase;
mod seeds;
mod stats;
mod sweep;
mod trial;
mod verify;

pub use fidelity::{acf_fidelity, AcfFidelity};
pub use phase::{fit_log_scaling, phase_transition, LogFit, PhaseProbe, PhaseTransition};
pub use seeds::{mix64, trial_seed};
pub use stats::{wilson_interval, WILSON_Z};
pub use sweep::{sweep, write_sweep_csv, Cell, Matching, SweepConfig, SweepRow, SWEEP_CSV_HEADER};
pub use trial::{
    estimate_ensemble_error, estimate_error_prob, run_trial, Decoder, EnsembleEstimate,
    ErrorEstimate, SpectralThreshold, TrialRecord,
};
pub use verify::{ensemble_validity, verify, CheckOutcome, EnsembleValidity, VerifyLevel, VerifyReport};
