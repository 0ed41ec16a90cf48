//! Seeded Monte Carlo experiments: configuration, single trials, parallel
//! sweeps with CSV output, and the lemma verification report.

pub mod config;
pub mod lemmas;
pub mod sweep;
pub mod trial;

pub use config::{ExperimentConfig, Mode, Sweep, SweepParameter};
pub use lemmas::{expansion_tally, verify_lemmas, ExpansionTally, LemmaCheck, LemmaReport, LEMMA_CHECKS};
pub use sweep::{resolve_threads, run_sweep, SummaryRow, SweepResult, THREADS_ENV};
pub use trial::{run_trial, TrialContext, TrialRecord, TRIAL_CSV_HEADER};
