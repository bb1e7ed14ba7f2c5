//! Pipeline orchestration: configuration, the two reductions, parallel
//! sweeps and report files.

mod config;
mod reduce;
mod report;
mod selftest;
mod sweep;

pub use config::{PipelineConfig, ReportFormat, Tau1Decay};
pub use reduce::{
    escalate, run_tau1_reduction, run_tau2_chain, tau1_form, tau2_form, FormShape, ReductionRun,
    Tau2Round,
};
pub use selftest::run_selftest;
pub use report::{dec, emit_report, render_report, Record, RunReport, Verdict};
pub use sweep::{
    reduction_record, run_pell_table, run_tau1_sweep, run_tau2_report, run_theorem12_search,
    run_thm11_verification, sweep_orders, FULL_GRID, SMOOTH_SOLUTIONS,
};
