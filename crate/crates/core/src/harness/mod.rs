//! Configuration, Monte Carlo execution and result files.
//!
//! Trial `i` of a run draws everything (channel, codebook choice for RCS,
//! bits, noise) from its own stream derived from `(seed, i)`, and evaluates
//! all power points on that same draw. Work is split across threads in
//! fixed blocks and reduced in block order, so output files depend only on
//! the configuration and seed.

mod config;
mod output;
mod runner;
mod scenario;

pub use config::{GainConvention, SimConfig};
pub use output::{
    emit_curve_csv, emit_sweep_csv, read_curve_csv, read_sweep_csv, write_curve, write_sweep,
    CurveRow, CURVE_COLUMNS, SWEEP_COLUMNS,
};
pub use runner::{
    power_at_aber, power_offset_db, run_array_sweep, run_curve, run_perturbation_sweep,
    run_sparsity_sweep, ArraySize, BerCurve, SweepRow,
};
pub use scenario::{trial_rng, Scenario, Trial};
