//! Seeded experiments, sweeps, fits, figure presets and verification suites.

mod config;
mod figures;
mod fit;
mod output;
mod runner;
mod verify;

pub use config::{
    locate_field, ConfigError, ExperimentConfig, FieldError, SweepAxis, SweepSpec, DEFAULT_PREDICTION_TRIALS,
};
pub use figures::{run_figure, FigureId, FigureOptions, FigureTable, M_SWEEP};
pub use fit::{fit_loglog_slope, ks_statistic, LogLogFit, ReferenceCdf, MIN_KS_SAMPLES};
pub use output::{write_stats_csv, write_summary_json};
pub use runner::{
    run_experiment, run_sweep, run_trial, sweep_axis, AggregateStats, Experiment, FrequencyStats, SweepPoint,
    TrialResult,
};
pub use verify::{
    gumbel_inverse_cdf_samples, run_suite, softmax_setting, symmetry_families, verify_alignment, verify_gumbel,
    verify_lemma1, verify_prop3, verify_symmetry, CheckLine, VerifyReport, VerifySuite, DEFAULT_VERIFY_SEED,
    LEMMA1_PHASES,
};
