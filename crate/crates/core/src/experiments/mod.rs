//! Random instances, the load-balance metric, and the repeated-trial
//! experiment runner with its CSV outputs.

pub mod config;
pub mod generate;
pub mod metrics;
pub mod output;
pub mod run;

pub use config::{preset, Algorithm, ExactLimits, ExperimentConfig};
pub use generate::generate_instance;
pub use metrics::{utilization_variance, variance_of_counts};
pub use output::{write_bench_outputs, write_plot_csv, write_results_csv, PlotMetric};
pub use run::{
    run_experiment, run_experiment_with, summarize, AlgorithmSummary, ExperimentError,
    ExperimentReport, TrialRow, TrialStatus,
};
