use std::time::Instant;

use thiserror::Error;

use super::config::{Algorithm, ExperimentConfig};
use super::generate::generate_instance;
use super::metrics::utilization_variance;
use crate::error::SolveError;
use crate::exact::solve_exact_with;
use crate::mlr::solve_mlr;
use crate::nca::solve_nca;
use crate::par::Execution;
use crate::solution::check_feasible;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialStatus {
    Ok,
    BudgetExceeded,
}

impl TrialStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// One (trial, algorithm) measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRow {
    pub trial: usize,
    pub algorithm: Algorithm,
    /// `NaN` when the budget ran out.
    pub total_power: f64,
    pub wall_ms: f64,
    pub variance: f64,
    pub status: TrialStatus,
}

/// Means over the completed trials of one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub mean_power: f64,
    pub mean_wall_ms: f64,
    pub mean_variance: f64,
    pub completed: usize,
    pub trials: usize,
}

impl AlgorithmSummary {
    pub fn completion_rate(&self) -> f64 {
        self.completed as f64 / self.trials as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    /// Trial-major, algorithms in config order.
    pub rows: Vec<TrialRow>,
    pub summaries: Vec<AlgorithmSummary>,
}

impl ExperimentReport {
    pub fn summary(&self, alg: Algorithm) -> Option<&AlgorithmSummary> {
        self.summaries.iter().find(|s| s.algorithm == alg)
    }

    /// Copy with every wall time zeroed, for comparisons across runs.
    pub fn without_timing(&self) -> Self {
        let mut out = self.clone();
        out.rows.iter_mut().for_each(|r| r.wall_ms = 0.0);
        out.summaries.iter_mut().for_each(|s| s.mean_wall_ms = 0.0);
        out
    }
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid config {config_id}: {reason}")]
    InvalidConfig { config_id: usize, reason: String },
    #[error("config {config_id}, trial {trial}, seed {seed}: {algorithm} failed: {reason}")]
    TrialFailed {
        config_id: usize,
        trial: usize,
        seed: u64,
        algorithm: Algorithm,
        reason: String,
    },
}

/// Aggregates rows into per-algorithm means, summing in row order.
pub fn summarize(algorithms: &[Algorithm], rows: &[TrialRow]) -> Vec<AlgorithmSummary> {
    algorithms
        .iter()
        .map(|&alg| {
            let mine: Vec<&TrialRow> = rows.iter().filter(|r| r.algorithm == alg).collect();
            let done: Vec<&&TrialRow> = mine
                .iter()
                .filter(|r| r.status == TrialStatus::Ok)
                .collect();
            let mean = |f: fn(&TrialRow) -> f64| {
                if done.is_empty() {
                    f64::NAN
                } else {
                    done.iter().map(|r| f(r)).sum::<f64>() / done.len() as f64
                }
            };
            AlgorithmSummary {
                algorithm: alg,
                mean_power: mean(|r| r.total_power),
                mean_wall_ms: mean(|r| r.wall_ms),
                mean_variance: mean(|r| r.variance),
                completed: done.len(),
                trials: mine.len(),
            }
        })
        .collect()
}

fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<Vec<TrialRow>, ExperimentError> {
    let inst = generate_instance(cfg, trial);
    let fail = |algorithm, reason: String| ExperimentError::TrialFailed {
        config_id: cfg.config_id,
        trial,
        seed: cfg.seed,
        algorithm,
        reason,
    };
    let mut rows = Vec::with_capacity(cfg.algorithms.len());
    for &alg in &cfg.algorithms {
        let started = Instant::now();
        let outcome = match alg {
            Algorithm::Mlr => solve_mlr(&inst),
            Algorithm::Nca => solve_nca(&inst),
            Algorithm::Exact => {
                solve_exact_with(&inst, cfg.exact_budget.into(), Execution::Sequential)
                    .map(|o| o.solution)
            }
        };
        let wall_ms = started.elapsed().as_secs_f64() * 1e3;
        let row = match outcome {
            Ok(sol) => {
                if let Err(v) = check_feasible(&sol, &inst) {
                    let listing: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                    return Err(fail(
                        alg,
                        format!("infeasible output: {}", listing.join("; ")),
                    ));
                }
                TrialRow {
                    trial,
                    algorithm: alg,
                    total_power: sol.total_power,
                    wall_ms,
                    variance: utilization_variance(&sol, &inst),
                    status: TrialStatus::Ok,
                }
            }
            Err(SolveError::BudgetExceeded { .. }) => TrialRow {
                trial,
                algorithm: alg,
                total_power: f64::NAN,
                wall_ms,
                variance: f64::NAN,
                status: TrialStatus::BudgetExceeded,
            },
            Err(e) => return Err(fail(alg, e.to_string())),
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Runs every trial of `cfg` with the default execution strategy.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    run_experiment_with(cfg, Execution::default())
}

/// Runs every trial of `cfg`; trials are independent and may run in parallel.
/// Wall time covers the solve call only.
pub fn run_experiment_with(
    cfg: &ExperimentConfig,
    exec: Execution,
) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()
        .map_err(|reason| ExperimentError::InvalidConfig {
            config_id: cfg.config_id,
            reason,
        })?;
    let trials: Vec<usize> = (0..cfg.trials).collect();
    let per_trial = exec.map(&trials, |&t| run_trial(cfg, t));
    let mut rows = Vec::with_capacity(cfg.trials * cfg.algorithms.len());
    for r in per_trial {
        rows.extend(r?);
    }
    let summaries = summarize(&cfg.algorithms, &rows);
    Ok(ExperimentReport {
        config: cfg.clone(),
        rows,
        summaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trial_single_algorithm() {
        let mut cfg = ExperimentConfig::new(40, 2, 25);
        cfg.trials = 1;
        cfg.algorithms = vec![Algorithm::Mlr];
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.rows.len(), 1);
        assert_eq!(report.summaries.len(), 1);
        assert_eq!(report.summaries[0].mean_power, report.rows[0].total_power);
    }

    #[test]
    fn reports_repeat_exactly() {
        let mut cfg = ExperimentConfig::new(30, 2, 20);
        cfg.trials = 6;
        let a = run_experiment_with(&cfg, Execution::Sequential).unwrap();
        let b = run_experiment_with(&cfg, Execution::Parallel).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
    }

    #[test]
    fn exhausted_oracle_is_excluded_from_means() {
        let mut cfg = ExperimentConfig::new(10, 3, 4);
        cfg.trials = 3;
        cfg.algorithms = vec![Algorithm::Exact, Algorithm::Mlr];
        cfg.exact_budget.max_nodes = Some(1);
        let report = run_experiment(&cfg).unwrap();
        let exact = report.summary(Algorithm::Exact).unwrap();
        assert_eq!(exact.completed, 0);
        assert_eq!(exact.completion_rate(), 0.0);
        assert!(exact.mean_power.is_nan());
        assert!(report
            .rows
            .iter()
            .filter(|r| r.algorithm == Algorithm::Exact)
            .all(|r| r.status == TrialStatus::BudgetExceeded));
        assert_eq!(report.summary(Algorithm::Mlr).unwrap().completed, 3);
    }

    #[test]
    fn invalid_config_is_refused() {
        let cfg = ExperimentConfig::new(10, 1, 4);
        assert!(matches!(
            run_experiment(&cfg),
            Err(ExperimentError::InvalidConfig { .. })
        ));
    }
}
