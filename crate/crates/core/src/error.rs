use std::time::Duration;

use thiserror::Error;

use crate::instance::InstanceViolation;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid instance: {}", join(.0))]
    InvalidInstance(Vec<InstanceViolation>),
    #[error("{remaining} TDs cannot be covered by any remaining disk")]
    Infeasible { remaining: usize },
    #[error("search budget exceeded after {nodes} nodes in {elapsed:?}")]
    BudgetExceeded { nodes: u64, elapsed: Duration },
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Invalid(String),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
