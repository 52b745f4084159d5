//! CSV output: one row per (trial, algorithm), plus per-metric plot tables
//! of the means against the swept parameter.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::config::Algorithm;
use super::run::ExperimentReport;
use crate::error::FormatError;

pub const RESULT_COLUMNS: [&str; 13] = [
    "series",
    "config_id",
    "trial",
    "algorithm",
    "n",
    "m",
    "k",
    "side",
    "alpha",
    "total_power",
    "wall_ms",
    "variance",
    "status",
];

fn real(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        x.to_string()
    }
}

/// Writes the raw results table. With `timing` off every wall time is
/// written as 0 so repeated runs produce identical bytes.
pub fn write_results_csv<W: Write>(
    reports: &[ExperimentReport],
    out: W,
    timing: bool,
) -> Result<(), FormatError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULT_COLUMNS)?;
    for rep in reports {
        let c = &rep.config;
        for row in &rep.rows {
            w.write_record([
                c.series.clone(),
                c.config_id.to_string(),
                row.trial.to_string(),
                row.algorithm.to_string(),
                c.n.to_string(),
                c.m.to_string(),
                c.k.to_string(),
                real(c.side),
                real(c.alpha),
                real(row.total_power),
                real(if timing { row.wall_ms } else { 0.0 }),
                real(row.variance),
                row.status.as_str().to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Metric tabulated in one plot-data file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotMetric {
    Power,
    Time,
    Variance,
}

impl PlotMetric {
    pub const ALL: [PlotMetric; 3] = [PlotMetric::Power, PlotMetric::Time, PlotMetric::Variance];

    pub fn file_stem(self) -> &'static str {
        match self {
            Self::Power => "power",
            Self::Time => "time",
            Self::Variance => "variance",
        }
    }
}

/// Writes one table: `series, config_id, <swept>, <alg>...` with the
/// metric's mean per algorithm (blank when it never completed).
pub fn write_plot_csv<W: Write>(
    reports: &[ExperimentReport],
    metric: PlotMetric,
    out: W,
    timing: bool,
) -> Result<(), FormatError> {
    let algorithms: Vec<Algorithm> = Algorithm::ALL
        .into_iter()
        .filter(|a| reports.iter().any(|r| r.summary(*a).is_some()))
        .collect();
    let swept = reports
        .first()
        .map_or("config_id", |r| r.config.swept_name());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![
        "series".to_string(),
        "config_id".to_string(),
        swept.to_string(),
    ];
    header.extend(algorithms.iter().map(|a| a.to_string()));
    w.write_record(&header)?;
    for rep in reports {
        let mut rec = vec![
            rep.config.series.clone(),
            rep.config.config_id.to_string(),
            real(rep.config.swept_value()),
        ];
        for &alg in &algorithms {
            let value = rep.summary(alg).map_or(f64::NAN, |s| match metric {
                PlotMetric::Power => s.mean_power,
                PlotMetric::Time if timing => s.mean_wall_ms,
                PlotMetric::Time => 0.0,
                PlotMetric::Variance => s.mean_variance,
            });
            rec.push(real(value));
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `results.csv` and `plot_{power,time,variance}.csv` into `dir`;
/// returns the paths written.
pub fn write_bench_outputs(
    reports: &[ExperimentReport],
    dir: &Path,
    timing: bool,
) -> Result<Vec<PathBuf>, FormatError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let results = dir.join("results.csv");
    write_results_csv(reports, File::create(&results)?, timing)?;
    written.push(results);
    for metric in PlotMetric::ALL {
        let path = dir.join(format!("plot_{}.csv", metric.file_stem()));
        write_plot_csv(reports, metric, File::create(&path)?, timing)?;
        written.push(path);
    }
    Ok(written)
}
