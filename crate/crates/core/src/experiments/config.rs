use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact::ExactBudget;

/// Solvers an experiment can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Mlr,
    Nca,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Mlr, Algorithm::Nca, Algorithm::Exact];

    pub fn name(self) -> &'static str {
        match self {
            Self::Mlr => "mlr",
            Self::Nca => "nca",
            Self::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mlr" => Ok(Self::Mlr),
            "nca" => Ok(Self::Nca),
            "exact" | "opt" => Ok(Self::Exact),
            other => Err(format!(
                "unknown algorithm '{other}' (expected mlr, nca or exact)"
            )),
        }
    }
}

/// Oracle limits as they appear in config files.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactLimits {
    #[serde(default)]
    pub max_nodes: Option<u64>,
    #[serde(default = "default_max_seconds")]
    pub max_seconds: Option<f64>,
}

fn default_max_seconds() -> Option<f64> {
    Some(ExactBudget::DEFAULT_MAX_SECONDS as f64)
}

impl Default for ExactLimits {
    fn default() -> Self {
        Self {
            max_nodes: None,
            max_seconds: default_max_seconds(),
        }
    }
}

impl From<ExactLimits> for ExactBudget {
    fn from(l: ExactLimits) -> Self {
        ExactBudget {
            max_nodes: l.max_nodes,
            max_time: l
                .max_seconds
                .map(|s| std::time::Duration::from_secs_f64(s.max(0.0))),
        }
    }
}

pub const DEFAULT_TRIALS: usize = 50;
pub const DEFAULT_SEED: u64 = 20_230_101;
pub const DEFAULT_SIDE: f64 = 40.0;
/// Largest TD count for which presets enable the exact oracle.
pub const EXACT_MAX_TDS: usize = 12;

/// One point of an experiment sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default = "custom_series")]
    pub series: String,
    #[serde(default)]
    pub config_id: usize,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    #[serde(default = "default_side")]
    pub side: f64,
    #[serde(default = "one")]
    pub c: f64,
    #[serde(default = "two")]
    pub alpha: f64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub exact_budget: ExactLimits,
}

fn custom_series() -> String {
    "custom".into()
}
fn default_side() -> f64 {
    DEFAULT_SIDE
}
fn one() -> f64 {
    1.0
}
fn two() -> f64 {
    2.0
}
fn default_trials() -> usize {
    DEFAULT_TRIALS
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_algorithms() -> Vec<Algorithm> {
    vec![Algorithm::Mlr, Algorithm::Nca]
}

impl ExperimentConfig {
    /// A config with the usual defaults (side 40, c = 1, alpha = 2, 50 trials,
    /// MLR and NCA).
    pub fn new(n: usize, m: usize, k: usize) -> Self {
        Self {
            series: custom_series(),
            config_id: 0,
            n,
            m,
            k,
            side: DEFAULT_SIDE,
            c: 1.0,
            alpha: 2.0,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            algorithms: default_algorithms(),
            exact_budget: ExactLimits::default(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let mut problems = Vec::new();
        if self.n == 0 {
            problems.push("n must be at least 1".to_string());
        }
        if self.m == 0 {
            problems.push("m must be at least 1".to_string());
        }
        if self.k == 0 {
            problems.push("k must be at least 1".to_string());
        }
        if self.m.saturating_mul(self.k) < self.n {
            problems.push(format!(
                "m*k < n: {} APs with capacity {} cannot serve {} TDs",
                self.m, self.k, self.n
            ));
        }
        if !(self.side.is_finite() && self.side > 0.0) {
            problems.push(format!("side must be positive, got {}", self.side));
        }
        if self.trials == 0 {
            problems.push("trials must be at least 1".to_string());
        }
        if self.algorithms.is_empty() {
            problems.push("no algorithms selected".to_string());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems.join("; "))
        }
    }

    /// Value of the parameter this config's series sweeps.
    pub fn swept_value(&self) -> f64 {
        match self.series.as_str() {
            "1" => self.n as f64,
            "2" => self.k as f64,
            "3" | "4" => self.m as f64,
            _ => self.config_id as f64,
        }
    }

    /// Name of the swept parameter.
    pub fn swept_name(&self) -> &'static str {
        match self.series.as_str() {
            "1" => "n",
            "2" => "k",
            "3" | "4" => "m",
            _ => "config_id",
        }
    }
}

/// TD counts of the first sweep.
pub const PRESET1_TDS: [usize; 11] = [20, 50, 100, 150, 200, 250, 300, 350, 400, 450, 500];
pub const PRESET2_CAPACITIES: [usize; 4] = [25, 50, 75, 100];
pub const PRESET3_APS: [usize; 5] = [4, 8, 12, 16, 20];
/// AP counts for which 160 / m is a whole capacity.
pub const PRESET4_APS: [usize; 5] = [4, 8, 10, 16, 20];
pub const PRESET4_TOTAL_CAPACITY: usize = 160;

/// The four published sweeps:
///
/// 1. TDs 20..500 at 25 TDs per AP, k = 40;
/// 2. m = 4, n = 100, k from 25 to 100;
/// 3. n = 100, k = 25, m from 4 to 20;
/// 4. n = 100, total capacity 160 spread over m = 4..20 APs.
///
/// All use side 40, c = 1 and alpha = 2. The exact oracle is only enabled
/// for points with at most [`EXACT_MAX_TDS`] TDs.
pub fn preset(series: u8) -> Option<Vec<ExperimentConfig>> {
    let points: Vec<(usize, usize, usize)> = match series {
        1 => PRESET1_TDS
            .iter()
            .map(|&n| (n, n.div_ceil(25), 40))
            .collect(),
        2 => PRESET2_CAPACITIES.iter().map(|&k| (100, 4, k)).collect(),
        3 => PRESET3_APS.iter().map(|&m| (100, m, 25)).collect(),
        4 => PRESET4_APS
            .iter()
            .filter(|&&m| PRESET4_TOTAL_CAPACITY.is_multiple_of(m))
            .map(|&m| (100, m, PRESET4_TOTAL_CAPACITY / m))
            .collect(),
        _ => return None,
    };
    Some(
        points
            .into_iter()
            .enumerate()
            .map(|(i, (n, m, k))| {
                let mut cfg = ExperimentConfig::new(n, m, k);
                cfg.series = series.to_string();
                cfg.config_id = i;
                if n <= EXACT_MAX_TDS {
                    cfg.algorithms.push(Algorithm::Exact);
                }
                cfg
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_one_keeps_25_tds_per_ap() {
        let cfgs = preset(1).unwrap();
        assert_eq!(cfgs.first().unwrap().n, 20);
        assert_eq!(cfgs.last().unwrap().n, 500);
        for c in &cfgs {
            assert_eq!(c.k, 40);
            assert_eq!(c.m, c.n.div_ceil(25));
        }
        assert_eq!(cfgs[0].m, 1);
        assert_eq!(cfgs[2].m, 4);
    }

    #[test]
    fn preset_two_sweeps_capacity() {
        let ks: Vec<_> = preset(2).unwrap().iter().map(|c| c.k).collect();
        assert_eq!(ks, vec![25, 50, 75, 100]);
        assert!(preset(2).unwrap().iter().all(|c| c.m == 4 && c.n == 100));
    }

    #[test]
    fn preset_four_splits_total_capacity() {
        let cfgs = preset(4).unwrap();
        let m10 = cfgs.iter().find(|c| c.m == 10).unwrap();
        assert_eq!(m10.k, 16);
        assert!(cfgs.iter().all(|c| c.m * c.k == 160));
    }

    #[test]
    fn presets_are_valid_and_unknown_series_is_none() {
        for s in 1..=4 {
            for c in preset(s).unwrap() {
                assert_eq!(c.validate(), Ok(()), "{c:?}");
                assert!(!c.algorithms.contains(&Algorithm::Exact));
            }
        }
        assert!(preset(5).is_none());
    }

    #[test]
    fn config_file_defaults() {
        let cfg: ExperimentConfig = serde_json::from_str(r#"{"n": 10, "m": 2, "k": 5}"#).unwrap();
        assert_eq!(cfg.trials, DEFAULT_TRIALS);
        assert_eq!(cfg.algorithms, vec![Algorithm::Mlr, Algorithm::Nca]);
        assert_eq!(cfg.exact_budget.max_seconds, Some(600.0));
        assert_eq!(cfg.swept_name(), "config_id");
    }

    #[test]
    fn bad_configs_are_rejected() {
        let mut cfg = ExperimentConfig::new(5, 1, 4);
        assert!(cfg.validate().unwrap_err().contains("m*k < n"));
        cfg.k = 5;
        cfg.side = 0.0;
        assert!(cfg.validate().unwrap_err().contains("side"));
    }
}
