//! JSON documents for instances, solutions and MLR traces.
//!
//! Ids are 1-based on disk. Reals are written with 17 significant digits so a
//! parse of the written text restores the exact double.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::ser::Error as _;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::disk::Disk;
use crate::error::FormatError;
use crate::geometry::Point;
use crate::instance::Instance;
use crate::mlr::IterationRecord;
use crate::solution::{Assignment, Solution};

/// `x` in scientific notation with 17 significant digits.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // JSON has no literal for these; the parser rejects them on read
        format!("\"{x}\"")
    }
}

fn real<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(format_real(*x)).map_err(S::Error::custom)?;
    raw.serialize(s)
}

fn point<S: Serializer>(p: &[f64; 2], s: S) -> Result<S::Ok, S::Error> {
    let text = format!("[{},{}]", format_real(p[0]), format_real(p[1]));
    let raw = RawValue::from_string(text).map_err(S::Error::custom)?;
    raw.serialize(s)
}

#[derive(Serialize)]
struct PointOut(#[serde(serialize_with = "point")] [f64; 2]);

#[derive(Serialize)]
struct InstanceOut {
    #[serde(serialize_with = "real")]
    c: f64,
    #[serde(serialize_with = "real")]
    alpha: f64,
    k: usize,
    aps: Vec<PointOut>,
    tds: Vec<PointOut>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceIn {
    c: f64,
    alpha: f64,
    k: usize,
    aps: Vec<[f64; 2]>,
    tds: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct AssignmentOut {
    ap: usize,
    disk_td: usize,
    #[serde(serialize_with = "real")]
    radius: f64,
    #[serde(serialize_with = "real")]
    power: f64,
    covered: Vec<usize>,
}

#[derive(Serialize)]
struct SolutionOut {
    #[serde(serialize_with = "real")]
    total_power: f64,
    assignments: Vec<AssignmentOut>,
}

#[derive(Deserialize)]
struct AssignmentIn {
    ap: usize,
    disk_td: usize,
    #[allow(dead_code)]
    radius: f64,
    #[allow(dead_code)]
    power: f64,
    covered: Vec<usize>,
}

#[derive(Deserialize)]
struct SolutionIn {
    total_power: f64,
    assignments: Vec<AssignmentIn>,
}

pub fn instance_to_json(inst: &Instance) -> String {
    let pts = |v: &[Point]| v.iter().map(|p| PointOut([p.x, p.y])).collect();
    let doc = InstanceOut {
        c: inst.power_c,
        alpha: inst.power_alpha,
        k: inst.capacity,
        aps: pts(&inst.aps),
        tds: pts(&inst.tds),
    };
    serde_json::to_string_pretty(&doc).expect("instance serializes")
}

/// Parses an instance document. Structure is checked here; the instance
/// invariants are left to [`crate::validate_instance`].
pub fn instance_from_json(text: &str) -> Result<Instance, FormatError> {
    let doc: InstanceIn = serde_json::from_str(text)?;
    let pts = |v: Vec<[f64; 2]>| v.into_iter().map(|[x, y]| Point::new(x, y)).collect();
    Ok(Instance::new(
        pts(doc.aps),
        pts(doc.tds),
        doc.k,
        doc.c,
        doc.alpha,
    ))
}

pub fn solution_to_json(sol: &Solution) -> String {
    let doc = SolutionOut {
        total_power: sol.total_power,
        assignments: sol
            .assignments
            .iter()
            .map(|a| AssignmentOut {
                ap: a.ap + 1,
                disk_td: a.disk.td_id + 1,
                radius: a.disk.radius(),
                power: a.disk.power,
                covered: a.covered.iter().map(|u| u + 1).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("solution serializes")
}

/// Parses a solution document against `inst`, rebuilding every disk from
/// its (AP, TD) pair. Ids outside the instance are format errors; the
/// recorded radius and power are informational only.
pub fn solution_from_json(text: &str, inst: &Instance) -> Result<Solution, FormatError> {
    let doc: SolutionIn = serde_json::from_str(text)?;
    let m = inst.num_aps();
    let n = inst.num_tds();
    let in_range = |id: usize, max: usize, what: &str| {
        if (1..=max).contains(&id) {
            Ok(id - 1)
        } else {
            Err(FormatError::Invalid(format!(
                "{what} id {id} outside 1..={max}"
            )))
        }
    };
    let mut assignments = Vec::with_capacity(doc.assignments.len());
    for a in doc.assignments {
        let ap = in_range(a.ap, m, "AP")?;
        let td = in_range(a.disk_td, n, "TD")?;
        let covered = a
            .covered
            .into_iter()
            .map(|u| in_range(u, n, "TD"))
            .collect::<Result<Vec<_>, _>>()?;
        assignments.push(Assignment {
            ap,
            disk: Disk::new(inst, ap, td),
            covered,
        });
    }
    Ok(Solution {
        assignments,
        total_power: doc.total_power,
    })
}

#[derive(Serialize)]
struct TraceOut {
    iteration: usize,
    ap: usize,
    disk_td: usize,
    #[serde(serialize_with = "real")]
    ratio: f64,
    contained: usize,
    k_hat: usize,
    covered: Vec<usize>,
    removed: Vec<[usize; 2]>,
}

/// One JSON object per line, ids 1-based.
pub fn trace_to_jsonl(trace: &[IterationRecord]) -> String {
    let mut out = String::new();
    for rec in trace {
        let line = TraceOut {
            iteration: rec.iteration,
            ap: rec.selection.ap + 1,
            disk_td: rec.selection.td + 1,
            ratio: rec.selection.ratio,
            contained: rec.selection.contained,
            k_hat: rec.selection.k_hat,
            covered: rec.covered.iter().map(|u| u + 1).collect(),
            removed: rec.removed.iter().map(|&(a, u)| [a + 1, u + 1]).collect(),
        };
        out.push_str(&serde_json::to_string(&line).expect("trace serializes"));
        out.push('\n');
    }
    out
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn read_instance(path: &Path) -> Result<Instance, FormatError> {
    instance_from_json(&fs::read_to_string(path)?)
}

pub fn read_solution(path: &Path, inst: &Instance) -> Result<Solution, FormatError> {
    solution_from_json(&fs::read_to_string(path)?, inst)
}
