use std::fmt;

use crate::geometry::Point;

/// An MPCC instance: access points, terminal devices, a uniform AP capacity
/// and the constants of the power law `p = c * r^alpha`.
///
/// AP and TD ids are their indices in `aps` / `tds` (0-based here; the file
/// formats shift them to 1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub aps: Vec<Point>,
    pub tds: Vec<Point>,
    pub capacity: usize,
    pub power_c: f64,
    pub power_alpha: f64,
}

pub const ALPHA_RANGE: (f64, f64) = (1.0, 5.0);

impl Instance {
    pub fn new(
        aps: Vec<Point>,
        tds: Vec<Point>,
        capacity: usize,
        power_c: f64,
        power_alpha: f64,
    ) -> Self {
        Self {
            aps,
            tds,
            capacity,
            power_c,
            power_alpha,
        }
    }

    /// Number of access points (m).
    pub fn num_aps(&self) -> usize {
        self.aps.len()
    }

    /// Number of terminal devices (n).
    pub fn num_tds(&self) -> usize {
        self.tds.len()
    }

    /// Same instance with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            aps: self.aps.iter().map(|p| p.scaled(factor)).collect(),
            tds: self.tds.iter().map(|p| p.scaled(factor)).collect(),
            ..self.clone()
        }
    }

    /// Same instance with every point shifted by `(dx, dy)`.
    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        Self {
            aps: self.aps.iter().map(|p| p.translated(dx, dy)).collect(),
            tds: self.tds.iter().map(|p| p.translated(dx, dy)).collect(),
            ..self.clone()
        }
    }
}

/// A broken instance invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceViolation {
    NoAccessPoints,
    NoTerminalDevices,
    ZeroCapacity,
    /// `m * k < n`: the APs together cannot serve every TD.
    InsufficientCapacity {
        aps: usize,
        capacity: usize,
        tds: usize,
    },
    NonFiniteAp {
        ap: usize,
    },
    NonFiniteTd {
        td: usize,
    },
    NonPositivePowerConstant {
        c: f64,
    },
    AlphaOutOfRange {
        alpha: f64,
    },
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoAccessPoints => write!(f, "instance has no access points"),
            Self::NoTerminalDevices => write!(f, "instance has no terminal devices"),
            Self::ZeroCapacity => write!(f, "capacity k must be at least 1"),
            Self::InsufficientCapacity { aps, capacity, tds } => write!(
                f,
                "m*k < n: {aps} APs with capacity {capacity} cannot serve {tds} TDs"
            ),
            Self::NonFiniteAp { ap } => write!(f, "AP {} has a non-finite coordinate", ap + 1),
            Self::NonFiniteTd { td } => write!(f, "TD {} has a non-finite coordinate", td + 1),
            Self::NonPositivePowerConstant { c } => {
                write!(f, "power constant c must be positive and finite, got {c}")
            }
            Self::AlphaOutOfRange { alpha } => write!(
                f,
                "attenuation factor alpha must lie in [{}, {}], got {alpha}",
                ALPHA_RANGE.0, ALPHA_RANGE.1
            ),
        }
    }
}

/// Collects every violated instance invariant; empty means the instance is valid.
///
/// There is no maximum-radius check: an AP may raise its power without bound.
pub fn validate_instance(inst: &Instance) -> Result<(), Vec<InstanceViolation>> {
    let mut violations = Vec::new();
    let m = inst.num_aps();
    let n = inst.num_tds();
    if m == 0 {
        violations.push(InstanceViolation::NoAccessPoints);
    }
    if n == 0 {
        violations.push(InstanceViolation::NoTerminalDevices);
    }
    if inst.capacity == 0 {
        violations.push(InstanceViolation::ZeroCapacity);
    }
    if m.saturating_mul(inst.capacity) < n {
        violations.push(InstanceViolation::InsufficientCapacity {
            aps: m,
            capacity: inst.capacity,
            tds: n,
        });
    }
    violations.extend(
        inst.aps
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_finite())
            .map(|(ap, _)| InstanceViolation::NonFiniteAp { ap }),
    );
    violations.extend(
        inst.tds
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_finite())
            .map(|(td, _)| InstanceViolation::NonFiniteTd { td }),
    );
    if !(inst.power_c.is_finite() && inst.power_c > 0.0) {
        violations.push(InstanceViolation::NonPositivePowerConstant { c: inst.power_c });
    }
    if !(ALPHA_RANGE.0..=ALPHA_RANGE.1).contains(&inst.power_alpha) {
        violations.push(InstanceViolation::AlphaOutOfRange {
            alpha: inst.power_alpha,
        });
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}
