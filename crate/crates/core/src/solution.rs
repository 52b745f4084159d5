use std::fmt;

use crate::disk::{contains, Disk};
use crate::instance::Instance;

/// One AP's chosen power level and the TDs it serves.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub ap: usize,
    pub disk: Disk,
    /// TD ids served by `ap`, ascending.
    pub covered: Vec<usize>,
}

/// Per-AP disk choices with their coverage sets.
///
/// Solvers emit at most one assignment per AP, ordered by AP id. The list
/// form is kept so that malformed solutions read from disk (for instance two
/// disks for one AP) can still be represented and rejected by
/// [`check_feasible`].
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub assignments: Vec<Assignment>,
    pub total_power: f64,
}

impl Solution {
    /// Builds a solution from per-AP choices, dropping APs with no disk and
    /// summing the powers of the chosen disks.
    pub fn from_choices(choices: Vec<Option<(Disk, Vec<usize>)>>) -> Self {
        let assignments: Vec<Assignment> = choices
            .into_iter()
            .enumerate()
            .filter_map(|(ap, c)| {
                c.map(|(disk, mut covered)| {
                    covered.sort_unstable();
                    Assignment { ap, disk, covered }
                })
            })
            .collect();
        let total_power = assignments.iter().map(|a| a.disk.power).sum();
        Self {
            assignments,
            total_power,
        }
    }

    /// The disk selected for `ap`, if any (first one when malformed).
    pub fn disk_for(&self, ap: usize) -> Option<&Disk> {
        self.assignments
            .iter()
            .find(|a| a.ap == ap)
            .map(|a| &a.disk)
    }

    /// `|C_a|` for every AP of an `num_aps`-AP instance.
    pub fn coverage_counts(&self, num_aps: usize) -> Vec<usize> {
        let mut counts = vec![0; num_aps];
        for a in &self.assignments {
            if a.ap < num_aps {
                counts[a.ap] += a.covered.len();
            }
        }
        counts
    }

    /// `(ap, td)` for every selected disk, ordered by AP.
    pub fn selected_pairs(&self) -> Vec<(usize, usize)> {
        self.assignments
            .iter()
            .map(|a| (a.ap, a.disk.td_id))
            .collect()
    }
}

/// A broken feasibility condition.
#[derive(Debug, Clone, PartialEq)]
pub enum FeasibilityViolation {
    UnknownAp {
        ap: usize,
    },
    UnknownTd {
        ap: usize,
        td: usize,
    },
    /// The stored disk does not match the one its (AP, TD) pair defines.
    DiskMismatch {
        ap: usize,
    },
    /// More than one disk for the same AP.
    MultipleDisks {
        ap: usize,
        count: usize,
    },
    Uncovered {
        td: usize,
    },
    CoveredMoreThanOnce {
        td: usize,
        count: usize,
    },
    CapacityExceeded {
        ap: usize,
        covered: usize,
        capacity: usize,
    },
    /// A TD served by an AP whose disk does not contain it.
    NotContained {
        ap: usize,
        td: usize,
    },
    PowerMismatch {
        reported: f64,
        computed: f64,
    },
}

impl fmt::Display for FeasibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownAp { ap } => write!(f, "unknown AP {}", ap + 1),
            Self::UnknownTd { ap, td } => write!(f, "AP {} lists unknown TD {}", ap + 1, td + 1),
            Self::DiskMismatch { ap } => {
                write!(f, "AP {}: disk data does not match its AP/TD pair", ap + 1)
            }
            Self::MultipleDisks { ap, count } => {
                write!(f, "power uniqueness: AP {} selects {count} disks", ap + 1)
            }
            Self::Uncovered { td } => write!(f, "coverage: TD {} is not covered", td + 1),
            Self::CoveredMoreThanOnce { td, count } => {
                write!(f, "coverage: TD {} is covered {count} times", td + 1)
            }
            Self::CapacityExceeded {
                ap,
                covered,
                capacity,
            } => write!(
                f,
                "capacity: AP {} covers {covered} TDs, capacity is {capacity}",
                ap + 1
            ),
            Self::NotContained { ap, td } => write!(
                f,
                "containment: TD {} is assigned to AP {} but lies outside its disk",
                td + 1,
                ap + 1
            ),
            Self::PowerMismatch { reported, computed } => write!(
                f,
                "total power {reported} does not match the selected disks ({computed})"
            ),
        }
    }
}

/// Relative tolerance on the reported total power.
pub const POWER_RTOL: f64 = 1e-9;

/// Checks coverage (each TD exactly once), capacity, power uniqueness,
/// containment of served TDs, and the reported total power.
pub fn check_feasible(sol: &Solution, inst: &Instance) -> Result<(), Vec<FeasibilityViolation>> {
    use FeasibilityViolation as V;
    let m = inst.num_aps();
    let n = inst.num_tds();
    let mut violations = Vec::new();
    let mut disks_per_ap = vec![0usize; m];
    let mut times_covered = vec![0usize; n];
    let mut computed = 0.0;

    for asg in &sol.assignments {
        if asg.ap >= m || asg.disk.ap_id != asg.ap {
            violations.push(V::UnknownAp { ap: asg.ap });
            continue;
        }
        if asg.disk.td_id >= n {
            violations.push(V::UnknownTd {
                ap: asg.ap,
                td: asg.disk.td_id,
            });
            continue;
        }
        let reference = Disk::new(inst, asg.ap, asg.disk.td_id);
        if reference != asg.disk {
            violations.push(V::DiskMismatch { ap: asg.ap });
        }
        disks_per_ap[asg.ap] += 1;
        computed += reference.power;

        if asg.covered.len() > inst.capacity {
            violations.push(V::CapacityExceeded {
                ap: asg.ap,
                covered: asg.covered.len(),
                capacity: inst.capacity,
            });
        }
        for &td in &asg.covered {
            if td >= n {
                violations.push(V::UnknownTd { ap: asg.ap, td });
                continue;
            }
            times_covered[td] += 1;
            if !contains(&reference, td, inst) {
                violations.push(V::NotContained { ap: asg.ap, td });
            }
        }
    }

    for (ap, &count) in disks_per_ap.iter().enumerate() {
        if count > 1 {
            violations.push(V::MultipleDisks { ap, count });
        }
    }
    for (td, &count) in times_covered.iter().enumerate() {
        match count {
            0 => violations.push(V::Uncovered { td }),
            1 => {}
            _ => violations.push(V::CoveredMoreThanOnce { td, count }),
        }
    }
    let tol = POWER_RTOL * computed.abs().max(1.0);
    // written so that a NaN total also counts as a mismatch
    let matches = (sol.total_power - computed).abs() <= tol;
    if !matches {
        violations.push(V::PowerMismatch {
            reported: sol.total_power,
            computed,
        });
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn line() -> Instance {
        Instance::new(
            vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0)],
            vec![
                Point::new(1.0, 0.0),
                Point::new(2.0, 0.0),
                Point::new(9.0, 0.0),
            ],
            2,
            1.0,
            2.0,
        )
    }

    fn good(inst: &Instance) -> Solution {
        Solution::from_choices(vec![
            Some((Disk::new(inst, 0, 1), vec![0, 1])),
            Some((Disk::new(inst, 1, 2), vec![2])),
        ])
    }

    #[test]
    fn feasible_solution_passes() {
        let inst = line();
        let sol = good(&inst);
        assert_eq!(sol.total_power, 5.0);
        assert_eq!(check_feasible(&sol, &inst), Ok(()));
    }

    #[test]
    fn over_capacity_is_rejected() {
        let inst = line();
        let sol = Solution::from_choices(vec![Some((Disk::new(&inst, 0, 2), vec![0, 1, 2])), None]);
        let v = check_feasible(&sol, &inst).unwrap_err();
        assert_eq!(
            v,
            vec![FeasibilityViolation::CapacityExceeded {
                ap: 0,
                covered: 3,
                capacity: 2
            }]
        );
    }

    #[test]
    fn missing_td_is_rejected() {
        let inst = line();
        let mut sol = good(&inst);
        sol.assignments[1].covered.clear();
        let v = check_feasible(&sol, &inst).unwrap_err();
        assert_eq!(v, vec![FeasibilityViolation::Uncovered { td: 2 }]);
    }

    #[test]
    fn double_cover_and_duplicate_disk_are_rejected() {
        let inst = line();
        let mut sol = good(&inst);
        sol.assignments.push(Assignment {
            ap: 1,
            disk: Disk::new(&inst, 1, 1),
            covered: vec![1],
        });
        sol.total_power += 64.0;
        let v = check_feasible(&sol, &inst).unwrap_err();
        assert!(v.contains(&FeasibilityViolation::MultipleDisks { ap: 1, count: 2 }));
        assert!(v.contains(&FeasibilityViolation::CoveredMoreThanOnce { td: 1, count: 2 }));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn td_outside_disk_is_rejected() {
        let inst = line();
        let sol = Solution::from_choices(vec![
            Some((Disk::new(&inst, 0, 0), vec![0, 1])),
            Some((Disk::new(&inst, 1, 2), vec![2])),
        ]);
        let v = check_feasible(&sol, &inst).unwrap_err();
        assert_eq!(v, vec![FeasibilityViolation::NotContained { ap: 0, td: 1 }]);
    }

    #[test]
    fn wrong_total_is_rejected() {
        let inst = line();
        let mut sol = good(&inst);
        sol.total_power = 4.0;
        let v = check_feasible(&sol, &inst).unwrap_err();
        assert!(matches!(
            v[..],
            [FeasibilityViolation::PowerMismatch { .. }]
        ));
    }

    #[test]
    fn counts_include_idle_aps() {
        let inst = line();
        let sol = Solution::from_choices(vec![Some((Disk::new(&inst, 0, 2), vec![0, 1])), None]);
        assert_eq!(sol.coverage_counts(3), vec![2, 0, 0]);
    }
}
