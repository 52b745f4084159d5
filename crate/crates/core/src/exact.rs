//! Exact oracle: branch and bound over per-AP disk choices.
//!
//! Every AP either stays off or picks one of its `n` disks. Choices are tried
//! in ascending power with "off" first, a branch is cut once its partial power
//! strictly exceeds the incumbent, and complete choice vectors are tested with
//! the max-flow assignment check. The root (AP 0's choice) can be split across
//! threads; each branch keeps the first minimum it meets in depth-first order
//! and the lowest-indexed branch wins ties, so the answer does not depend on
//! scheduling.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::disk::DiskFamily;
use crate::error::SolveError;
use crate::flow::assign_with_family;
use crate::instance::{validate_instance, Instance};
use crate::par::Execution;
use crate::solution::Solution;

/// Limits on the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl ExactBudget {
    pub const DEFAULT_MAX_SECONDS: u64 = 600;

    pub fn unlimited() -> Self {
        Self {
            max_nodes: None,
            max_time: None,
        }
    }
}

impl Default for ExactBudget {
    fn default() -> Self {
        Self {
            max_nodes: None,
            max_time: Some(Duration::from_secs(Self::DEFAULT_MAX_SECONDS)),
        }
    }
}

/// An optimal solution and the number of search nodes it took.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactOutcome {
    pub solution: Solution,
    pub nodes: u64,
}

struct Shared {
    incumbent: AtomicU64,
    nodes: AtomicU64,
    aborted: AtomicBool,
    started: Instant,
    budget: ExactBudget,
}

impl Shared {
    fn incumbent(&self) -> f64 {
        f64::from_bits(self.incumbent.load(Ordering::Relaxed))
    }

    fn offer(&self, power: f64) {
        // non-negative floats order like their bit patterns
        self.incumbent.fetch_min(power.to_bits(), Ordering::Relaxed);
    }

    fn charge(&self, nodes: u64) -> bool {
        let total = self.nodes.fetch_add(nodes, Ordering::Relaxed) + nodes;
        let over_nodes = self.budget.max_nodes.is_some_and(|max| total > max);
        let over_time = self
            .budget
            .max_time
            .is_some_and(|max| self.started.elapsed() > max);
        if over_nodes || over_time {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

struct Best {
    power: f64,
    choice: Vec<Option<usize>>,
    server: Vec<usize>,
}

struct Branch<'a> {
    family: &'a DiskFamily,
    options: &'a [Vec<Option<usize>>],
    capacity: usize,
    shared: &'a Shared,
    choice: Vec<Option<usize>>,
    best: Option<Best>,
    pending: u64,
}

const CHARGE_EVERY: u64 = 256;

impl Branch<'_> {
    fn power(&self, ap: usize, opt: Option<usize>) -> f64 {
        opt.map_or(0.0, |u| self.family.disk(ap, u).power)
    }

    fn reach(&self, ap: usize, opt: Option<usize>) -> usize {
        opt.map_or(0, |u| self.capacity.min(self.family.rank(ap, u) + 1))
    }

    fn bound(&self) -> f64 {
        let local = self.best.as_ref().map_or(f64::INFINITY, |b| b.power);
        local.min(self.shared.incumbent())
    }

    fn visit(&mut self) -> bool {
        self.pending += 1;
        if self.pending >= CHARGE_EVERY {
            let ok = self.shared.charge(std::mem::take(&mut self.pending));
            return ok;
        }
        !self.shared.aborted.load(Ordering::Relaxed)
    }

    /// Explores APs `depth..` given the choices already in `self.choice`.
    fn search(&mut self, depth: usize, partial: f64, reach: usize) {
        if !self.visit() {
            return;
        }
        let m = self.family.num_aps();
        let n = self.family.num_tds();
        if reach + (m - depth) * self.capacity < n {
            return;
        }
        if depth == m {
            if let Some(server) = assign_with_family(&self.choice, self.family, self.capacity) {
                if self.best.as_ref().is_none_or(|b| partial < b.power) {
                    self.shared.offer(partial);
                    self.best = Some(Best {
                        power: partial,
                        choice: self.choice.clone(),
                        server,
                    });
                }
            }
            return;
        }
        for i in 0..self.options[depth].len() {
            let opt = self.options[depth][i];
            let next = partial + self.power(depth, opt);
            if next > self.bound() {
                break;
            }
            self.choice[depth] = opt;
            self.search(depth + 1, next, reach + self.reach(depth, opt));
        }
        self.choice[depth] = None;
    }
}

/// Finds a minimum-power solution with the default execution strategy.
pub fn solve_exact(inst: &Instance, budget: ExactBudget) -> Result<ExactOutcome, SolveError> {
    solve_exact_with(inst, budget, Execution::default())
}

/// Finds a minimum-power solution, splitting AP 0's choices per `exec`.
pub fn solve_exact_with(
    inst: &Instance,
    budget: ExactBudget,
    exec: Execution,
) -> Result<ExactOutcome, SolveError> {
    validate_instance(inst).map_err(SolveError::InvalidInstance)?;
    let family = DiskFamily::new(inst);
    let m = inst.num_aps();
    let options: Vec<Vec<Option<usize>>> = (0..m)
        .map(|a| {
            std::iter::once(None)
                .chain(family.sorted_tds(a).iter().map(|&u| Some(u)))
                .collect()
        })
        .collect();
    let shared = Shared {
        incumbent: AtomicU64::new(f64::INFINITY.to_bits()),
        nodes: AtomicU64::new(1),
        aborted: AtomicBool::new(false),
        started: Instant::now(),
        budget,
    };

    let branches = exec.map(&options[0], |&root| {
        let mut branch = Branch {
            family: &family,
            options: &options,
            capacity: inst.capacity,
            shared: &shared,
            choice: vec![None; m],
            best: None,
            pending: 0,
        };
        let power = branch.power(0, root);
        if power <= shared.incumbent() {
            branch.choice[0] = root;
            let reach = branch.reach(0, root);
            branch.search(1, power, reach);
        }
        shared.charge(branch.pending);
        branch.best
    });

    let nodes = shared.nodes.load(Ordering::Relaxed);
    if shared.aborted.load(Ordering::Relaxed) {
        return Err(SolveError::BudgetExceeded {
            nodes,
            elapsed: shared.started.elapsed(),
        });
    }
    let mut winner: Option<Best> = None;
    for best in branches.into_iter().flatten() {
        if winner.as_ref().is_none_or(|w| best.power < w.power) {
            winner = Some(best);
        }
    }
    let Some(best) = winner else {
        return Err(SolveError::Infeasible {
            remaining: inst.num_tds(),
        });
    };

    let mut covered: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (u, &a) in best.server.iter().enumerate() {
        covered[a].push(u);
    }
    let solution = Solution::from_choices(
        best.choice
            .iter()
            .zip(covered)
            .enumerate()
            .map(|(a, (c, tds))| match c {
                Some(u) if !tds.is_empty() => Some((*family.disk(a, *u), tds)),
                _ => None,
            })
            .collect(),
    );
    Ok(ExactOutcome { solution, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::solution::check_feasible;

    fn exact(inst: &Instance) -> Solution {
        solve_exact(inst, ExactBudget::unlimited())
            .unwrap()
            .solution
    }

    #[test]
    fn single_ap_takes_the_farthest_disk() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0)],
            vec![
                Point::new(1.0, 0.0),
                Point::new(0.0, -3.0),
                Point::new(2.0, 2.0),
            ],
            3,
            1.0,
            2.0,
        );
        let sol = exact(&inst);
        assert_eq!(sol.total_power, 9.0);
        assert_eq!(sol.selected_pairs(), vec![(0, 1)]);
    }

    #[test]
    fn two_aps_each_take_the_near_td() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0)],
            vec![Point::new(1.0, 0.0), Point::new(9.0, 0.0)],
            1,
            1.0,
            2.0,
        );
        let sol = exact(&inst);
        assert_eq!(sol.total_power, 2.0);
        assert_eq!(check_feasible(&sol, &inst), Ok(()));
    }

    #[test]
    fn forced_far_assignment_is_optimal() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0)],
            vec![Point::new(1.0, 0.0), Point::new(2.0, 0.0)],
            1,
            1.0,
            2.0,
        );
        assert_eq!(exact(&inst).total_power, 65.0);
    }

    #[test]
    fn node_budget_is_reported() {
        let tds: Vec<Point> = (0..10)
            .map(|i| Point::new(i as f64, (i * 7 % 5) as f64))
            .collect();
        let aps = vec![
            Point::new(0.0, 0.0),
            Point::new(5.0, 5.0),
            Point::new(9.0, 0.0),
        ];
        let inst = Instance::new(aps, tds, 4, 1.0, 2.0);
        let budget = ExactBudget {
            max_nodes: Some(10),
            max_time: None,
        };
        assert!(matches!(
            solve_exact(&inst, budget),
            Err(SolveError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn schedules_agree() {
        let tds: Vec<Point> = (0..8)
            .map(|i| Point::new((i * 37 % 11) as f64, (i * 13 % 7) as f64))
            .collect();
        let aps = vec![
            Point::new(1.0, 1.0),
            Point::new(8.0, 2.0),
            Point::new(4.0, 6.0),
        ];
        let inst = Instance::new(aps, tds, 3, 1.0, 2.0);
        let seq = solve_exact_with(&inst, ExactBudget::unlimited(), Execution::Sequential).unwrap();
        let par = solve_exact_with(&inst, ExactBudget::unlimited(), Execution::Parallel).unwrap();
        assert_eq!(seq.solution, par.solution);
        assert_eq!(check_feasible(&seq.solution, &inst), Ok(()));
    }
}
