//! Minimum-local-ratio (MLR) solver.
//!
//! Each round scores every live disk by its residual power divided by
//! `min(residual capacity, live TDs contained)`, picks the smallest score and
//! lets its AP cover the live TDs inside it. Residual powers of the remaining
//! disks are then charged the winning ratio, covered TDs leave every disk, and
//! the AP's residual capacity drops accordingly. The last disk picked for an
//! AP is its power assignment.
//!
//! Disks are addressed by their flat index in [`DiskFamily`]; removal only
//! clears a liveness flag. Residual capacity is stored per AP since all disks
//! at one AP always share it.

use crate::disk::DiskFamily;
use crate::error::SolveError;
use crate::instance::{validate_instance, Instance};
use crate::solution::Solution;

/// Residual power spread over the TDs a disk can still take.
pub fn local_ratio(p_hat: f64, k_hat: usize, d: usize) -> f64 {
    let divisor = k_hat.min(d);
    debug_assert!(divisor >= 1, "live disk with k_hat={k_hat}, d={d}");
    p_hat / divisor as f64
}

/// The disk chosen in one round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub ap: usize,
    pub td: usize,
    pub ratio: f64,
    /// Live TDs inside the disk at selection time.
    pub contained: usize,
    /// Residual capacity of the AP at selection time.
    pub k_hat: usize,
}

/// What one round did.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub selection: Selection,
    pub covered: Vec<usize>,
    /// `(ap, td)` of every disk that stopped being live this round.
    pub removed: Vec<(usize, usize)>,
}

/// Snapshot of one live disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiveDisk {
    pub ap: usize,
    pub td: usize,
    pub contained: usize,
    pub k_hat: usize,
    pub p_hat: f64,
    pub power: f64,
}

/// Working state of one MLR run.
#[derive(Debug, Clone)]
pub struct MlrState {
    family: DiskFamily,
    live_td: Vec<bool>,
    remaining: usize,
    live_disk: Vec<bool>,
    contained: Vec<usize>,
    k_hat: Vec<usize>,
    p_hat: Vec<f64>,
    last: Vec<Option<usize>>,
    covered: Vec<Vec<usize>>,
    iteration: usize,
}

impl MlrState {
    /// Initial state; assumes `inst` passed validation.
    pub fn new(inst: &Instance) -> Self {
        let family = DiskFamily::new(inst);
        let m = family.num_aps();
        let n = family.num_tds();
        let mut contained = vec![0; m * n];
        for a in 0..m {
            for u in 0..n {
                contained[family.index(a, u)] = family.rank(a, u) + 1;
            }
        }
        let p_hat = family.disks().iter().map(|d| d.power).collect();
        let k = inst.capacity;
        Self {
            live_td: vec![true; n],
            remaining: n,
            live_disk: vec![k > 0; m * n],
            contained,
            k_hat: vec![k; m],
            p_hat,
            last: vec![None; m],
            covered: vec![Vec::new(); m],
            iteration: 0,
            family,
        }
    }

    pub fn family(&self) -> &DiskFamily {
        &self.family
    }

    pub fn is_finished(&self) -> bool {
        self.remaining == 0
    }

    pub fn remaining_tds(&self) -> usize {
        self.remaining
    }

    pub fn iterations(&self) -> usize {
        self.iteration
    }

    pub fn live_disks(&self) -> impl Iterator<Item = LiveDisk> + '_ {
        self.family
            .disks()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.live_disk[*i])
            .map(|(i, d)| LiveDisk {
                ap: d.ap_id,
                td: d.td_id,
                contained: self.contained[i],
                k_hat: self.k_hat[d.ap_id],
                p_hat: self.p_hat[i],
                power: d.power,
            })
    }

    /// Live disk with the smallest local ratio; ties go to the lowest AP id,
    /// then the lowest key. `None` when no disk is live.
    pub fn select_min_ratio(&self) -> Option<Selection> {
        let n = self.family.num_tds();
        let mut best: Option<Selection> = None;
        for a in 0..self.family.num_aps() {
            let k_hat = self.k_hat[a];
            for &u in self.family.sorted_tds(a) {
                let idx = a * n + u;
                if !self.live_disk[idx] {
                    continue;
                }
                let d = self.contained[idx];
                let ratio = local_ratio(self.p_hat[idx], k_hat, d);
                if best.is_none_or(|b| ratio < b.ratio) {
                    best = Some(Selection {
                        ap: a,
                        td: u,
                        ratio,
                        contained: d,
                        k_hat,
                    });
                }
            }
        }
        best
    }

    /// Carries out one round for `sel`, which must come from
    /// [`Self::select_min_ratio`] on the current state.
    pub fn apply_selection(&mut self, sel: Selection) -> IterationRecord {
        let n = self.family.num_tds();
        let a_star = sel.ap;
        let star_rank = self.family.rank(a_star, sel.td);
        self.iteration += 1;

        // (1) the AP takes over the live TDs of the selected disk
        let newly: Vec<usize> = self
            .family
            .contents(a_star, sel.td)
            .iter()
            .copied()
            .filter(|&u| self.live_td[u])
            .collect();
        self.last[a_star] = Some(sel.td);
        self.covered[a_star].extend_from_slice(&newly);

        // (2) saturated AP loses every disk; otherwise the selected disk and
        // the ones below it go
        let mut removed = Vec::new();
        let cutoff = if sel.contained >= sel.k_hat {
            n
        } else {
            star_rank + 1
        };
        for &u in &self.family.sorted_tds(a_star)[..cutoff] {
            let idx = a_star * n + u;
            if std::mem::take(&mut self.live_disk[idx]) {
                removed.push((a_star, u));
            }
        }

        // (3) charge the winning ratio against pre-assignment d and k_hat
        for a in 0..self.family.num_aps() {
            let k_hat = self.k_hat[a];
            for u in 0..n {
                let idx = a * n + u;
                if self.live_disk[idx] {
                    self.p_hat[idx] -= sel.ratio * k_hat.min(self.contained[idx]) as f64;
                }
            }
        }

        // (4) covered TDs leave every disk; the AP's capacity shrinks
        for &u in &newly {
            self.live_td[u] = false;
            for b in 0..self.family.num_aps() {
                let from = self.family.rank(b, u);
                for &v in &self.family.sorted_tds(b)[from..] {
                    self.contained[b * n + v] -= 1;
                }
            }
        }
        self.remaining -= newly.len();
        self.k_hat[a_star] = self.k_hat[a_star].saturating_sub(newly.len());

        // (5) drop disks that are empty or whose AP is full
        for a in 0..self.family.num_aps() {
            let full = self.k_hat[a] == 0;
            for &u in self.family.sorted_tds(a) {
                let idx = a * n + u;
                if self.live_disk[idx] && (full || self.contained[idx] == 0) {
                    self.live_disk[idx] = false;
                    removed.push((a, u));
                }
            }
        }

        IterationRecord {
            iteration: self.iteration,
            selection: sel,
            covered: newly,
            removed,
        }
    }

    /// Runs one full round. `None` once every TD is covered.
    pub fn step(&mut self) -> Option<Result<IterationRecord, SolveError>> {
        if self.is_finished() {
            return None;
        }
        Some(match self.select_min_ratio() {
            Some(sel) => Ok(self.apply_selection(sel)),
            None => Err(SolveError::Infeasible {
                remaining: self.remaining,
            }),
        })
    }

    /// The final disks `l_a` with their coverage sets.
    pub fn to_solution(&self) -> Solution {
        Solution::from_choices(
            self.last
                .iter()
                .enumerate()
                .map(|(a, l)| l.map(|u| (*self.family.disk(a, u), self.covered[a].clone())))
                .collect(),
        )
    }
}

/// Solves `inst` with MLR.
pub fn solve_mlr(inst: &Instance) -> Result<Solution, SolveError> {
    solve_mlr_traced(inst).map(|(sol, _)| sol)
}

/// Solves `inst` with MLR and returns one record per round.
pub fn solve_mlr_traced(inst: &Instance) -> Result<(Solution, Vec<IterationRecord>), SolveError> {
    validate_instance(inst).map_err(SolveError::InvalidInstance)?;
    let mut state = MlrState::new(inst);
    let mut trace = Vec::new();
    while let Some(record) = state.step() {
        trace.push(record?);
    }
    Ok((state.to_solution(), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::solution::check_feasible;

    fn one_ap() -> Instance {
        Instance::new(
            vec![Point::new(0.0, 0.0)],
            vec![Point::new(1.0, 0.0), Point::new(2.0, 0.0)],
            2,
            1.0,
            2.0,
        )
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(local_ratio(8.0, 5, 2), 4.0);
        assert_eq!(local_ratio(0.0, 1, 1), 0.0);
        assert_eq!(local_ratio(9.0, 2, 5), 4.5);
    }

    #[test]
    fn single_ap_reaches_the_farthest_td() {
        let inst = one_ap();
        let (sol, trace) = solve_mlr_traced(&inst).unwrap();
        assert_eq!(sol.total_power, 4.0);
        assert_eq!(sol.assignments.len(), 1);
        assert_eq!(sol.assignments[0].covered, vec![0, 1]);
        assert_eq!(sol.assignments[0].disk.td_id, 1);
        let picks: Vec<_> = trace
            .iter()
            .map(|r| (r.selection.ap, r.selection.td))
            .collect();
        assert_eq!(picks, vec![(0, 0), (0, 1)]);
        assert_eq!(trace[0].selection.ratio, 1.0);
        assert_eq!(trace[1].selection.ratio, 2.0);
        assert_eq!(check_feasible(&sol, &inst), Ok(()));
    }

    #[test]
    fn first_round_charges_the_larger_disk() {
        let inst = one_ap();
        let mut state = MlrState::new(&inst);
        let sel = state.select_min_ratio().unwrap();
        assert_eq!((sel.ap, sel.td, sel.ratio), (0, 0, 1.0));
        let rec = state.apply_selection(sel);
        assert_eq!(rec.covered, vec![0]);
        assert_eq!(rec.removed, vec![(0, 0)]);
        let live: Vec<_> = state.live_disks().collect();
        assert_eq!(live.len(), 1);
        // 4 - 1 * min(2, 2)
        assert_eq!(live[0].p_hat, 2.0);
        assert_eq!(live[0].contained, 1);
        assert_eq!(live[0].k_hat, 1);
    }

    #[test]
    fn each_ap_takes_its_near_td() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0)],
            vec![Point::new(1.0, 0.0), Point::new(9.0, 0.0)],
            1,
            1.0,
            2.0,
        );
        let sol = solve_mlr(&inst).unwrap();
        assert_eq!(sol.total_power, 2.0);
        assert_eq!(sol.selected_pairs(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn saturating_selection_clears_the_ap() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0)],
            vec![
                Point::new(1.0, 0.0),
                Point::new(9.0, 0.0),
                Point::new(5.0, 1.0),
            ],
            1,
            1.0,
            2.0,
        );
        let mut state = MlrState::new(&inst);
        let sel = state.select_min_ratio().unwrap();
        assert_eq!(sel.contained, sel.k_hat);
        state.apply_selection(sel);
        assert!(state.live_disks().all(|d| d.ap != sel.ap));
    }

    #[test]
    fn partial_selection_keeps_larger_disks() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0)],
            vec![
                Point::new(1.0, 0.0),
                Point::new(3.0, 0.0),
                Point::new(4.0, 0.0),
            ],
            3,
            1.0,
            2.0,
        );
        let mut state = MlrState::new(&inst);
        let sel = state.select_min_ratio().unwrap();
        assert!(sel.contained < sel.k_hat);
        state.apply_selection(sel);
        let live: Vec<_> = state.live_disks().collect();
        assert_eq!(live.len(), 2);
        assert!(live.iter().all(|d| d.k_hat == 3 - 1));
        assert!(live.iter().all(|d| d.p_hat >= 0.0));
    }

    #[test]
    fn equal_ratios_prefer_the_lower_ap() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0)],
            vec![Point::new(-1.0, 0.0), Point::new(11.0, 0.0)],
            1,
            1.0,
            2.0,
        );
        let state = MlrState::new(&inst);
        let sel = state.select_min_ratio().unwrap();
        assert_eq!((sel.ap, sel.td), (0, 0));
    }

    #[test]
    fn coincident_td_costs_nothing() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0), Point::new(4.0, 0.0)],
            vec![Point::new(0.0, 0.0), Point::new(4.0, 1.0)],
            1,
            1.0,
            2.0,
        );
        let (sol, trace) = solve_mlr_traced(&inst).unwrap();
        assert_eq!(trace[0].selection.ratio, 0.0);
        assert_eq!(sol.total_power, 1.0);
    }

    #[test]
    fn invalid_instance_is_refused() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0)],
            vec![Point::new(1.0, 0.0); 3],
            2,
            1.0,
            2.0,
        );
        assert!(matches!(
            solve_mlr(&inst),
            Err(SolveError::InvalidInstance(_))
        ));
    }
}
