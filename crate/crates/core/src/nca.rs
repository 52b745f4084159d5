//! Nearest capable access (NCA): repeatedly serve the globally closest
//! (AP, uncovered TD) pair whose AP still has spare capacity.

use crate::disk::DiskFamily;
use crate::error::SolveError;
use crate::instance::{validate_instance, Instance};
use crate::solution::Solution;

/// Solves `inst` with the NCA greedy.
///
/// Closeness compares the candidate disks' keys, then AP ids. Each AP ends up
/// with the largest-keyed disk among the TDs it serves.
pub fn solve_nca(inst: &Instance) -> Result<Solution, SolveError> {
    validate_instance(inst).map_err(SolveError::InvalidInstance)?;
    let family = DiskFamily::new(inst);
    let m = inst.num_aps();
    let n = inst.num_tds();

    // serving pairs in the order the greedy would pick them
    let mut pairs: Vec<usize> = (0..m * n).collect();
    pairs.sort_unstable_by(|&i, &j| {
        let (di, dj) = (family.by_index(i), family.by_index(j));
        di.key.cmp(&dj.key).then(di.ap_id.cmp(&dj.ap_id))
    });

    let mut spare = vec![inst.capacity; m];
    let mut served = vec![false; n];
    let mut remaining = n;
    let mut covered: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut farthest: Vec<Option<usize>> = vec![None; m];
    for idx in pairs {
        if remaining == 0 {
            break;
        }
        let disk = family.by_index(idx);
        let (a, u) = (disk.ap_id, disk.td_id);
        if served[u] || spare[a] == 0 {
            continue;
        }
        served[u] = true;
        remaining -= 1;
        spare[a] -= 1;
        covered[a].push(u);
        // pairs arrive in ascending key order per AP
        farthest[a] = Some(u);
    }
    if remaining > 0 {
        return Err(SolveError::Infeasible { remaining });
    }

    Ok(Solution::from_choices(
        farthest
            .into_iter()
            .zip(covered)
            .enumerate()
            .map(|(a, (far, tds))| far.map(|u| (*family.disk(a, u), tds)))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::mlr::solve_mlr;
    use crate::solution::check_feasible;

    #[test]
    fn full_nearest_ap_pushes_the_second_td_away() {
        let inst = Instance::new(
            vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0)],
            vec![Point::new(1.0, 0.0), Point::new(2.0, 0.0)],
            1,
            1.0,
            2.0,
        );
        let sol = solve_nca(&inst).unwrap();
        assert_eq!(sol.selected_pairs(), vec![(0, 0), (1, 1)]);
        assert_eq!(sol.total_power, 65.0);
        assert_eq!(check_feasible(&sol, &inst), Ok(()));
    }

    #[test]
    fn single_ap_matches_mlr() {
        let inst = Instance::new(
            vec![Point::new(2.0, 2.0)],
            vec![
                Point::new(0.0, 1.0),
                Point::new(3.0, 5.0),
                Point::new(2.5, 2.0),
                Point::new(-1.0, 4.0),
            ],
            4,
            1.0,
            3.0,
        );
        assert_eq!(solve_nca(&inst).unwrap(), solve_mlr(&inst).unwrap());
    }

    #[test]
    fn lone_td_goes_to_nearest_ap() {
        let inst = Instance::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(5.0, 5.0),
                Point::new(3.0, 0.0),
            ],
            vec![Point::new(4.0, 1.0)],
            1,
            1.0,
            2.0,
        );
        let sol = solve_nca(&inst).unwrap();
        assert_eq!(sol.selected_pairs(), vec![(2, 0)]);
        assert_eq!(sol.total_power, 2.0);
    }
}
