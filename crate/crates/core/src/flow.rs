//! Capacitated AP→TD assignment as a max-flow problem.
//!
//! For a fixed set of disk choices the coverage, capacity and containment
//! conditions reduce to a bipartite b-matching: source→AP arcs of capacity
//! `k`, AP→TD arcs wherever the AP's disk contains the TD, TD→sink arcs of
//! capacity 1. Every TD can be served iff the max flow equals `n`.

use std::collections::VecDeque;

use crate::disk::{Disk, DiskFamily};
use crate::instance::Instance;

#[derive(Debug, Clone, Copy)]
struct Arc {
    to: usize,
    cap: u32,
}

/// Dinic max-flow on a small integer-capacity network.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<u32>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    /// Adds `from → to` with capacity `cap`; returns the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently pushed through arc `id`.
    pub fn flow_on(&self, id: usize) -> u32 {
        self.arcs[id ^ 1].cap
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let Arc { to, cap } = self.arcs[e];
                if cap > 0 && self.level[to] == u32::MAX {
                    self.level[to] = self.level[v] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[sink] != u32::MAX
    }

    fn dfs(&mut self, v: usize, sink: usize, limit: u32) -> u32 {
        if v == sink {
            return limit;
        }
        while self.cursor[v] < self.adj[v].len() {
            let e = self.adj[v][self.cursor[v]];
            let Arc { to, cap } = self.arcs[e];
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let pushed = self.dfs(to, sink, limit.min(cap));
                if pushed > 0 {
                    self.arcs[e].cap -= pushed;
                    self.arcs[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.cursor[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let mut total = 0u64;
        while self.bfs(source, sink) {
            self.cursor.fill(0);
            loop {
                let pushed = self.dfs(source, sink, u32::MAX);
                if pushed == 0 {
                    break;
                }
                total += u64::from(pushed);
            }
        }
        total
    }
}

/// Serving AP of every TD, if the chosen disks admit a full assignment.
///
/// `chosen[a]` is AP `a`'s disk, or `None` when the AP stays off.
pub fn assignment_feasible(chosen: &[Option<Disk>], inst: &Instance) -> Option<Vec<usize>> {
    let family = DiskFamily::new(inst);
    let tds: Vec<Option<usize>> = chosen.iter().map(|c| c.map(|d| d.td_id)).collect();
    assign_with_family(&tds, &family, inst.capacity)
}

/// [`assignment_feasible`] over precomputed ranks, with each AP's choice given
/// as the boundary TD of its disk.
pub(crate) fn assign_with_family(
    chosen_td: &[Option<usize>],
    family: &DiskFamily,
    capacity: usize,
) -> Option<Vec<usize>> {
    let m = family.num_aps();
    let n = family.num_tds();
    debug_assert_eq!(chosen_td.len(), m);
    let reach: usize = chosen_td
        .iter()
        .enumerate()
        .filter_map(|(a, c)| c.map(|u| capacity.min(family.rank(a, u) + 1)))
        .sum();
    if reach < n {
        return None;
    }

    let source = 0;
    let sink = 1;
    let ap_node = |a: usize| 2 + a;
    let td_node = |u: usize| 2 + m + u;
    let mut net = FlowNetwork::new(2 + m + n);
    let cap = u32::try_from(capacity).unwrap_or(u32::MAX);
    let mut links = Vec::new();
    for (a, c) in chosen_td.iter().enumerate() {
        let Some(u) = *c else { continue };
        net.add_arc(source, ap_node(a), cap);
        for &v in family.contents(a, u) {
            links.push((a, v, net.add_arc(ap_node(a), td_node(v), 1)));
        }
    }
    for v in 0..n {
        net.add_arc(td_node(v), sink, 1);
    }
    if net.max_flow(source, sink) < n as u64 {
        return None;
    }
    let mut server = vec![usize::MAX; n];
    for (a, v, id) in links {
        if net.flow_on(id) == 1 {
            server[v] = a;
        }
    }
    Some(server)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn inst(tds: Vec<Point>, k: usize) -> Instance {
        Instance::new(
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)],
            tds,
            k,
            1.0,
            2.0,
        )
    }

    #[test]
    fn plain_max_flow() {
        // two disjoint paths of capacity 2 and 3 plus a bottleneck cross arc
        let mut net = FlowNetwork::new(4);
        net.add_arc(0, 1, 2);
        net.add_arc(0, 2, 3);
        net.add_arc(1, 3, 3);
        net.add_arc(2, 3, 1);
        net.add_arc(2, 1, 5);
        assert_eq!(net.max_flow(0, 3), 4);
    }

    #[test]
    fn two_aps_share_two_tds() {
        let inst = inst(vec![Point::new(0.5, 0.1), Point::new(0.5, -0.1)], 1);
        // TD 1 mirrors TD 0 below the x-axis, so its disk is the larger one
        let chosen = [Some(Disk::new(&inst, 0, 1)), Some(Disk::new(&inst, 1, 1))];
        let server = assignment_feasible(&chosen, &inst).unwrap();
        assert_ne!(server[0], server[1]);
    }

    #[test]
    fn capacity_bound_blocks_assignment() {
        let tds = vec![
            Point::new(0.1, 0.0),
            Point::new(0.0, 0.2),
            Point::new(-0.3, 0.0),
        ];
        let inst = inst(tds, 2);
        let chosen = [Some(Disk::new(&inst, 0, 2)), None];
        assert_eq!(assignment_feasible(&chosen, &inst), None);
    }

    #[test]
    fn uncovered_td_blocks_assignment() {
        let tds = vec![
            Point::new(0.1, 0.0),
            Point::new(0.0, 0.2),
            Point::new(5.0, 0.0),
        ];
        let inst = inst(tds, 3);
        let chosen = [Some(Disk::new(&inst, 0, 1)), None];
        assert_eq!(assignment_feasible(&chosen, &inst), None);
    }
}
