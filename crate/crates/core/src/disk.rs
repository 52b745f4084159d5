//! The candidate disk family and the strict order on disks sharing a center.
//!
//! Every (AP, TD) pair defines one disk centered at the AP with the TD on its
//! boundary. Disks at the same AP are ordered by [`DiskKey`]: squared radius
//! first, then the cosine of the AP→TD direction against the x-axis (a larger
//! cosine ranks higher), then the sign of the y component (non-negative below
//! negative), then the TD id. Containment follows the order rather than the
//! metric: a disk contains a TD exactly when that TD's own disk at the same AP
//! does not rank above it. Two TDs at equal distance are therefore never both
//! contained in each other's disk.

use std::cmp::Ordering;

use crate::geometry::{distance_sq, power_of, Point};
use crate::instance::Instance;

/// Position of a disk in the order of disks sharing its center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskKey {
    pub radius_sq: f64,
    pub cos_angle: f64,
    pub y_sign_rank: u8,
    pub td_id: usize,
}

impl DiskKey {
    /// Key of the disk centered at `ap` whose boundary passes through `td`.
    ///
    /// A TD sitting on the AP has no direction; it gets `cos_angle = 1` and
    /// falls back to the id comparison against other coincident TDs.
    pub fn new(ap: Point, td: Point, td_id: usize) -> Self {
        let radius_sq = distance_sq(ap, td);
        let dx = td.x - ap.x;
        let dy = td.y - ap.y;
        let cos_angle = if radius_sq > 0.0 {
            // +0.0 normalizes a negative zero
            (dx / radius_sq.sqrt()).clamp(-1.0, 1.0) + 0.0
        } else {
            1.0
        };
        let y_sign_rank = if dy < 0.0 { 1 } else { 0 };
        Self {
            radius_sq,
            cos_angle,
            y_sign_rank,
            td_id,
        }
    }
}

impl Eq for DiskKey {}

impl Ord for DiskKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.radius_sq
            .total_cmp(&other.radius_sq)
            .then_with(|| self.cos_angle.total_cmp(&other.cos_angle))
            .then_with(|| self.y_sign_rank.cmp(&other.y_sign_rank))
            .then_with(|| self.td_id.cmp(&other.td_id))
    }
}

impl PartialOrd for DiskKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One candidate power assignment: AP `ap_id` transmitting just far enough to
/// reach TD `td_id`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub ap_id: usize,
    pub td_id: usize,
    pub key: DiskKey,
    pub power: f64,
}

impl Disk {
    pub fn new(inst: &Instance, ap_id: usize, td_id: usize) -> Self {
        let key = DiskKey::new(inst.aps[ap_id], inst.tds[td_id], td_id);
        let power = power_of(key.radius_sq, inst.power_c, inst.power_alpha);
        Self {
            ap_id,
            td_id,
            key,
            power,
        }
    }

    pub fn radius(&self) -> f64 {
        self.key.radius_sq.sqrt()
    }
}

/// All `m * n` disks, AP-major then TD-minor.
pub fn build_disk_family(inst: &Instance) -> Vec<Disk> {
    (0..inst.num_aps())
        .flat_map(|a| (0..inst.num_tds()).map(move |u| (a, u)))
        .map(|(a, u)| Disk::new(inst, a, u))
        .collect()
}

/// Order-based containment: does `disk` contain TD `td_id`?
pub fn contains(disk: &Disk, td_id: usize, inst: &Instance) -> bool {
    DiskKey::new(inst.aps[disk.ap_id], inst.tds[td_id], td_id) <= disk.key
}

/// The disk family with each AP's TDs pre-sorted by key, so that the TDs a
/// disk contains form a prefix of its AP's sorted list.
#[derive(Debug, Clone)]
pub struct DiskFamily {
    num_aps: usize,
    num_tds: usize,
    disks: Vec<Disk>,
    /// `sorted[a]` lists TD ids by ascending key at AP `a`.
    sorted: Vec<Vec<usize>>,
    /// `rank[a * n + u]` is the position of TD `u` in `sorted[a]`.
    rank: Vec<usize>,
}

impl DiskFamily {
    pub fn new(inst: &Instance) -> Self {
        let m = inst.num_aps();
        let n = inst.num_tds();
        let disks = build_disk_family(inst);
        let mut sorted = Vec::with_capacity(m);
        let mut rank = vec![0; m * n];
        for a in 0..m {
            let row = &disks[a * n..(a + 1) * n];
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_unstable_by(|&u, &v| row[u].key.cmp(&row[v].key));
            for (r, &u) in order.iter().enumerate() {
                rank[a * n + u] = r;
            }
            sorted.push(order);
        }
        Self {
            num_aps: m,
            num_tds: n,
            disks,
            sorted,
            rank,
        }
    }

    pub fn num_aps(&self) -> usize {
        self.num_aps
    }

    pub fn num_tds(&self) -> usize {
        self.num_tds
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    /// Flat index of disk `D_{ap, td}`.
    pub fn index(&self, ap: usize, td: usize) -> usize {
        ap * self.num_tds + td
    }

    pub fn disk(&self, ap: usize, td: usize) -> &Disk {
        &self.disks[self.index(ap, td)]
    }

    pub fn by_index(&self, idx: usize) -> &Disk {
        &self.disks[idx]
    }

    /// TD ids at `ap`, ascending by key.
    pub fn sorted_tds(&self, ap: usize) -> &[usize] {
        &self.sorted[ap]
    }

    /// Rank of TD `td` among the disks centered at `ap`.
    pub fn rank(&self, ap: usize, td: usize) -> usize {
        self.rank[self.index(ap, td)]
    }

    /// TDs contained in `D_{ap, td}`, ascending by key.
    pub fn contents(&self, ap: usize, td: usize) -> &[usize] {
        &self.sorted[ap][..=self.rank(ap, td)]
    }

    /// Same semantics as [`contains`], answered from the precomputed ranks.
    pub fn contains(&self, ap: usize, disk_td: usize, td: usize) -> bool {
        self.rank(ap, td) <= self.rank(ap, disk_td)
    }
}
