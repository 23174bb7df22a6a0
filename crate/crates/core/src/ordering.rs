//! Zone orderings and the line-segment objective.
//!
//! Every set is drawn as one line per maximal run of consecutive zones that
//! contain it. The total number of runs is the quantity minimized here.
//!
//! Summed over sets, the runs equal half the Hamming length of the tour
//! through the zone masks (plus one per set present in every zone when the
//! order is cyclic). A linear order behaves like a cyclic one that also
//! visits the empty set, so both topologies reduce to a Hamming TSP tour.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set_model::{SetSystem, Zone};

/// Zone count up to which [`optimize_exact`] enumerates.
pub const DEFAULT_EXACT_THRESHOLD: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// Hoop diagram: the last zone is adjacent to the first.
    Cyclic,
    /// Linear diagram.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

/// Zone order, set order and topology of a diagram.
///
/// `set_order[0]` is the outermost hoop or the top row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrangement {
    pub zone_order: Vec<usize>,
    pub set_order: Vec<usize>,
    pub topology: Topology,
}

impl Arrangement {
    /// Canonical arrangement: zones and sets in system order.
    pub fn identity(system: &SetSystem, topology: Topology) -> Self {
        Arrangement {
            zone_order: (0..system.num_zones()).collect(),
            set_order: (0..system.num_sets()).collect(),
            topology,
        }
    }

    pub fn check(&self, system: &SetSystem) -> Result<()> {
        if !is_permutation(&self.zone_order, system.num_zones()) {
            return Err(Error::DimensionMismatch(format!(
                "zone order is not a permutation of {} zones",
                system.num_zones()
            )));
        }
        if !is_permutation(&self.set_order, system.num_sets()) {
            return Err(Error::DimensionMismatch(format!(
                "set order is not a permutation of {} sets",
                system.num_sets()
            )));
        }
        Ok(())
    }

    /// Zone masks in display order.
    pub fn ordered_zones(&self, system: &SetSystem) -> Vec<Zone> {
        self.zone_order.iter().map(|&z| system.zones[z]).collect()
    }

    /// Display position of every set.
    pub fn set_positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.set_order.len()];
        for (p, &s) in self.set_order.iter().enumerate() {
            pos[s] = p;
        }
        pos
    }

    /// Display position of every zone.
    pub fn zone_positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.zone_order.len()];
        for (p, &z) in self.zone_order.iter().enumerate() {
            pos[z] = p;
        }
        pos
    }
}

pub fn is_permutation(order: &[usize], n: usize) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentStats {
    pub runs_per_set: Vec<usize>,
    pub total: usize,
}

/// Counts the maximal runs of every set under an arrangement.
pub fn segment_counts(system: &SetSystem, arrangement: &Arrangement) -> Result<SegmentStats> {
    arrangement.check(system)?;
    let zones = arrangement.ordered_zones(system);
    let runs_per_set = count_runs(&zones, system.num_sets(), arrangement.topology);
    let total = runs_per_set.iter().sum();
    Ok(SegmentStats {
        runs_per_set,
        total,
    })
}

/// Per-set run counts over an ordered list of zones.
pub fn count_runs(zones: &[Zone], num_sets: usize, topology: Topology) -> Vec<usize> {
    let m = zones.len();
    (0..num_sets)
        .map(|s| {
            let starts = (0..m)
                .filter(|&i| {
                    if !zones[i].contains(s) {
                        return false;
                    }
                    let prev = match (i, topology) {
                        (0, Topology::Linear) => return true,
                        (0, Topology::Cyclic) => zones[m - 1],
                        _ => zones[i - 1],
                    };
                    !prev.contains(s)
                })
                .count();
            if starts == 0 && m > 0 && zones.iter().all(|z| z.contains(s)) {
                1
            } else {
                starts
            }
        })
        .collect()
}

/// Total runs over an ordered list of masks, computed through boundaries.
fn boundary_total(zones: &[Zone], topology: Topology) -> u32 {
    let Some(&first) = zones.first() else {
        return 0;
    };
    let mut total: u32 = zones
        .windows(2)
        .map(|w| w[1].difference(w[0]).len() as u32)
        .sum();
    match topology {
        Topology::Linear => total + first.len() as u32,
        Topology::Cyclic => {
            total += first.difference(*zones.last().unwrap()).len() as u32;
            total + full_sets(zones).len() as u32
        }
    }
}

/// Sets contained in every zone.
fn full_sets(zones: &[Zone]) -> Zone {
    zones
        .iter()
        .fold(Zone::from_mask(u16::MAX), |acc, &z| acc.intersection(z))
}

/// Minimum-segment order by exhaustive branch and bound.
///
/// Cyclic orders are searched with zone 0 fixed first and mirror images
/// skipped. Among optimal orders the lexicographically smallest is returned.
pub fn optimize_exact(system: &SetSystem, topology: Topology) -> Result<Arrangement> {
    optimize_exact_with_threshold(system, topology, DEFAULT_EXACT_THRESHOLD)
}

pub fn optimize_exact_with_threshold(
    system: &SetSystem,
    topology: Topology,
    threshold: usize,
) -> Result<Arrangement> {
    system.check()?;
    let m = system.num_zones();
    if m > threshold {
        return Err(Error::ThresholdExceeded {
            zones: m,
            threshold,
        });
    }
    let blocks = match topology {
        Topology::Linear => vec![(0..m).collect()],
        Topology::Cyclic => vec![vec![0], (1..m).collect()],
    };
    let mut search = BranchAndBound::new(&system.zones, blocks, topology);
    search.skip_mirrors = topology == Topology::Cyclic;
    let (zone_order, _) = search.run();
    Ok(Arrangement {
        zone_order,
        set_order: (0..system.num_sets()).collect(),
        topology,
    })
}

/// Depth-first enumeration of orders made of consecutive blocks, each block
/// a fixed pool of zones, pruned on a run-count lower bound.
struct BranchAndBound<'a> {
    zones: &'a [Zone],
    topology: Topology,
    blocks: Vec<Vec<usize>>,
    /// Block feeding each position.
    block_at: Vec<usize>,
    skip_mirrors: bool,
    full: u32,
    used: Vec<bool>,
    current: Vec<usize>,
    best: Vec<usize>,
    best_cost: u32,
}

impl<'a> BranchAndBound<'a> {
    fn new(zones: &'a [Zone], blocks: Vec<Vec<usize>>, topology: Topology) -> Self {
        let full = match topology {
            Topology::Cyclic => full_sets(zones).len() as u32,
            Topology::Linear => 0,
        };
        let block_at = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, pool)| std::iter::repeat_n(b, pool.len()))
            .collect();
        BranchAndBound {
            zones,
            topology,
            blocks,
            block_at,
            skip_mirrors: false,
            full,
            used: vec![false; zones.len()],
            current: Vec::with_capacity(zones.len()),
            best: Vec::new(),
            best_cost: u32::MAX,
        }
    }

    fn run(mut self) -> (Vec<usize>, u32) {
        self.descend(0, Zone::EMPTY);
        (self.best, self.best_cost)
    }

    fn remaining_union(&self) -> Zone {
        self.zones
            .iter()
            .zip(&self.used)
            .filter(|(_, &u)| !u)
            .fold(Zone::EMPTY, |acc, (&z, _)| acc.union(z))
    }

    fn descend(&mut self, cost: u32, last: Zone) {
        let depth = self.current.len();
        let m = self.zones.len();
        if depth == m {
            if self.skip_mirrors && m >= 3 && self.current[1] > self.current[m - 1] {
                return;
            }
            let total = match self.topology {
                Topology::Linear => cost,
                Topology::Cyclic => {
                    let first = self.zones[self.current[0]];
                    cost + first.difference(last).len() as u32 + self.full
                }
            };
            if total < self.best_cost {
                self.best_cost = total;
                self.best = self.current.clone();
            }
            return;
        }
        if depth > 0 {
            // Every set still to come that is absent from `last` opens a new run.
            let bound = cost + self.remaining_union().difference(last).len() as u32;
            if bound >= self.best_cost {
                return;
            }
        }
        let block = self.block_at[depth];
        for idx in 0..self.blocks[block].len() {
            let z = self.blocks[block][idx];
            if self.used[z] {
                continue;
            }
            let zone = self.zones[z];
            let step = match (depth, self.topology) {
                (0, Topology::Cyclic) => 0,
                _ => zone.difference(last).len() as u32,
            };
            self.used[z] = true;
            self.current.push(z);
            self.descend(cost + step, zone);
            self.current.pop();
            self.used[z] = false;
        }
    }
}

/// Cycle of zone masks explored by local search. `labels` pins every
/// position to a block; moves only permute nodes within one block.
struct Tour {
    nodes: Vec<Zone>,
    ids: Vec<Option<usize>>,
    labels: Vec<u8>,
}

impl Tour {
    fn length(&self) -> i64 {
        let n = self.nodes.len();
        (0..n)
            .map(|i| i64::from(self.nodes[i].distance(self.nodes[(i + 1) % n])))
            .sum()
    }

    fn d(&self, a: usize, b: usize) -> i64 {
        i64::from(self.nodes[a].distance(self.nodes[b]))
    }

    fn same_label(&self, from: usize, to: usize) -> bool {
        let l = self.labels[from];
        self.labels[from..to].iter().all(|&x| x == l)
    }

    /// Applies the first improving segment reversal, if any.
    fn two_opt_step(&mut self) -> bool {
        let n = self.nodes.len();
        if n < 4 {
            return self.small_reversal_step();
        }
        for i in 0..n {
            for j in i + 1..n {
                if j - i + 1 >= n - 1 {
                    break;
                }
                if !self.same_label(i, j + 1) {
                    break;
                }
                let prev = (i + n - 1) % n;
                let next = (j + 1) % n;
                let delta = self.d(prev, j) + self.d(i, next) - self.d(prev, i) - self.d(j, next);
                if delta < 0 {
                    self.nodes[i..=j].reverse();
                    self.ids[i..=j].reverse();
                    return true;
                }
            }
        }
        false
    }

    /// Tiny cycles: try every adjacent swap by full evaluation.
    fn small_reversal_step(&mut self) -> bool {
        let n = self.nodes.len();
        let base = self.length();
        for i in 0..n.saturating_sub(1) {
            if self.labels[i] != self.labels[i + 1] {
                continue;
            }
            self.nodes.swap(i, i + 1);
            if self.length() < base {
                self.ids.swap(i, i + 1);
                return true;
            }
            self.nodes.swap(i, i + 1);
        }
        false
    }

    /// Applies the first improving relocation of a run of up to three nodes.
    fn or_opt_step(&mut self) -> bool {
        let n = self.nodes.len();
        for len in 1..=3usize {
            if n < len + 3 {
                break;
            }
            for i in 0..=n - len {
                if !self.same_label(i, i + len) {
                    continue;
                }
                let label = self.labels[i];
                let prev = (i + n - 1) % n;
                let next = (i + len) % n;
                let (s0, s1) = (i, i + len - 1);
                let gain = self.d(prev, s0) + self.d(s1, next) - self.d(prev, next);
                let reduced: Vec<usize> = (0..n).filter(|&k| k < i || k >= i + len).collect();
                let r = reduced.len();
                for g in 0..=r {
                    if g == i {
                        continue;
                    }
                    if g + len > n || !self.labels[g..g + len].iter().all(|&x| x == label) {
                        continue;
                    }
                    let left = reduced[(g + r - 1) % r];
                    let right = reduced[g % r];
                    let base = self.d(left, right);
                    let forward = self.d(left, s0) + self.d(s1, right) - base;
                    let backward = self.d(left, s1) + self.d(s0, right) - base;
                    let (ins, reversed) = if backward < forward {
                        (backward, true)
                    } else {
                        (forward, false)
                    };
                    if ins - gain < 0 {
                        self.relocate(i, len, g, reversed);
                        return true;
                    }
                }
            }
        }
        false
    }

    fn relocate(&mut self, start: usize, len: usize, insert_at: usize, reversed: bool) {
        let mut seg_nodes: Vec<Zone> = self.nodes.drain(start..start + len).collect();
        let mut seg_ids: Vec<Option<usize>> = self.ids.drain(start..start + len).collect();
        if reversed {
            seg_nodes.reverse();
            seg_ids.reverse();
        }
        let tail_nodes = self.nodes.split_off(insert_at);
        let tail_ids = self.ids.split_off(insert_at);
        self.nodes.extend(seg_nodes);
        self.nodes.extend(tail_nodes);
        self.ids.extend(seg_ids);
        self.ids.extend(tail_ids);
    }

    fn improve(&mut self) {
        loop {
            if self.two_opt_step() {
                continue;
            }
            if self.or_opt_step() {
                continue;
            }
            break;
        }
    }
}

fn anchor_node() -> (Zone, Option<usize>) {
    (Zone::EMPTY, None)
}

/// Builds a tour over `items` by nearest neighbour from `start`.
fn nearest_neighbour(items: &[(Zone, Option<usize>)], start: usize) -> Vec<(Zone, Option<usize>)> {
    let mut visited = vec![false; items.len()];
    let mut out = Vec::with_capacity(items.len());
    let mut cur = start;
    visited[cur] = true;
    out.push(items[cur]);
    for _ in 1..items.len() {
        let here = items[cur].0;
        let next = (0..items.len())
            .filter(|&k| !visited[k])
            .min_by_key(|&k| (here.distance(items[k].0), k))
            .unwrap();
        visited[next] = true;
        out.push(items[next]);
        cur = next;
    }
    out
}

/// Turns a cyclic sequence into a zone order: cut at the anchor for linear
/// orders, start at the smallest zone index for cyclic ones, and pick the
/// lexicographically smaller of the two reading directions.
fn normalize(seq: &[Option<usize>], topology: Topology) -> Vec<usize> {
    let n = seq.len();
    let pivot = match topology {
        Topology::Linear => seq.iter().position(Option::is_none).unwrap(),
        Topology::Cyclic => (0..n).min_by_key(|&k| seq[k]).unwrap(),
    };
    let forward: Vec<Option<usize>> = (0..n).map(|k| seq[(pivot + k) % n]).collect();
    let backward: Vec<Option<usize>> = (0..n).map(|k| seq[(pivot + n - k) % n]).collect();
    let pick = |v: Vec<Option<usize>>| -> Vec<usize> { v.into_iter().flatten().collect() };
    let (f, b) = (pick(forward), pick(backward));
    if b < f {
        b
    } else {
        f
    }
}

/// Local search order: nearest-neighbour tours on Hamming distance from
/// several starts, each improved with 2-opt and or-opt moves.
///
/// Deterministic for a fixed seed and never worse than the canonical order.
pub fn optimize_heuristic(system: &SetSystem, topology: Topology, seed: u64) -> Arrangement {
    let m = system.num_zones();
    let set_order: Vec<usize> = (0..system.num_sets()).collect();
    if m <= 1 {
        return Arrangement {
            zone_order: (0..m).collect(),
            set_order,
            topology,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items: Vec<(Zone, Option<usize>)> = system
        .zones
        .iter()
        .enumerate()
        .map(|(i, &z)| (z, Some(i)))
        .collect();
    if topology == Topology::Linear {
        items.insert(0, anchor_node());
    }
    let n = items.len();

    let mut starts: Vec<Vec<(Zone, Option<usize>)>> = vec![items.clone()];
    let nn_starts: Vec<usize> = if n <= 32 {
        (0..n).collect()
    } else {
        let mut picks = vec![0];
        picks.extend((0..7).map(|_| rng.random_range(1..n)));
        picks
    };
    for s in nn_starts {
        starts.push(nearest_neighbour(&items, s));
    }
    for _ in 0..4 {
        let mut shuffled = items.clone();
        shuffled.shuffle(&mut rng);
        starts.push(shuffled);
    }

    let mut best: Option<(i64, Vec<usize>)> = None;
    for start in starts {
        // Pin one node so local search never just rotates the cycle.
        let pin = match topology {
            Topology::Linear => start.iter().position(|(_, id)| id.is_none()).unwrap(),
            Topology::Cyclic => 0,
        };
        let rotated: Vec<_> = (0..n).map(|k| start[(pin + k) % n]).collect();
        let mut labels = vec![1u8; n];
        labels[0] = 0;
        let mut tour = Tour {
            nodes: rotated.iter().map(|(z, _)| *z).collect(),
            ids: rotated.iter().map(|(_, id)| *id).collect(),
            labels,
        };
        tour.improve();
        let len = tour.length();
        let order = normalize(&tour.ids, topology);
        let better = match &best {
            None => true,
            Some((l, o)) => len < *l || (len == *l && order < *o),
        };
        if better {
            best = Some((len, order));
        }
    }
    Arrangement {
        zone_order: best.unwrap().1,
        set_order,
        topology,
    }
}

/// Puts every zone containing `set` first and orders both blocks to
/// minimize the remaining segments. Set order is kept.
pub fn reorder_for_set(
    system: &SetSystem,
    arrangement: &Arrangement,
    set: usize,
) -> Result<Arrangement> {
    reorder_for_set_with_threshold(system, arrangement, set, DEFAULT_EXACT_THRESHOLD)
}

/// As [`reorder_for_set`]. Exact search runs when the number of
/// block-respecting orders, `k!·(m−k)!`, is at most `threshold!`.
pub fn reorder_for_set_with_threshold(
    system: &SetSystem,
    arrangement: &Arrangement,
    set: usize,
    threshold: usize,
) -> Result<Arrangement> {
    arrangement.check(system)?;
    if set >= system.num_sets() {
        return Err(Error::InvalidSet {
            index: set,
            count: system.num_sets(),
        });
    }
    let (with, without): (Vec<usize>, Vec<usize>) = arrangement
        .zone_order
        .iter()
        .partition(|&&z| system.zones[z].contains(set));
    let k = with.len();
    let topology = arrangement.topology;
    let already_grouped = arrangement.zone_order[..k]
        .iter()
        .all(|&z| system.zones[z].contains(set));

    let zone_order = if block_space_fits(k, without.len(), threshold) {
        let mut a = with.clone();
        let mut b = without.clone();
        a.sort_unstable();
        b.sort_unstable();
        let blocks: Vec<Vec<usize>> = [a, b].into_iter().filter(|b| !b.is_empty()).collect();
        let (order, cost) = BranchAndBound::new(&system.zones, blocks, topology).run();
        let current = boundary_total(&arrangement.ordered_zones(system), topology);
        if already_grouped && current == cost {
            arrangement.zone_order.clone()
        } else {
            order
        }
    } else {
        block_local_search(system, &with, &without, topology)
    };
    Ok(Arrangement {
        zone_order,
        set_order: arrangement.set_order.clone(),
        topology,
    })
}

fn block_space_fits(a: usize, b: usize, threshold: usize) -> bool {
    let limit: u128 = (1..=threshold as u128).product();
    let mut size: u128 = 1;
    for k in (1..=a).chain(1..=b) {
        size = size.saturating_mul(k as u128);
        if size > limit {
            return false;
        }
    }
    true
}

fn block_local_search(
    system: &SetSystem,
    with: &[usize],
    without: &[usize],
    topology: Topology,
) -> Vec<usize> {
    let as_items = |ids: &[usize]| -> Vec<(Zone, Option<usize>)> {
        ids.iter().map(|&z| (system.zones[z], Some(z))).collect()
    };
    let nn_block = |ids: &[usize]| -> Vec<(Zone, Option<usize>)> {
        if ids.is_empty() {
            Vec::new()
        } else {
            nearest_neighbour(&as_items(ids), 0)
        }
    };
    let candidates = [
        (as_items(with), as_items(without)),
        (nn_block(with), nn_block(without)),
    ];
    let mut best: Option<(i64, Vec<usize>)> = None;
    for (a, b) in candidates {
        let mut items = Vec::new();
        let mut labels = Vec::new();
        if topology == Topology::Linear {
            items.push(anchor_node());
            labels.push(0u8);
        }
        labels.extend(std::iter::repeat_n(1u8, a.len()));
        labels.extend(std::iter::repeat_n(2u8, b.len()));
        items.extend(a);
        items.extend(b);
        let mut tour = Tour {
            nodes: items.iter().map(|(z, _)| *z).collect(),
            ids: items.iter().map(|(_, id)| *id).collect(),
            labels,
        };
        tour.improve();
        let len = tour.length();
        let order: Vec<usize> = tour.ids.iter().flatten().copied().collect();
        if best.as_ref().is_none_or(|(l, _)| len < *l) {
            best = Some((len, order));
        }
    }
    best.unwrap().1
}

/// Moves `set` to the outermost hoop / top row; the sets above it shift
/// inward by one.
pub fn bring_set_to_front(arrangement: &Arrangement, set: usize) -> Result<Arrangement> {
    let pos = arrangement
        .set_order
        .iter()
        .position(|&s| s == set)
        .ok_or(Error::InvalidSet {
            index: set,
            count: arrangement.set_order.len(),
        })?;
    let mut out = arrangement.clone();
    out.set_order[..=pos].rotate_right(1);
    Ok(out)
}

/// Shifts every zone one position. Right moves the last zone to the front.
pub fn rotate(arrangement: &Arrangement, direction: Direction) -> Arrangement {
    let mut out = arrangement.clone();
    if !out.zone_order.is_empty() {
        match direction {
            Direction::Left => out.zone_order.rotate_left(1),
            Direction::Right => out.zone_order.rotate_right(1),
        }
    }
    out
}

/// Total runs of an arrangement through the boundary sum; no validation.
pub fn total_segments(system: &SetSystem, arrangement: &Arrangement) -> usize {
    boundary_total(&arrangement.ordered_zones(system), arrangement.topology) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(sets: &[&str], zones: &[&[&str]]) -> SetSystem {
        SetSystem::from_named_zones(sets, zones).unwrap()
    }

    fn arr(order: &[usize], sets: usize, topology: Topology) -> Arrangement {
        Arrangement {
            zone_order: order.to_vec(),
            set_order: (0..sets).collect(),
            topology,
        }
    }

    #[test]
    fn contiguous_runs() {
        let s = system(&["A", "B"], &[&["A"], &["A", "B"], &["B"]]);
        let st = segment_counts(&s, &arr(&[0, 1, 2], 2, Topology::Linear)).unwrap();
        assert_eq!(st.runs_per_set, [1, 1]);
        assert_eq!(st.total, 2);
    }

    #[test]
    fn split_run_linear_and_cyclic_wrap() {
        // Zones [{A}, {B}, {A, C}] read as A, B, A for sets A and B.
        let s = system(&["A", "B", "C"], &[&["A"], &["B"], &["A", "C"]]);
        let lin = segment_counts(&s, &arr(&[0, 1, 2], 3, Topology::Linear)).unwrap();
        assert_eq!(lin.runs_per_set, [2, 1, 1]);
        let cyc = segment_counts(&s, &arr(&[0, 1, 2], 3, Topology::Cyclic)).unwrap();
        assert_eq!(cyc.runs_per_set, [1, 1, 1]);
    }

    #[test]
    fn full_circle_is_one_run() {
        let s = system(&["A", "B"], &[&["A"], &["A", "B"]]);
        let st = segment_counts(&s, &arr(&[0, 1], 2, Topology::Cyclic)).unwrap();
        assert_eq!(st.runs_per_set, [1, 1]);
        assert_eq!(total_segments(&s, &arr(&[1, 0], 2, Topology::Cyclic)), 2);
    }

    #[test]
    fn dimension_mismatch() {
        let s = system(&["A"], &[&["A"]]);
        assert!(matches!(
            segment_counts(&s, &arr(&[0, 1], 1, Topology::Linear)),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            segment_counts(&s, &arr(&[0], 2, Topology::Linear)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn exact_small_cases() {
        let s = system(&["A", "B"], &[&["A"], &["B"], &["A", "B"]]);
        let best = optimize_exact(&s, Topology::Linear).unwrap();
        assert_eq!(best.zone_order, [0, 2, 1]);
        assert_eq!(segment_counts(&s, &best).unwrap().total, 2);

        let one = system(&["A", "B"], &[&["A", "B"]]);
        let a = optimize_exact(&one, Topology::Cyclic).unwrap();
        assert_eq!(a.zone_order, [0]);
        assert_eq!(segment_counts(&one, &a).unwrap().total, 2);

        let disjoint = system(&["A", "B"], &[&["A"], &["B"]]);
        let a = optimize_exact(&disjoint, Topology::Linear).unwrap();
        assert_eq!(segment_counts(&disjoint, &a).unwrap().total, 2);
    }

    #[test]
    fn exact_threshold() {
        let s = system(&["A", "B"], &[&["A"], &["B"], &["A", "B"]]);
        assert!(matches!(
            optimize_exact_with_threshold(&s, Topology::Linear, 2),
            Err(Error::ThresholdExceeded {
                zones: 3,
                threshold: 2
            })
        ));
    }

    #[test]
    fn heuristic_reaches_two_from_any_input_order() {
        let zones: [&[&str]; 3] = [&["A"], &["A", "B"], &["B"]];
        for perm in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            let z: Vec<&[&str]> = perm.iter().map(|&i| zones[i]).collect();
            let s = system(&["A", "B"], &z);
            for topology in [Topology::Linear, Topology::Cyclic] {
                let a = optimize_heuristic(&s, topology, 1);
                assert_eq!(segment_counts(&s, &a).unwrap().total, 2);
            }
        }
    }

    #[test]
    fn heuristic_single_zone_is_identity() {
        let s = system(&["A"], &[&["A"]]);
        let a = optimize_heuristic(&s, Topology::Cyclic, 9);
        assert_eq!(a, Arrangement::identity(&s, Topology::Cyclic));
    }

    #[test]
    fn reorder_groups_the_set() {
        let s = system(&["A", "B", "C"], &[&["A", "B"], &["C"], &["B"]]);
        let a = reorder_for_set(&s, &arr(&[0, 1, 2], 3, Topology::Cyclic), 1).unwrap();
        let mut head = a.zone_order[..2].to_vec();
        head.sort();
        assert_eq!(head, [0, 2]);
        assert_eq!(segment_counts(&s, &a).unwrap().runs_per_set[1], 1);
    }

    #[test]
    fn reorder_fixpoint() {
        let s = system(&["A", "B", "C"], &[&["A", "B"], &["C"], &["B"]]);
        let start = arr(&[2, 0, 1], 3, Topology::Linear);
        let a = reorder_for_set(&s, &start, 1).unwrap();
        assert_eq!(a, start);
    }

    #[test]
    fn reorder_invalid_set() {
        let s = system(&["A"], &[&["A"]]);
        assert!(matches!(
            reorder_for_set(&s, &arr(&[0], 1, Topology::Cyclic), 3),
            Err(Error::InvalidSet { index: 3, count: 1 })
        ));
    }

    #[test]
    fn bring_to_front_shifts_outer_sets_inward() {
        // Cars, Dogs, Food, Hifi
        let a = arr(&[0], 4, Topology::Cyclic);
        let b = bring_set_to_front(&a, 2).unwrap();
        assert_eq!(b.set_order, [2, 0, 1, 3]);
        assert_eq!(bring_set_to_front(&b, 2).unwrap(), b);
        let c = bring_set_to_front(&b, 3).unwrap();
        assert_eq!(c.set_order, [3, 2, 0, 1]);
        assert!(bring_set_to_front(&a, 4).is_err());
    }

    #[test]
    fn rotation() {
        let a = arr(&[0, 1, 2], 1, Topology::Linear);
        assert_eq!(rotate(&a, Direction::Right).zone_order, [2, 0, 1]);
        assert_eq!(rotate(&a, Direction::Left).zone_order, [1, 2, 0]);
        assert_eq!(rotate(&rotate(&a, Direction::Left), Direction::Right), a);
        let mut r = a.clone();
        for _ in 0..3 {
            r = rotate(&r, Direction::Left);
        }
        assert_eq!(r, a);
    }

    #[test]
    fn block_space() {
        assert!(block_space_fits(6, 6, 10));
        assert!(!block_space_fits(1, 11, 10));
        assert!(block_space_fits(0, 10, 10));
    }
}
