//! Test-only oracles, independent of the library's ordering code.
#![allow(dead_code)]

use hoops::set_model::SetSystem;
use itertools::Itertools;

/// Membership matrix: `rows[i][s]` is true when the i-th zone holds set s.
pub fn membership(system: &SetSystem, order: &[usize]) -> Vec<Vec<bool>> {
    order
        .iter()
        .map(|&z| {
            (0..system.num_sets())
                .map(|s| system.zones[z].contains(s))
                .collect()
        })
        .collect()
}

/// Runs of one boolean column, counted by grouping equal neighbours.
fn column_runs(column: &[bool], cyclic: bool) -> usize {
    if column.iter().all(|&b| b) {
        return 1;
    }
    let seq: Vec<bool> = if cyclic {
        // Start right after an absent zone so no run straddles the cut.
        let cut = column.iter().position(|&b| !b).unwrap();
        column[cut..]
            .iter()
            .chain(&column[..cut])
            .copied()
            .collect()
    } else {
        column.to_vec()
    };
    seq.iter()
        .chunk_by(|&&b| b)
        .into_iter()
        .filter(|(present, _)| *present)
        .count()
}

pub fn oracle_runs(system: &SetSystem, order: &[usize], cyclic: bool) -> Vec<usize> {
    let rows = membership(system, order);
    (0..system.num_sets())
        .map(|s| {
            let column: Vec<bool> = rows.iter().map(|r| r[s]).collect();
            column_runs(&column, cyclic)
        })
        .collect()
}

pub fn oracle_total(system: &SetSystem, order: &[usize], cyclic: bool) -> usize {
    oracle_runs(system, order, cyclic).iter().sum()
}

/// Lexicographically first optimal order over all linear orders.
pub fn brute_force_linear(system: &SetSystem) -> (usize, Vec<usize>) {
    let m = system.num_zones();
    let mut best = (usize::MAX, Vec::new());
    for perm in (0..m).permutations(m) {
        let t = oracle_total(system, &perm, false);
        if t < best.0 {
            best = (t, perm);
        }
    }
    best
}

/// Lexicographically first optimal cyclic order, one representative per
/// rotation and reflection class (zone 0 first, second < last).
pub fn brute_force_cyclic(system: &SetSystem) -> (usize, Vec<usize>) {
    let m = system.num_zones();
    let mut best = (usize::MAX, Vec::new());
    for rest in (1..m).permutations(m - 1) {
        if m >= 3 && rest[0] > rest[m - 2] {
            continue;
        }
        let mut perm = vec![0];
        perm.extend(rest);
        let t = oracle_total(system, &perm, true);
        if t < best.0 {
            best = (t, perm);
        }
    }
    best
}

/// Minimum total over orders that list `first` (in any order) before
/// `second` (in any order).
pub fn brute_force_blocks(
    system: &SetSystem,
    first: &[usize],
    second: &[usize],
    cyclic: bool,
) -> usize {
    let mut best = usize::MAX;
    for a in first.iter().copied().permutations(first.len()) {
        for b in second.iter().copied().permutations(second.len()) {
            let order: Vec<usize> = a.iter().chain(&b).copied().collect();
            best = best.min(oracle_total(system, &order, cyclic));
        }
    }
    best
}

/// Boundary form of the total: half the summed symmetric differences plus
/// full-circle sets (cyclic), or new sets per step from the empty set (linear).
pub fn boundary_formula(system: &SetSystem, order: &[usize], cyclic: bool) -> usize {
    let rows = membership(system, order);
    let m = rows.len();
    let n = system.num_sets();
    if cyclic {
        let sym: usize = (0..m)
            .map(|i| {
                let (a, b) = (&rows[i], &rows[(i + 1) % m]);
                (0..n).filter(|&s| a[s] != b[s]).count()
            })
            .sum();
        let full = (0..n).filter(|&s| rows.iter().all(|r| r[s])).count();
        sym / 2 + full
    } else {
        (0..m)
            .map(|i| {
                (0..n)
                    .filter(|&s| rows[i][s] && (i == 0 || !rows[i - 1][s]))
                    .count()
            })
            .sum()
    }
}
