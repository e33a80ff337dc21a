//! Brute-force oracles written against plain position sets, independent of
//! the bitmask code in the crate.
#![allow(dead_code)]

use std::collections::BTreeSet;

use modulilog::{Mark, MarkedSet, StablePartition};

pub type Side = BTreeSet<usize>;

/// Positions are 0 = "0", i = "s_i", n+1 = "1", n+2 = "inf".
pub fn names(n: usize) -> Vec<String> {
    let mut v = vec!["0".to_string()];
    v.extend((1..=n).map(|i| format!("s{i}")));
    v.push("1".into());
    v.push("inf".into());
    v
}

pub fn side_of(p: &StablePartition) -> Side {
    let n = p.host().n();
    let names = names(n);
    let mut side: Side =
        p.part_marks().iter().map(|m| names.iter().position(|s| *s == m.to_string()).unwrap()).collect();
    if side.contains(&(n + 2)) {
        side = (0..n + 3).filter(|i| !side.contains(i)).collect();
    }
    side
}

pub fn partition_of(n: usize, side: &Side) -> StablePartition {
    let names = names(n);
    let marks: Vec<Mark> = side.iter().map(|&i| names[i].parse().unwrap()).collect();
    StablePartition::new(MarkedSet::new(n).unwrap(), &marks).unwrap()
}

/// Every stable 2-partition, as the side without inf.
pub fn all_stable(n: usize) -> Vec<Side> {
    let total = n + 3;
    let mut out = Vec::new();
    for mask in 0u64..(1 << (total - 1)) {
        let side: Side = (0..total - 1).filter(|i| mask >> i & 1 == 1).collect();
        if side.len() >= 2 && total - side.len() >= 2 {
            out.push(side);
        }
    }
    out
}

/// One side is a run of consecutive marks around the circle.
pub fn is_arc(side: &Side, total: usize) -> bool {
    (0..total).filter(|i| side.contains(i) && !side.contains(&((i + 1) % total))).count() == 1
}

pub fn a_oracle(t: &Side, u: &Side, total: usize) -> usize {
    let tc: Side = (0..total).filter(|i| !t.contains(i)).collect();
    let uc: Side = (0..total).filter(|i| !u.contains(i)).collect();
    [(t, u), (t, &uc), (&tc, u), (&tc, &uc)].iter().filter(|(x, y)| x.intersection(y).next().is_some()).count()
}

/// Gap endpoints of the chord cutting off an arc: the gap before its first
/// element and the gap after its last one.
fn chord(side: &Side, total: usize) -> (usize, usize) {
    let start = (0..total).find(|&i| side.contains(&i) && !side.contains(&((i + total - 1) % total))).unwrap();
    let end = (0..total).find(|&i| side.contains(&i) && !side.contains(&((i + 1) % total))).unwrap();
    (start, (end + 1) % total)
}

/// Whether the chords of two arcs cross in the interior of the disk.
pub fn chords_cross(t: &Side, u: &Side, total: usize) -> bool {
    let (a, b) = chord(t, total);
    let (c, d) = chord(u, total);
    if [a, b].contains(&c) || [a, b].contains(&d) {
        return false;
    }
    let inside = |g: usize| {
        let off = (g + total - a) % total;
        off > 0 && off < (b + total - a) % total
    };
    inside(c) != inside(d)
}

/// Forget position `x`; `None` when the side holding `x` becomes a singleton.
pub fn forget(side: &Side, total: usize, x: usize) -> Option<Side> {
    let other: Side = (0..total).filter(|i| !side.contains(i)).collect();
    let holder = if side.contains(&x) { side } else { &other };
    if holder.len() <= 2 {
        return None;
    }
    let shift = |s: &Side| -> Side { s.iter().filter(|&&i| i != x).map(|&i| if i > x { i - 1 } else { i }).collect() };
    let new_side = shift(side);
    let new_total = total - 1;
    // keep the side without inf, which is the last position
    if new_side.contains(&(new_total - 1)) {
        Some((0..new_total).filter(|i| !new_side.contains(i)).collect())
    } else {
        Some(new_side)
    }
}

pub fn catalan(k: u64) -> u64 {
    (0..k).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// Vertices of B_n by trying all n-subsets of strictly ordered partitions.
pub fn naive_vertices(n: usize) -> BTreeSet<Vec<Side>> {
    let total = n + 3;
    let arcs: Vec<Side> = all_stable(n).into_iter().filter(|s| is_arc(s, total)).collect();
    let mut out = BTreeSet::new();
    let m = arcs.len();
    for mask in 0u64..(1 << m) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let fam: Vec<Side> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| arcs[i].clone()).collect();
        let good = fam.iter().enumerate().all(|(i, x)| fam[i + 1..].iter().all(|y| a_oracle(x, y, total) == 3));
        if good {
            out.insert(fam);
        }
    }
    out
}
