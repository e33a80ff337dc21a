//! Cyclically ordered marked sets and their stable 2-partitions.
//!
//! The marked set is always `S = {0, s1, ..., sn, 1, inf}` with the cyclic
//! order `0 < s1 < ... < sn < 1 < inf < 0`. Elements are addressed by their
//! position in that list, so subsets are `u64` bitmasks: bit 0 is `0`, bit
//! `i` is `s_i`, bit `n + 1` is `1` and bit `n + 2` is `inf`.
//!
//! A [`StablePartition`] stores the side that does not contain `inf`. Two
//! values are equal exactly when they describe the same unordered partition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of movable marks (the full set must fit in a `u64`).
pub const MAX_MARKS: usize = 60;

/// A label of the marked set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Mark {
    Zero,
    /// Movable mark `s_i`, 1-based.
    S(usize),
    One,
    Infinity,
}

impl Mark {
    pub fn is_fixed(self) -> bool {
        !matches!(self, Mark::S(_))
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mark::Zero => f.write_str("0"),
            Mark::S(i) => write!(f, "s{i}"),
            Mark::One => f.write_str("1"),
            Mark::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Mark {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Mark::Zero),
            "1" => Ok(Mark::One),
            "inf" | "∞" | "infinity" => Ok(Mark::Infinity),
            other => other
                .strip_prefix('s')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(Mark::S)
                .ok_or_else(|| Error::UnknownMark(other.to_string())),
        }
    }
}

impl From<Mark> for String {
    fn from(m: Mark) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for Mark {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The marked set `{0, s1, ..., sn, 1, inf}` with its fixed cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedSet {
    n: usize,
}

impl MarkedSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_MARKS {
            return Err(Error::InvalidMarkCount { n, max: MAX_MARKS });
        }
        Ok(MarkedSet { n })
    }

    /// Number of movable marks.
    pub fn n(self) -> usize {
        self.n
    }

    /// Cardinality `n + 3`.
    pub fn len(self) -> usize {
        self.n + 3
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn full_mask(self) -> u64 {
        (1u64 << self.len()) - 1
    }

    pub fn infinity_bit(self) -> u64 {
        1u64 << (self.n + 2)
    }

    pub fn position(self, mark: Mark) -> Result<usize> {
        match mark {
            Mark::Zero => Ok(0),
            Mark::S(i) if (1..=self.n).contains(&i) => Ok(i),
            Mark::S(_) => Err(Error::UnknownMark(mark.to_string())),
            Mark::One => Ok(self.n + 1),
            Mark::Infinity => Ok(self.n + 2),
        }
    }

    pub fn bit(self, mark: Mark) -> Result<u64> {
        self.position(mark).map(|p| 1u64 << p)
    }

    pub fn mark_at(self, pos: usize) -> Mark {
        match pos {
            0 => Mark::Zero,
            p if p <= self.n => Mark::S(p),
            p if p == self.n + 1 => Mark::One,
            p if p == self.n + 2 => Mark::Infinity,
            p => panic!("position {p} outside marked set of size {}", self.len()),
        }
    }

    /// Elements in cyclic order starting from `0`.
    pub fn elements(self) -> Vec<Mark> {
        (0..self.len()).map(|p| self.mark_at(p)).collect()
    }

    pub fn mask_of(self, marks: &[Mark]) -> Result<u64> {
        marks.iter().try_fold(0u64, |acc, &m| Ok(acc | self.bit(m)?))
    }

    pub fn marks_of(self, mask: u64) -> Vec<Mark> {
        (0..self.len()).filter(|p| mask >> p & 1 == 1).map(|p| self.mark_at(p)).collect()
    }

    /// Mask of the four marks `{0, s_i, 1, inf}`.
    pub fn four_point_mask(self, i: usize) -> Result<u64> {
        self.mask_of(&[Mark::Zero, Mark::S(i), Mark::One, Mark::Infinity])
    }

    fn format_mask(self, mask: u64) -> String {
        let names: Vec<String> = self.marks_of(mask).iter().map(|m| m.to_string()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// An unordered partition of the marked set into two parts of size at least two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct StablePartition {
    host: MarkedSet,
    part: u64,
}

/// Outcome of forgetting one movable mark.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contraction {
    /// The side containing the mark dropped below two elements; the divisor
    /// maps onto the whole smaller moduli space.
    Collapses,
    Stable(StablePartition),
}

impl StablePartition {
    /// Builds the partition with one side given by `mask`; either side may be passed.
    pub fn from_mask(host: MarkedSet, mask: u64) -> Result<Self> {
        let full = host.full_mask();
        let mask = mask & full;
        let part = if mask & host.infinity_bit() != 0 { full & !mask } else { mask };
        let size = part.count_ones() as usize;
        if size < 2 || host.len() - size < 2 {
            return Err(Error::UnstablePartition { part: host.format_mask(mask) });
        }
        Ok(StablePartition { host, part })
    }

    pub fn new(host: MarkedSet, side: &[Mark]) -> Result<Self> {
        Self::from_mask(host, host.mask_of(side)?)
    }

    pub fn host(&self) -> MarkedSet {
        self.host
    }

    /// The canonical side (never contains `inf`).
    pub fn part_mask(&self) -> u64 {
        self.part
    }

    /// The side containing `inf`.
    pub fn other_mask(&self) -> u64 {
        self.host.full_mask() & !self.part
    }

    pub fn part_marks(&self) -> Vec<Mark> {
        self.host.marks_of(self.part)
    }

    pub fn other_marks(&self) -> Vec<Mark> {
        self.host.marks_of(self.other_mask())
    }

    fn same_host(&self, other: &StablePartition) -> Result<()> {
        if self.host != other.host {
            return Err(Error::HostMismatch { left: self.host.n, right: other.host.n });
        }
        Ok(())
    }

    /// Number of nonempty intersections `σ_i ∩ τ_j` over the four pairs; 2, 3 or 4.
    pub fn a_count(&self, other: &StablePartition) -> Result<u8> {
        self.same_host(other)?;
        let mine = [self.part, self.other_mask()];
        let theirs = [other.part, other.other_mask()];
        let count = mine.iter().flat_map(|a| theirs.iter().map(move |b| a & b)).filter(|&m| m != 0).count();
        Ok(count as u8)
    }

    /// Whether the boundary divisors meet (`a_count` is 2 or 3).
    pub fn divisors_intersect(&self, other: &StablePartition) -> Result<bool> {
        Ok(self.a_count(other)? <= 3)
    }

    /// Whether one side is a run of consecutive marks in the cyclic order.
    ///
    /// The canonical side avoids `inf`, the last position, so it is a cyclic
    /// interval exactly when it is a contiguous run of bits.
    pub fn is_strictly_ordered(&self) -> bool {
        let shifted = self.part >> self.part.trailing_zeros();
        shifted & (shifted + 1) == 0
    }

    /// Forgets the movable mark `mark`, relabelling `s_{j}` to `s_{j-1}` for `j > i`.
    pub fn contract(&self, mark: Mark) -> Result<Contraction> {
        if mark.is_fixed() {
            return Err(Error::FixedMark(mark.to_string()));
        }
        let pos = self.host.position(mark)?;
        let bit = 1u64 << pos;
        let holder = if self.part & bit != 0 { self.part } else { self.other_mask() };
        if holder.count_ones() <= 2 {
            return Ok(Contraction::Collapses);
        }
        let target = MarkedSet::new(self.host.n - 1)?;
        let low = self.part & (bit - 1);
        let high = (self.part >> (pos + 1)) << pos;
        Ok(Contraction::Stable(StablePartition::from_mask(target, low | high)?))
    }

    /// Intersections of both sides with `subset`, canonical side first.
    pub fn restrict(&self, subset: u64) -> (u64, u64) {
        (self.part & subset, self.other_mask() & subset)
    }
}

impl fmt::Display for StablePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.host.format_mask(self.part), self.host.format_mask(self.other_mask()))
    }
}

/// JSON interchange form: `{"n": n, "part": ["0", "s1", ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionRepr {
    pub n: usize,
    pub part: Vec<String>,
}

impl From<StablePartition> for PartitionRepr {
    fn from(p: StablePartition) -> Self {
        PartitionRepr { n: p.host.n, part: p.part_marks().iter().map(|m| m.to_string()).collect() }
    }
}

impl TryFrom<PartitionRepr> for StablePartition {
    type Error = Error;

    fn try_from(repr: PartitionRepr) -> Result<Self> {
        let host = MarkedSet::new(repr.n)?;
        let marks = repr.part.iter().map(|s| s.parse::<Mark>()).collect::<Result<Vec<_>>>()?;
        let mask = host.mask_of(&marks)?;
        if mask.count_ones() as usize != marks.len() {
            return Err(Error::Parse(format!("repeated mark in {:?}", repr.part)));
        }
        StablePartition::from_mask(host, mask)
    }
}

/// Checks that a family of distinct partitions is pairwise compatible (`a = 3`).
pub fn is_good(family: &[StablePartition]) -> Result<bool> {
    for (idx, p) in family.iter().enumerate() {
        for q in &family[idx + 1..] {
            p.same_host(q)?;
            if p == q {
                return Err(Error::DuplicateMember(p.to_string()));
            }
        }
    }
    for (idx, p) in family.iter().enumerate() {
        for q in &family[idx + 1..] {
            if p.a_count(q)? != 3 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A nonempty good family; the combinatorial form of a nonempty boundary stratum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GoodFamily {
    members: Vec<StablePartition>,
}

impl GoodFamily {
    /// Validates and sorts `members` by canonical mask.
    pub fn new(mut members: Vec<StablePartition>) -> Result<Self> {
        let first =
            members.first().ok_or_else(|| Error::Precondition("a good family needs at least one member".into()))?;
        let host = first.host;
        if !is_good(&members)? {
            return Err(Error::NotGood(members.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")));
        }
        if members.len() > host.n {
            return Err(Error::NotGood(format!("{} members exceed the dimension bound {}", members.len(), host.n)));
        }
        members.sort();
        Ok(GoodFamily { members })
    }

    /// Trusted constructor for families produced by enumeration.
    pub(crate) fn from_sorted_unchecked(members: Vec<StablePartition>) -> Self {
        debug_assert!(!members.is_empty());
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        GoodFamily { members }
    }

    pub fn host(&self) -> MarkedSet {
        self.members[0].host
    }

    pub fn members(&self) -> &[StablePartition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &StablePartition) -> bool {
        self.members.binary_search(p).is_ok()
    }
}

impl<'de> Deserialize<'de> for GoodFamily {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<StablePartition>::deserialize(de)?;
        GoodFamily::new(members).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> MarkedSet {
        MarkedSet::new(n).unwrap()
    }

    fn p(n: usize, side: &[Mark]) -> StablePartition {
        StablePartition::new(set(n), side).unwrap()
    }

    use Mark::{Infinity as Inf, One, Zero, S};

    #[test]
    fn canonical_side_excludes_infinity() {
        let a = p(2, &[S(2), One, Inf]);
        let b = p(2, &[Zero, S(1)]);
        assert_eq!(a, b);
        assert_eq!(a.part_marks(), vec![Zero, S(1)]);
        assert_eq!(a.to_string(), "{0,s1}|{s2,1,inf}");
    }

    #[test]
    fn rejects_unstable_sides() {
        assert!(matches!(StablePartition::new(set(2), &[S(1)]), Err(Error::UnstablePartition { .. })));
        assert!(StablePartition::new(set(2), &[Zero, S(1), S(2), One]).is_err());
        assert!(matches!(MarkedSet::new(0), Err(Error::InvalidMarkCount { .. })));
        assert!(matches!(set(2).position(S(3)), Err(Error::UnknownMark(_))));
    }

    #[test]
    fn a_count_examples() {
        let sigma = p(2, &[Zero, S(1)]);
        let tau3 = p(2, &[Zero, S(1), S(2)]);
        let tau4 = p(2, &[S(1), S(2)]);
        assert_eq!(sigma.a_count(&sigma).unwrap(), 2);
        assert_eq!(sigma.a_count(&tau3).unwrap(), 3);
        assert_eq!(sigma.a_count(&tau4).unwrap(), 4);
        assert!(sigma.divisors_intersect(&tau3).unwrap());
        assert!(!sigma.divisors_intersect(&tau4).unwrap());
        assert!(sigma.divisors_intersect(&sigma).unwrap());
    }

    #[test]
    fn host_mismatch_is_reported() {
        let a = p(2, &[Zero, S(1)]);
        let b = p(3, &[Zero, S(1)]);
        assert_eq!(a.a_count(&b), Err(Error::HostMismatch { left: 2, right: 3 }));
        assert!(is_good(&[a, b]).is_err());
    }

    #[test]
    fn goodness_examples() {
        let sigma = p(2, &[Zero, S(1)]);
        assert!(is_good(&[sigma, p(2, &[Zero, S(1), S(2)])]).unwrap());
        assert!(!is_good(&[sigma, p(2, &[S(1), S(2)])]).unwrap());
        assert!(is_good(&[sigma]).unwrap());
        assert!(matches!(is_good(&[sigma, sigma]), Err(Error::DuplicateMember(_))));
    }

    #[test]
    fn strict_order_examples() {
        // four movable marks: {s1,s2,s3} is an arc, {s1,s3,s4} is not
        assert!(p(4, &[S(1), S(2), S(3)]).is_strictly_ordered());
        assert!(!p(4, &[S(1), S(3), S(4)]).is_strictly_ordered());
        assert!(p(4, &[S(4), One]).is_strictly_ordered());
        // {inf, 0} wraps around the cycle
        assert!(p(4, &[Inf, Zero]).is_strictly_ordered());
        assert!(!p(4, &[Inf, S(2)]).is_strictly_ordered());
    }

    #[test]
    fn contraction_examples() {
        let ear = p(2, &[S(1), S(2)]);
        assert_eq!(ear.contract(S(2)).unwrap(), Contraction::Collapses);
        let big = p(2, &[Zero, S(1), S(2)]);
        assert_eq!(big.contract(S(2)).unwrap(), Contraction::Stable(p(1, &[Zero, S(1)])));
        let small = p(2, &[Zero, S(1)]);
        assert_eq!(small.contract(S(1)).unwrap(), Contraction::Collapses);
        assert!(matches!(small.contract(One), Err(Error::FixedMark(_))));
        assert!(matches!(small.contract(S(5)), Err(Error::UnknownMark(_))));
    }

    #[test]
    fn contraction_relabels_higher_marks() {
        let sigma = p(3, &[S(2), S(3), One]);
        assert_eq!(sigma.contract(S(1)).unwrap(), Contraction::Stable(p(2, &[S(1), S(2), One])));
    }

    #[test]
    fn json_interchange() {
        let sigma = p(2, &[S(2), One, Inf]);
        let json = serde_json::to_string(&sigma).unwrap();
        assert_eq!(json, r#"{"n":2,"part":["0","s1"]}"#);
        let back: StablePartition = serde_json::from_str(r#"{"n":2,"part":["s2","1","inf"]}"#).unwrap();
        assert_eq!(back, sigma);
        assert!(serde_json::from_str::<StablePartition>(r#"{"n":2,"part":["s1"]}"#).is_err());
    }

    #[test]
    fn good_family_validation() {
        let a = p(2, &[Zero, S(1)]);
        let b = p(2, &[Zero, S(1), S(2)]);
        let fam = GoodFamily::new(vec![b, a]).unwrap();
        assert_eq!(fam.members(), &[a, b]);
        assert!(GoodFamily::new(vec![a, p(2, &[S(1), S(2)])]).is_err());
        assert!(GoodFamily::new(vec![]).is_err());
    }
}
