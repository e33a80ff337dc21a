//! The singular divisor of `Ω_S(a) = ∧ dβ_i / (β_i - a_i)` and the check
//! that it avoids every face of `B_n`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cyclic::{Mark, MarkedSet, StablePartition};
use crate::error::{Error, Result};
use crate::stasheff::{self, Face};

/// The singularity vector `(a_{s1}, ..., a_{sn})`.
///
/// Membership in `{0, 1}` is exact unless a nonzero `tolerance` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AVector {
    values: Vec<Complex64>,
    #[serde(default)]
    tolerance: f64,
}

impl AVector {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(values, 0.0)
    }

    pub fn with_tolerance(values: Vec<Complex64>, tolerance: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("a-vector must have at least one entry".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Precondition(format!("a-vector entry {v} is not finite")));
        }
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(Error::Precondition(format!("tolerance {tolerance} must be >= 0")));
        }
        Ok(AVector { values, tolerance })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn host(&self) -> Result<MarkedSet> {
        MarkedSet::new(self.n())
    }

    pub fn is_zero_at(&self, i: usize) -> bool {
        self.values[i - 1].norm() <= self.tolerance
    }

    pub fn is_one_at(&self, i: usize) -> bool {
        (self.values[i - 1] - 1.0).norm() <= self.tolerance
    }

    /// `a_{s1} != 0`.
    pub fn first_nonzero(&self) -> bool {
        !self.is_zero_at(1)
    }

    /// `a_{sn} != 1`.
    pub fn last_not_one(&self) -> bool {
        !self.is_one_at(self.n())
    }

    pub fn is_convergent(&self) -> bool {
        self.first_nonzero() && self.last_not_one()
    }
}

/// The sets `S(0)`, `S(1)`, `S(0,1)`, `S(inf)` as masks over the marked set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaSets {
    pub zero: u64,
    pub one: u64,
    pub zero_one: u64,
    pub infinity: u64,
}

pub fn alpha_sets(a: &AVector) -> Result<AlphaSets> {
    let host = a.host()?;
    let mut zero = 0;
    let mut one = 0;
    for i in 1..=a.n() {
        let bit = host.bit(Mark::S(i))?;
        if a.is_zero_at(i) {
            zero |= bit;
        }
        if a.is_one_at(i) {
            one |= bit;
        }
    }
    let infinity = (1..=a.n()).fold(0, |m, i| m | 1 << i);
    Ok(AlphaSets { zero, one, zero_one: zero | one, infinity })
}

/// The fixed mark a boundary component is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlphaType {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinity,
}

impl AlphaType {
    fn mark(self) -> Mark {
        match self {
            AlphaType::Zero => Mark::Zero,
            AlphaType::One => Mark::One,
            AlphaType::Infinity => Mark::Infinity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub partition: StablePartition,
    pub alpha: AlphaType,
}

/// The fiber of the forgetful map to `{0, s_i, 1, inf}` over `value`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiberComponent {
    pub index: usize,
    pub value: Complex64,
}

/// Irreducible components of the singular divisor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularLocus {
    pub n: usize,
    pub boundary: Vec<BoundaryComponent>,
    pub nonboundary: Vec<FiberComponent>,
}

impl SingularLocus {
    pub fn contains_partition(&self, p: &StablePartition) -> Option<AlphaType> {
        self.boundary.iter().find(|c| &c.partition == p).map(|c| c.alpha)
    }
}

/// Iterates the nonempty submasks of `mask`.
fn nonempty_submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        sub = (sub - 1) & mask;
        done = sub == 0;
        Some(cur)
    })
}

/// Builds the component list: type-α boundary divisors plus the fibers over `a_i ∉ {0, 1}`.
pub fn build_a(a: &AVector) -> Result<SingularLocus> {
    let host = a.host()?;
    let sets = alpha_sets(a)?;
    let mut boundary = Vec::new();
    for (alpha, allowed) in
        [(AlphaType::Zero, sets.zero), (AlphaType::One, sets.one), (AlphaType::Infinity, sets.infinity)]
    {
        let anchor = host.bit(alpha.mark())?;
        for t in nonempty_submasks(allowed) {
            if let Ok(partition) = StablePartition::from_mask(host, anchor | t) {
                boundary.push(BoundaryComponent { partition, alpha });
            }
        }
    }
    boundary.sort();
    let nonboundary = (1..=a.n())
        .filter(|&i| !a.is_zero_at(i) && !a.is_one_at(i))
        .map(|i| FiberComponent { index: i, value: a.values()[i - 1] })
        .collect();
    Ok(SingularLocus { n: a.n(), boundary, nonboundary })
}

/// How a fiber `π_i^{-1}(a)` meets a boundary divisor `D(σ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Intersection {
    Empty,
    /// `π_i^{-1}(a) ∩ D(σ) ≅ fiber over M_{0, big ∪ {t}} × M_{0, small ∪ {u}}`.
    Product {
        big_side: Vec<Mark>,
        t_mark: Mark,
    },
}

/// Classifies `π_i^{-1}(a) ∩ D(σ)` for `a ∉ {0, 1}`.
///
/// When all four of `{0, s_i, 1, inf}` lie on one side, `t` is taken to be
/// the least element (in cyclic order from `0`) of the other side.
pub fn classify_intersection(i: usize, a: Complex64, sigma: &StablePartition) -> Result<Intersection> {
    if a == Complex64::new(0.0, 0.0) || a == Complex64::new(1.0, 0.0) {
        return Err(Error::SpecialValue(a.to_string()));
    }
    let host = sigma.host();
    let four = host.four_point_mask(i)?;
    let (part, _) = sigma.restrict(four);
    if part.count_ones() == 2 {
        return Ok(Intersection::Empty);
    }
    let (big, small) = if part.count_ones() >= 3 {
        (sigma.part_mask(), sigma.other_mask())
    } else {
        (sigma.other_mask(), sigma.part_mask())
    };
    let inside = big & four;
    let t_bit = if inside == four { small & small.wrapping_neg() } else { four & !inside };
    Ok(Intersection::Product { big_side: host.marks_of(big), t_mark: host.mark_at(t_bit.trailing_zeros() as usize) })
}

/// Which component of the singular divisor contains a face.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationSource {
    Boundary { partition: StablePartition, alpha: AlphaType },
    Fiber { index: usize, value: Complex64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub face: Face,
    pub source: ViolationSource,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvoidanceReport {
    pub n: usize,
    pub a: Vec<Complex64>,
    pub convergent: bool,
    pub boundary_components: Vec<BoundaryComponent>,
    pub nonboundary: Vec<FiberComponent>,
    pub faces_checked: usize,
    pub violations: Vec<Violation>,
}

impl AvoidanceReport {
    /// True when the hypotheses hold and nothing was found.
    pub fn theorem_holds(&self) -> bool {
        !self.convergent || self.violations.is_empty()
    }
}

/// Scans every face of `B_n` for containment in a component of the singular divisor.
///
/// A face lies in `D(σ)` exactly when `σ` belongs to its family. Fibers are
/// checked on vertices: a face inside a fiber would contain a vertex inside it.
pub fn check_avoidance(a: &AVector) -> Result<AvoidanceReport> {
    let n = a.n();
    let locus = build_a(a)?;
    let mut faces_checked = 0;
    let mut violations = Vec::new();
    for k in 1..=n {
        for face in stasheff::faces(n, k)? {
            faces_checked += 1;
            for c in &locus.boundary {
                if face.family().contains(&c.partition) {
                    violations.push(Violation {
                        face: face.clone(),
                        source: ViolationSource::Boundary { partition: c.partition, alpha: c.alpha },
                    });
                }
            }
            if k == n {
                for fiber in &locus.nonboundary {
                    let point = stasheff::vertex_image(&face, fiber.index)?.value();
                    if fiber.value == Complex64::new(point, 0.0) {
                        violations.push(Violation {
                            face: face.clone(),
                            source: ViolationSource::Fiber { index: fiber.index, value: fiber.value },
                        });
                    }
                }
            }
        }
    }
    Ok(AvoidanceReport {
        n,
        a: a.values().to_vec(),
        convergent: a.is_convergent(),
        boundary_components: locus.boundary,
        nonboundary: locus.nonboundary,
        faces_checked,
        violations,
    })
}

/// Random singularity vector with `a_{s1} != 0` and `a_{sn} != 1`.
///
/// Entries are exactly 0 or 1 with probability 1/4 each where allowed, otherwise
/// a complex number drawn from the square `[-2, 3] x [-2, 2]`.
pub fn random_convergent_avector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<AVector> {
    let values = (1..=n)
        .map(|i| loop {
            let v = match rng.random_range(0..4) {
                0 => Complex64::new(0.0, 0.0),
                1 => Complex64::new(1.0, 0.0),
                _ => Complex64::new(rng.random_range(-2.0..3.0), rng.random_range(-2.0..2.0)),
            };
            let bad_first = i == 1 && v == Complex64::new(0.0, 0.0);
            let bad_last = i == n && v == Complex64::new(1.0, 0.0);
            if !bad_first && !bad_last {
                break v;
            }
        })
        .collect();
    AVector::new(values)
}
