//! Numerical multiple polylogarithms: nested series, the a-vector
//! correspondence and iterated integrals along piecewise-linear paths.

mod gauss;
mod path;
mod quad;
mod series;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::divisor::AVector;
use crate::error::{Error, Result};

pub use gauss::GaussLegendre;
pub use path::{segment_distance, PathSpec, DEFAULT_CLEARANCE};
pub use quad::{homotopy_check, iterated_integral, HomotopyReport, QuadOptions, QuadValue, DEFAULT_MAX_WEIGHT};
pub use series::{mzv, polylog_series, SeriesValue};

/// A multi-index `(n1, ..., nm)`.
///
/// The convergent shape needs `n_m >= 2`; `with_override` lifts that for
/// experiments with `|x_m| < 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "IndexRepr", into = "IndexRepr")]
pub struct PolylogIndex {
    indices: Vec<u32>,
    allow_divergent_shape: bool,
}

#[derive(Serialize, Deserialize)]
struct IndexRepr {
    indices: Vec<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_divergent_shape: bool,
}

impl TryFrom<IndexRepr> for PolylogIndex {
    type Error = Error;

    fn try_from(r: IndexRepr) -> Result<Self> {
        if r.allow_divergent_shape {
            Self::with_override(r.indices)
        } else {
            Self::new(r.indices)
        }
    }
}

impl From<PolylogIndex> for IndexRepr {
    fn from(i: PolylogIndex) -> Self {
        IndexRepr { indices: i.indices, allow_divergent_shape: i.allow_divergent_shape }
    }
}

impl PolylogIndex {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        let idx = Self::with_override(indices)?;
        if !idx.has_convergent_shape() {
            return Err(Error::Divergent(format!(
                "index {:?} has last entry < 2; use the override for |x_m| < 1",
                idx.indices
            )));
        }
        Ok(PolylogIndex { allow_divergent_shape: false, ..idx })
    }

    pub fn with_override(indices: Vec<u32>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Precondition("index must have at least one entry".into()));
        }
        if indices.contains(&0) {
            return Err(Error::Precondition(format!("index entries must be >= 1, got {indices:?}")));
        }
        Ok(PolylogIndex { indices, allow_divergent_shape: true })
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn depth(&self) -> usize {
        self.indices.len()
    }

    pub fn weight(&self) -> usize {
        self.indices.iter().map(|&n| n as usize).sum()
    }

    pub fn has_convergent_shape(&self) -> bool {
        *self.indices.last().unwrap() >= 2
    }

    pub fn allows_divergent_shape(&self) -> bool {
        self.allow_divergent_shape
    }
}

/// `Li_{n1..nm}(x1..xm) = (-1)^m ∫_0^1 dt/(t - a_1) ∘ ... ∘ dt/(t - a_n)` with
/// `a = ((x1⋯xm)^-1, 0^{n1-1}, (x2⋯xm)^-1, 0^{n2-1}, ..., xm^-1, 0^{nm-1})`.
///
/// Returns the a-vector and the sign `(-1)^m`.
pub fn avector_from_index(idx: &PolylogIndex, x: &[Complex64]) -> Result<(AVector, i8)> {
    let m = idx.depth();
    if x.len() != m {
        return Err(Error::LengthMismatch { expected: m, got: x.len() });
    }
    if let Some(i) = x.iter().position(|v| *v == Complex64::new(0.0, 0.0)) {
        return Err(Error::Precondition(format!("x{} must be nonzero", i + 1)));
    }
    let mut values = Vec::with_capacity(idx.weight());
    for (j, &n) in idx.indices().iter().enumerate() {
        let prod: Complex64 = x[j..].iter().product();
        values.push(prod.inv());
        values.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), n as usize - 1));
    }
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    Ok((AVector::new(values)?, sign))
}
