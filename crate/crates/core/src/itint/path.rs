//! Piecewise-linear simple paths from 0 to 1 in the complex plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default minimum distance between the path and a singularity off `{0, 1}`.
pub const DEFAULT_CLEARANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    waypoints: Vec<Complex64>,
    min_clearance: f64,
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let t = ((p - a).re * d.re + (p - a).im * d.im) / d.norm_sqr();
    let t = t.clamp(0.0, 1.0);
    (a + d * t - p).norm()
}

/// Whether closed segments `[a, b]` and `[c, d]` share a point.
fn segments_touch(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let scale = (b - a).norm().max((d - c).norm());
    let eps = 1e-14 * scale * scale;
    let o1 = cross(b - a, c - a);
    let o2 = cross(b - a, d - a);
    let o3 = cross(d - c, a - c);
    let o4 = cross(d - c, b - c);
    if ((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) && ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps)) {
        return true;
    }
    let tiny = 1e-12 * scale;
    segment_distance(c, a, b) <= tiny
        || segment_distance(d, a, b) <= tiny
        || segment_distance(a, c, d) <= tiny
        || segment_distance(b, c, d) <= tiny
}

impl PathSpec {
    /// Validates endpoints, distinct consecutive waypoints and simplicity.
    pub fn new(waypoints: Vec<Complex64>, min_clearance: f64) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::InvalidPath("need at least two waypoints".into()));
        }
        if waypoints[0] != Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidPath(format!("path starts at {} instead of 0", waypoints[0])));
        }
        if *waypoints.last().unwrap() != Complex64::new(1.0, 0.0) {
            return Err(Error::InvalidPath(format!("path ends at {} instead of 1", waypoints.last().unwrap())));
        }
        if let Some(w) = waypoints.iter().find(|w| !w.is_finite()) {
            return Err(Error::InvalidPath(format!("waypoint {w} is not finite")));
        }
        if min_clearance.is_nan() || min_clearance <= 0.0 {
            return Err(Error::InvalidPath(format!("clearance {min_clearance} must be positive")));
        }
        if let Some(i) = (1..waypoints.len()).find(|&i| waypoints[i] == waypoints[i - 1]) {
            return Err(Error::InvalidPath(format!("waypoints {} and {} coincide", i - 1, i)));
        }
        let segs: Vec<(Complex64, Complex64)> = waypoints.windows(2).map(|w| (w[0], w[1])).collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (a, b) = segs[i];
                let (c, d) = segs[j];
                if j == i + 1 {
                    // consecutive segments may only share the joint; fold-backs overlap
                    let back = cross(b - a, d - c).abs() <= 1e-14 * (b - a).norm() * (d - c).norm()
                        && ((b - a).re * (d - c).re + (b - a).im * (d - c).im) < 0.0;
                    if back {
                        return Err(Error::InvalidPath(format!("segments {i} and {j} fold back")));
                    }
                } else if segments_touch(a, b, c, d) {
                    return Err(Error::InvalidPath(format!("segments {i} and {j} intersect")));
                }
            }
        }
        Ok(PathSpec { waypoints, min_clearance })
    }

    /// The straight segment from 0 to 1.
    pub fn straight() -> Self {
        PathSpec {
            waypoints: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            min_clearance: DEFAULT_CLEARANCE,
        }
    }

    /// `0 → via → 1`.
    pub fn through(via: Complex64) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0), via, Complex64::new(1.0, 0.0)], DEFAULT_CLEARANCE)
    }

    pub fn waypoints(&self) -> &[Complex64] {
        &self.waypoints
    }

    pub fn min_clearance(&self) -> f64 {
        self.min_clearance
    }

    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.waypoints.windows(2).map(|w| (w[0], w[1]))
    }

    /// Same path with an extra waypoint inserted at parameter `frac` of segment `seg`.
    pub fn subdivide(&self, seg: usize, frac: f64) -> Result<Self> {
        let (a, b) = self.segments().nth(seg).ok_or_else(|| Error::InvalidPath(format!("no segment {seg}")))?;
        let mut w = self.waypoints.clone();
        w.insert(seg + 1, a + (b - a) * frac);
        Self::new(w, self.min_clearance)
    }

    /// Distance from `point` to the path.
    pub fn distance_to(&self, point: Complex64) -> f64 {
        self.segments().map(|(a, b)| segment_distance(point, a, b)).fold(f64::INFINITY, f64::min)
    }

    /// Checks `point ∉ γ((0,1))`: 0 and 1 are allowed (they are the endpoints
    /// of a simple path); any other point must keep the clearance.
    pub fn check_clearance(&self, point: Complex64) -> Result<()> {
        if point == Complex64::new(0.0, 0.0) || point == Complex64::new(1.0, 0.0) {
            return Ok(());
        }
        let distance = self.distance_to(point);
        if distance <= self.min_clearance {
            return Err(Error::Clearance { point: point.to_string(), distance, clearance: self.min_clearance });
        }
        Ok(())
    }

    /// Total Euclidean length.
    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| (b - a).norm()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn straight_and_detour_paths_validate() {
        assert_eq!(PathSpec::straight().waypoints().len(), 2);
        assert!(PathSpec::through(c(0.5, 0.2)).is_ok());
        assert!(PathSpec::new(vec![c(0.0, 0.0), c(0.0, 1.0), c(1.0, 1.0), c(1.0, 0.0)], 1e-9).is_ok());
    }

    #[test]
    fn rejects_bad_endpoints_and_repeats() {
        assert!(PathSpec::new(vec![c(0.1, 0.0), c(1.0, 0.0)], 1e-9).is_err());
        assert!(PathSpec::new(vec![c(0.0, 0.0), c(0.9, 0.0)], 1e-9).is_err());
        assert!(PathSpec::new(vec![c(0.0, 0.0), c(0.5, 0.5), c(0.5, 0.5), c(1.0, 0.0)], 1e-9).is_err());
        assert!(PathSpec::new(vec![c(0.0, 0.0), c(1.0, 0.0)], 0.0).is_err());
    }

    #[test]
    fn rejects_self_intersection() {
        // bow-tie: 0 → 1+i → 1-... crosses the first segment
        let w = vec![c(0.0, 0.0), c(2.0, 1.0), c(2.0, -1.0), c(0.5, 0.5), c(1.0, 0.0)];
        assert!(PathSpec::new(w, 1e-9).is_err());
        // fold back along the same line
        let w = vec![c(0.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)];
        assert!(PathSpec::new(w, 1e-9).is_err());
    }

    #[test]
    fn clearance() {
        let p = PathSpec::straight();
        assert!(p.check_clearance(c(0.0, 0.0)).is_ok());
        assert!(p.check_clearance(c(1.0, 0.0)).is_ok());
        assert!(p.check_clearance(c(2.0, 0.0)).is_ok());
        assert!(matches!(p.check_clearance(c(0.5, 0.0)), Err(Error::Clearance { .. })));
        assert!((p.distance_to(c(0.5, 0.3)) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn subdivision_keeps_geometry() {
        let p = PathSpec::through(c(0.5, 0.2)).unwrap().subdivide(1, 0.25).unwrap();
        assert_eq!(p.waypoints().len(), 4);
        assert!((p.length() - PathSpec::through(c(0.5, 0.2)).unwrap().length()).abs() < 1e-15);
    }
}
