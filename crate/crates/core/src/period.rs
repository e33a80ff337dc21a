//! The period matrix of the dilogarithm and its cycle pairings.
//!
//! `p_ij = <e_i, b_j>` with rows indexed by the de Rham classes `e_i` and
//! columns by the Betti cycles `b_j`:
//!
//! ```text
//! [ 1          0            0      ]
//! [ -Li1(z)    2πi          0      ]
//! [ -Li2(z)    2πi log z    (2πi)² ]
//! ```
//!
//! At `z = 1` the middle class and cycle disappear and the matrix is 2×2.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::divisor::AVector;
use crate::error::{Error, Result};
use crate::itint::{iterated_integral, mzv, polylog_series, GaussLegendre, PathSpec, PolylogIndex, QuadOptions};

/// Rank of the relative Betti homology for `z ∉ {0, 1}`.
pub const RANK_GENERIC: usize = 3;
/// Rank at `z = 1`.
pub const RANK_AT_ONE: usize = 2;

/// Below this modulus `Li2` is summed as a series, above it integrated.
const SERIES_RADIUS: f64 = 0.9;

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodMatrix {
    pub z: Complex64,
    /// `entries[i][j] = <e_{i+1}, b_{j+1}>` (restricted to the surviving labels at `z = 1`).
    pub entries: Vec<Vec<Complex64>>,
    pub est_errors: Vec<Vec<f64>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl PeriodMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    /// Product of the diagonal; the matrix is lower-triangular by construction.
    pub fn determinant(&self) -> Complex64 {
        (0..self.size()).map(|i| self.entries[i][i]).product()
    }

    fn generic(z: Complex64, li1: (Complex64, f64), li2: (Complex64, f64)) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        let tpi = two_pi_i();
        PeriodMatrix {
            z,
            entries: vec![
                vec![Complex64::new(1.0, 0.0), zero, zero],
                vec![-li1.0, tpi, zero],
                vec![-li2.0, tpi * z.ln(), tpi * tpi],
            ],
            est_errors: vec![vec![0.0; 3], vec![li1.1, 0.0, 0.0], vec![li2.1, 0.0, 0.0]],
            row_labels: labels("e", &[1, 2, 3]),
            col_labels: labels("b", &[1, 2, 3]),
        }
    }
}

fn labels(prefix: &str, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|i| format!("{prefix}{i}")).collect()
}

fn check_z(z: Complex64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::Precondition(format!("z = {z} is not finite")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::SpecialValue("z = 0".into()));
    }
    Ok(())
}

/// The period matrix at `z`. `path` is used for the `b1` column when given;
/// otherwise `Li1` is the principal `-log(1 - z)` and `Li2` is a series for
/// `|z| <= 0.9` and a straight-path integral beyond.
pub fn period_matrix(z: Complex64, path: Option<&PathSpec>, tol: f64) -> Result<PeriodMatrix> {
    check_z(z)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition(format!("tolerance {tol} must be positive")));
    }
    if z == Complex64::new(1.0, 0.0) {
        let zeta2 = mzv(&PolylogIndex::new(vec![2])?, tol)?;
        let zero = Complex64::new(0.0, 0.0);
        let tpi = two_pi_i();
        return Ok(PeriodMatrix {
            z,
            entries: vec![vec![Complex64::new(1.0, 0.0), zero], vec![-zeta2.value, tpi * tpi]],
            est_errors: vec![vec![0.0, 0.0], vec![zeta2.error_bound, 0.0]],
            row_labels: labels("e", &[1, 3]),
            col_labels: labels("b", &[1, 3]),
        });
    }
    if let Some(p) = path {
        let b1 = pairing_b1(z, p, tol)?;
        return Ok(PeriodMatrix::generic(z, (-b1.e2, b1.e2_error), (-b1.e3, b1.e3_error)));
    }
    let li1 = -(1.0 - z).ln();
    let li2 = if z.norm() <= SERIES_RADIUS {
        let s = polylog_series(&PolylogIndex::new(vec![2])?, &[z], tol, 10_000_000)?;
        (s.value, s.error_bound)
    } else {
        let b1 = pairing_b1(z, &PathSpec::straight(), tol)?;
        (-b1.e3, b1.e3_error)
    };
    Ok(PeriodMatrix::generic(z, (li1, 0.0), li2))
}

/// The `b1` column: `(<e1,b1>, <e2,b1>, <e3,b1>) = (1, -Li1(z), -Li2(z))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct B1Pairings {
    pub e1: Complex64,
    pub e2: Complex64,
    pub e3: Complex64,
    pub e2_error: f64,
    pub e3_error: f64,
}

/// Integrates `dt/(t - z^-1)` and `dt/(t - z^-1) ∘ dt/t` along `path`.
pub fn pairing_b1(z: Complex64, path: &PathSpec, tol: f64) -> Result<B1Pairings> {
    check_z(z)?;
    let c = z.inv();
    let opts = QuadOptions::with_tol(tol);
    let e2 = iterated_integral(&AVector::new(vec![c])?, path, &opts)?;
    let e3 = iterated_integral(&AVector::new(vec![c, Complex64::new(0.0, 0.0)])?, path, &opts)?;
    Ok(B1Pairings {
        e1: Complex64::new(1.0, 0.0),
        e2: e2.value,
        e3: e3.value,
        e2_error: e2.est_error,
        e3_error: e3.est_error,
    })
}

/// Largest admissible cycle radius around `z^-1`.
pub fn radius_limit(z: Complex64) -> f64 {
    let c = z.inv();
    c.norm().min((c - 1.0).norm()) / 4.0
}

/// Radius limit for the `b2` tube: [`radius_limit`], and the distance from
/// `z^-1` to the negative real axis.
pub fn tube_limit(z: Complex64) -> f64 {
    let c = z.inv();
    let to_cut = if c.re >= 0.0 { c.norm() } else { c.im.abs() };
    radius_limit(z).min(to_cut)
}

fn check_cycle(z: Complex64, eps: f64, grid: usize, limit: f64) -> Result<()> {
    check_z(z)?;
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::SpecialValue("z = 1 has no b2 or b3 cycle".into()));
    }
    if !(eps > 0.0 && eps < limit) {
        return Err(Error::RadiusTooLarge { eps, limit });
    }
    if grid < 64 {
        return Err(Error::Precondition(format!("grid {grid} must be at least 64")));
    }
    Ok(())
}

/// `(<e2,b2>, <e3,b2>)` over the tube `t1 = z^-1 + ε e^{2πiu}`,
/// `t2 = v + (1 - v) t1`.
///
/// The `e3` integrand pulls back to `2πi (1 - t1) / (v + (1 - v) t1) du dv`.
/// It is periodic in `u` (trapezoid, `grid` points) but not in `v`, where a
/// composite Gauss–Legendre rule is used.
///
/// The segment `[t1, 1]` must miss `t2 = 0`, so the circle has to stay off
/// the negative real axis as well; that tightens `ε` when `Re z^-1 < 0`.
pub fn pairing_b2(z: Complex64, eps: f64, grid: usize) -> Result<(Complex64, Complex64)> {
    check_cycle(z, eps, grid, tube_limit(z))?;
    let c = z.inv();
    let tpi = two_pi_i();
    let gl = GaussLegendre::new(16);
    let v_panels = 16;

    let mut e2 = Complex64::new(0.0, 0.0);
    let mut e3 = Complex64::new(0.0, 0.0);
    for j in 0..grid {
        let u = j as f64 / grid as f64;
        let rot = Complex64::from_polar(1.0, 2.0 * PI * u);
        let t1 = c + rot * eps;
        let dt1 = tpi * rot * eps;
        e2 += dt1 / (t1 - c);

        let mut inner = Complex64::new(0.0, 0.0);
        for p in 0..v_panels {
            let lo = p as f64 / v_panels as f64;
            let half = 0.5 / v_panels as f64;
            for (x, w) in gl.nodes.iter().zip(&gl.weights) {
                let v = lo + half * (x + 1.0);
                inner += (1.0 - t1) / (v + (1.0 - v) * t1) * (w * half);
            }
        }
        e3 += tpi * inner;
    }
    let n = grid as f64;
    Ok((e2 / n, e3 / n))
}

/// `<e3,b3>` over the torus `(z^-1 + ε e^{2πiu}, ε e^{2πiv})`.
///
/// `<e1,b3>` and `<e2,b3>` vanish: the torus meets neither the vertex nor
/// the line where those classes live.
pub fn pairing_b3(z: Complex64, eps: f64, grid: usize) -> Result<Complex64> {
    check_cycle(z, eps, grid, radius_limit(z))?;
    let c = z.inv();
    let tpi = two_pi_i();
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..grid {
        let ru = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / grid as f64);
        let t1 = c + ru * eps;
        let f1 = tpi * ru * eps / (t1 - c);
        for k in 0..grid {
            let rv = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / grid as f64);
            let t2 = rv * eps;
            sum += f1 * (tpi * rv * eps / t2);
        }
    }
    Ok(sum / (grid * grid) as f64)
}

/// Period matrices along a sequence `z_k → 1` and the 2×2 limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionJumpReport {
    pub steps: Vec<PeriodMatrix>,
    pub limit: PeriodMatrix,
}

pub fn dimension_jump_report(zs: &[Complex64], tol: f64) -> Result<DimensionJumpReport> {
    if let Some(z) = zs.iter().find(|z| **z == Complex64::new(1.0, 0.0)) {
        return Err(Error::SpecialValue(format!("sequence must avoid z = 1, got {z}")));
    }
    let steps = zs.iter().map(|&z| period_matrix(z, None, tol)).collect::<Result<Vec<_>>>()?;
    let limit = period_matrix(Complex64::new(1.0, 0.0), None, tol)?;
    Ok(DimensionJumpReport { steps, limit })
}
