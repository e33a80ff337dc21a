//! Iterated integrals `∫_γ dt/(t - a_1) ∘ ... ∘ dt/(t - a_n)` along a
//! piecewise-linear path.
//!
//! The partial integrals `F_k(t) = ∫_{γ_t} ω_1 ∘ ... ∘ ω_k` satisfy
//! `F_k' = F_{k-1} f_k` with `F_0 = 1`, so the whole vector is marched
//! forward panel by panel. On a panel every `F_k` is interpolated on
//! Gauss–Legendre nodes and integrated with the indefinite-integration
//! matrix; the panel width adapts by comparing one panel against two halves.

use num_complex::Complex64;
use serde::Serialize;

use super::{GaussLegendre, PathSpec};
use crate::divisor::AVector;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_WEIGHT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub tol: f64,
    /// Largest accepted weight `n`; higher weights cost panels^n-ish effort.
    pub max_weight: usize,
    /// Budget on panel attempts (accepted or rejected).
    pub max_panels: usize,
    /// Gauss–Legendre nodes per panel.
    pub nodes: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { tol: 1e-8, max_weight: DEFAULT_MAX_WEIGHT, max_panels: 200_000, nodes: 16 }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        QuadOptions { tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadValue {
    pub value: Complex64,
    /// Sum of the accepted panel discrepancies on the last component.
    pub est_error: f64,
    pub panels: usize,
}

/// One linear segment `p0 → p1` with the offsets `p0 - a_k`, `p1 - a_k`.
struct Segment {
    d: Complex64,
    from_start: Vec<Complex64>,
    from_end: Vec<Complex64>,
}

impl Segment {
    fn new(p0: Complex64, p1: Complex64, a: &[Complex64]) -> Self {
        Segment {
            d: p1 - p0,
            from_start: a.iter().map(|&ak| p0 - ak).collect(),
            from_end: a.iter().map(|&ak| p1 - ak).collect(),
        }
    }

    /// `γ(u) - a_k` at `u = u0 + s`, measured from the nearer endpoint so
    /// that `1 - u` keeps full relative precision near `u = 1`.
    fn offset(&self, k: usize, u0: f64, s: f64) -> Complex64 {
        if u0 + s <= 0.5 {
            self.from_start[k] + self.d * (u0 + s)
        } else {
            self.from_end[k] - self.d * ((1.0 - u0) - s)
        }
    }
}

struct Marcher<'a> {
    gl: &'a GaussLegendre,
    n: usize,
}

impl Marcher<'_> {
    /// Advances the state `F_0..F_n` from `u0` to `u0 + step`.
    fn advance(&self, seg: &Segment, state: &[Complex64], u0: f64, step: f64) -> Vec<Complex64> {
        let m = self.gl.len();
        let half = 0.5 * step;
        let mut out = Vec::with_capacity(self.n + 1);
        out.push(Complex64::new(1.0, 0.0));
        let mut cur = vec![Complex64::new(1.0, 0.0); m];
        let mut g = vec![Complex64::new(0.0, 0.0); m];
        for (k, prev) in state.iter().enumerate().take(self.n + 1).skip(1) {
            for (j, x) in self.gl.nodes.iter().enumerate() {
                let s = half * (x + 1.0);
                g[j] = cur[j] * seg.d / seg.offset(k - 1, u0, s);
            }
            let total: Complex64 = self.gl.weights.iter().zip(&g).map(|(w, gj)| gj * *w).sum();
            out.push(prev + total * half);
            if k < self.n {
                for (j, row) in self.gl.antiderivative.iter().enumerate() {
                    let acc: Complex64 = row.iter().zip(&g).map(|(w, gl)| gl * *w).sum();
                    cur[j] = state[k] + acc * half;
                }
            }
        }
        out
    }
}

fn check_preconditions(a: &AVector, path: &PathSpec, opts: &QuadOptions) -> Result<()> {
    let n = a.n();
    if n > opts.max_weight {
        return Err(Error::WeightTooLarge { n, max: opts.max_weight });
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::Precondition(format!("tolerance {} must be positive", opts.tol)));
    }
    if opts.nodes < 2 {
        return Err(Error::Precondition("need at least two nodes per panel".into()));
    }
    if !a.first_nonzero() {
        return Err(Error::ConvergenceFlag("a_1 = 0, the integral diverges at t = 0".into()));
    }
    if !a.last_not_one() {
        return Err(Error::ConvergenceFlag(format!("a_{n} = 1, the integral diverges at t = 1")));
    }
    for &ak in a.values() {
        path.check_clearance(ak)?;
    }
    Ok(())
}

/// Evaluates `∫_γ dt/(t - a_1) ∘ ... ∘ dt/(t - a_n)`, `a_1` innermost.
pub fn iterated_integral(a: &AVector, path: &PathSpec, opts: &QuadOptions) -> Result<QuadValue> {
    check_preconditions(a, path, opts)?;
    let n = a.n();
    let gl = GaussLegendre::new(opts.nodes);
    let marcher = Marcher { gl: &gl, n };
    let segments: Vec<Segment> = path.segments().map(|(p0, p1)| Segment::new(p0, p1, a.values())).collect();
    let nseg = segments.len() as f64;

    let mut state = vec![Complex64::new(0.0, 0.0); n + 1];
    state[0] = Complex64::new(1.0, 0.0);
    let mut attempts = 0usize;
    let mut accepted = 0usize;
    let mut est_error = 0.0;

    for (si, seg) in segments.iter().enumerate() {
        let last_segment = si + 1 == segments.len();
        let mut u0 = 0.0f64;
        let mut h = 0.125f64;
        while u0 < 1.0 {
            attempts += 1;
            if attempts > opts.max_panels {
                return Err(Error::PanelBudget(opts.max_panels));
            }
            let remaining = 1.0 - u0;
            let ends = h >= remaining;
            let step = if ends { remaining } else { h };
            let final_panel = last_segment && ends;

            let coarse = marcher.advance(seg, &state, u0, step);
            let mid = marcher.advance(seg, &state, u0, 0.5 * step);
            let fine = marcher.advance(seg, &mid, u0 + 0.5 * step, 0.5 * step);

            let err_last = (coarse[n] - fine[n]).norm();
            let (err, budget) = if final_panel {
                // inner components may blow up logarithmically at t = 1; only
                // the outermost one is needed there
                (err_last, 0.25 * opts.tol)
            } else {
                let inner = (1..n).map(|k| (coarse[k] - fine[k]).norm() / fine[k].norm().max(1.0)).fold(0.0, f64::max);
                (err_last.max(inner), 0.5 * opts.tol * step / nseg)
            };
            if !fine.iter().all(|v| v.is_finite()) && !final_panel {
                return Err(Error::PanelBudget(attempts));
            }
            if err <= budget {
                state = fine;
                est_error += err_last;
                accepted += 2;
                u0 = if ends { 1.0 } else { u0 + step };
                if err <= 0.01 * budget {
                    h = 2.0 * step;
                } else {
                    h = step;
                }
            } else {
                if step < 1e-15 {
                    return Err(Error::PanelBudget(attempts));
                }
                h = 0.5 * step;
            }
        }
    }
    Ok(QuadValue { value: state[n], est_error, panels: accepted })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomotopyReport {
    pub agree: bool,
    pub delta: Complex64,
    pub first: QuadValue,
    pub second: QuadValue,
}

/// Compares the integral along two paths; `agree` iff `|I(p1) - I(p2)| <= tol`.
pub fn homotopy_check(a: &AVector, p1: &PathSpec, p2: &PathSpec, opts: &QuadOptions) -> Result<HomotopyReport> {
    let first = iterated_integral(a, p1, opts)?;
    let second = iterated_integral(a, p2, opts)?;
    let delta = first.value - second.value;
    Ok(HomotopyReport { agree: delta.norm() <= opts.tol, delta, first, second })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn weight_one_closed_form() {
        let cc = c(-0.7, 0.4);
        let a = AVector::new(vec![cc]).unwrap();
        let v = iterated_integral(&a, &PathSpec::straight(), &QuadOptions::with_tol(1e-12)).unwrap();
        let expect = ((1.0 - cc) / (-cc)).ln();
        assert!((v.value - expect).norm() < 1e-12);
    }

    #[test]
    fn zeta_two_sign() {
        let a = AVector::from_real(&[1.0, 0.0]).unwrap();
        let v = iterated_integral(&a, &PathSpec::straight(), &QuadOptions::default()).unwrap();
        assert_abs_diff_eq!(v.value.re, -PI * PI / 6.0, epsilon = 1e-8);
        assert!(v.value.im.abs() < 1e-12);
    }

    #[test]
    fn residue_around_pole() {
        let a = AVector::from_real(&[0.4]).unwrap();
        let above = PathSpec::through(c(0.4, 0.3)).unwrap();
        let below = PathSpec::through(c(0.4, -0.3)).unwrap();
        let r = homotopy_check(&a, &above, &below, &QuadOptions::with_tol(1e-10)).unwrap();
        assert!(!r.agree);
        assert!((r.delta.norm() - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn preconditions() {
        let opts = QuadOptions::default();
        let straight = PathSpec::straight();
        let zero_first = AVector::from_real(&[0.0, 2.0]).unwrap();
        assert!(matches!(iterated_integral(&zero_first, &straight, &opts), Err(Error::ConvergenceFlag(_))));
        let one_last = AVector::from_real(&[2.0, 1.0]).unwrap();
        assert!(matches!(iterated_integral(&one_last, &straight, &opts), Err(Error::ConvergenceFlag(_))));
        let on_path = AVector::from_real(&[0.5, 0.0]).unwrap();
        assert!(matches!(iterated_integral(&on_path, &straight, &opts), Err(Error::Clearance { .. })));
        let heavy = AVector::from_real(&[2.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(iterated_integral(&heavy, &straight, &opts), Err(Error::WeightTooLarge { .. })));
        let tiny = QuadOptions { max_panels: 3, ..opts };
        let a = AVector::from_real(&[1.0, 0.0]).unwrap();
        assert!(matches!(iterated_integral(&a, &straight, &tiny), Err(Error::PanelBudget(_))));
    }
}
