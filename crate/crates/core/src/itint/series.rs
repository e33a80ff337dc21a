//! Nested power series for multiple polylogarithms and multiple zeta values.

use num_complex::Complex64;
use serde::Serialize;

use super::PolylogIndex;
use crate::error::{Error, Result};

/// Compensated (Kahan) accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: Complex64,
    carry: Complex64,
}

impl KahanSum {
    fn add(&mut self, x: Complex64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// A series value with a rigorous bound on the truncated tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub error_bound: f64,
    pub terms: usize,
}

/// Bound on `Σ_{k>N} r^k (1 + ln k)^p / k^s`, or `None` if not yet valid at this `N`.
fn tail_bound(big_n: usize, r: f64, s: u32, p: usize) -> Option<f64> {
    let nf = big_n as f64;
    let log_term = |k: f64| 1.0 + k.ln();
    if r < 1.0 {
        let q = r * (1.0 + 1.0 / (nf + 1.0)).powi(p as i32);
        if q >= 1.0 {
            return None;
        }
        let k = nf + 1.0;
        let first = r.powf(k) * log_term(k).powi(p as i32) / k.powi(s as i32);
        return Some(first / (1.0 - q));
    }
    if s < 2 {
        return None;
    }
    let sf = s as f64;
    let l = log_term(nf);
    if sf * l < p as f64 {
        return None;
    }
    // I_q = L^q N^{1-s}/(s-1) + q/(s-1) I_{q-1}, integral of L^q t^{-s} over [N, ∞)
    let base = nf.powf(1.0 - sf) / (sf - 1.0);
    let mut integral = base;
    for q in 1..=p {
        integral = l.powi(q as i32) * base + q as f64 / (sf - 1.0) * integral;
    }
    Some(integral)
}

/// Evaluates `Σ_{0<k1<...<km} x1^k1 ... xm^km / (k1^n1 ... km^nm)`.
///
/// Stops once the tail bound drops below `tol`. Requires `|x_i| <= 1`, and
/// `|x_m| < 1` whenever the last index is 1.
pub fn polylog_series(idx: &PolylogIndex, x: &[Complex64], tol: f64, max_terms: usize) -> Result<SeriesValue> {
    let m = idx.depth();
    if x.len() != m {
        return Err(Error::LengthMismatch { expected: m, got: x.len() });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition(format!("tolerance {tol} must be positive")));
    }
    if let Some(bad) = x.iter().find(|v| !v.is_finite() || v.norm() > 1.0 + 1e-15) {
        return Err(Error::Divergent(format!("argument {bad} lies outside the unit disk")));
    }
    let last = idx.indices()[m - 1];
    let r = x[m - 1].norm().min(1.0);
    if last < 2 && r >= 1.0 {
        return Err(Error::Divergent(format!("last index 1 with |x_m| = {r}")));
    }

    let mut partial = vec![KahanSum::default(); m];
    let mut powers = vec![Complex64::new(1.0, 0.0); m];
    let check_every = 16;
    let mut bound = f64::INFINITY;
    let mut k = 0usize;
    while k < max_terms {
        k += 1;
        let kf = k as f64;
        for p in powers.iter_mut().zip(x) {
            *p.0 *= p.1;
        }
        for j in (0..m).rev() {
            let inner = if j == 0 { Complex64::new(1.0, 0.0) } else { partial[j - 1].sum };
            let term = inner * powers[j] / kf.powi(idx.indices()[j] as i32);
            partial[j].add(term);
        }
        if k.is_multiple_of(check_every) || k == max_terms {
            if let Some(b) = tail_bound(k, r, last, m - 1) {
                bound = b;
                if bound <= tol {
                    break;
                }
            }
        }
    }
    if bound > tol {
        return Err(Error::TermBudget { tol, max_terms, bound });
    }
    Ok(SeriesValue { value: partial[m - 1].sum, error_bound: bound, terms: k })
}

/// Turns a word in the letters `ω1 = dt/(1-t)` (`true`) and `ω0 = dt/t`
/// (`false`) that starts with `ω1` into the index `(n1, ..., nm)` with
/// `∫_0^y word = Li_{n1..nm}(1, ..., 1, y)`.
fn word_to_index(word: &[bool]) -> Vec<u32> {
    debug_assert!(word.first() == Some(&true));
    let mut out: Vec<u32> = Vec::new();
    for &letter in word {
        if letter {
            out.push(1);
        } else {
            *out.last_mut().expect("word starts with ω1") += 1;
        }
    }
    out
}

/// `∫_0^{1/2}` of a word starting with `ω1`, or 1 for the empty word.
fn half_integral(word: &[bool], tol: f64, max_terms: usize) -> Result<SeriesValue> {
    if word.is_empty() {
        return Ok(SeriesValue { value: Complex64::new(1.0, 0.0), error_bound: 0.0, terms: 0 });
    }
    let index = PolylogIndex::with_override(word_to_index(word))?;
    let mut x = vec![Complex64::new(1.0, 0.0); index.depth()];
    *x.last_mut().unwrap() = Complex64::new(0.5, 0.0);
    polylog_series(&index, &x, tol, max_terms)
}

/// Multiple zeta value `ζ(n1, ..., nm) = Σ_{0<k1<...<km} 1 / (k1^n1 ... km^nm)`.
///
/// The same sum, re-expanded by splitting the iterated-integral path at 1/2:
/// `∫_0^1 w = Σ_j ∫_0^{1/2} w[..j] · ∫_{1/2}^1 w[j..]`, and the second factor
/// becomes `∫_0^{1/2}` of the reversed word with `ω0 ↔ ω1` under `t ↦ 1 - t`.
/// Every factor is a series in powers of 1/2.
pub fn mzv(idx: &PolylogIndex, tol: f64) -> Result<SeriesValue> {
    if !idx.has_convergent_shape() {
        return Err(Error::Divergent(format!("{:?} needs last index >= 2", idx.indices())));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition(format!("tolerance {tol} must be positive")));
    }
    let word: Vec<bool> = idx
        .indices()
        .iter()
        .flat_map(|&n| std::iter::once(true).chain(std::iter::repeat_n(false, n as usize - 1)))
        .collect();
    let weight = word.len();
    let max_terms = 100_000;
    let mut piece_tol = tol / (4.0 * (weight as f64 + 1.0));
    loop {
        let mut total = KahanSum::default();
        let mut bound = 0.0;
        let mut terms = 0;
        for j in 0..=weight {
            let head = half_integral(&word[..j], piece_tol, max_terms)?;
            let dual: Vec<bool> = word[j..].iter().rev().map(|&b| !b).collect();
            let tail = half_integral(&dual, piece_tol, max_terms)?;
            total.add(head.value * tail.value);
            bound += head.error_bound * tail.value.norm()
                + tail.error_bound * head.value.norm()
                + head.error_bound * tail.error_bound;
            terms += head.terms + tail.terms;
        }
        if bound <= tol || piece_tol < 1e-17 {
            return Ok(SeriesValue { value: total.sum, error_bound: bound, terms });
        }
        piece_tol *= 0.1;
    }
}
