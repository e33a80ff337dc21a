//! Gauss–Legendre rules with an indefinite-integration matrix.

use std::f64::consts::PI;

/// Evaluates `P_0(x), ..., P_{deg}(x)` by the three-term recurrence.
fn legendre_all(deg: usize, x: f64) -> Vec<f64> {
    let mut p = vec![0.0; deg + 1];
    p[0] = 1.0;
    if deg >= 1 {
        p[1] = x;
    }
    for k in 1..deg {
        let kf = k as f64;
        p[k + 1] = ((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0);
    }
    p
}

/// An `m`-point rule on `[-1, 1]`.
///
/// `antiderivative[j][l]` integrates the Lagrange basis polynomial of node
/// `l` from `-1` up to node `j`, so applying it to samples of `g` yields
/// `∫_{-1}^{x_j} g` exactly for polynomials of degree `< m`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub antiderivative: Vec<Vec<f64>>,
}

impl GaussLegendre {
    pub fn new(m: usize) -> Self {
        assert!(m >= 2, "need at least two nodes");
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        let mf = m as f64;
        for i in 0..m.div_ceil(2) {
            // Tricomi initial guess, refined by Newton
            let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
            let derivative = |x: f64| {
                let p = legendre_all(m, x);
                (p[m], mf * (x * p[m] - p[m - 1]) / (x * x - 1.0))
            };
            for _ in 0..100 {
                let (p, dp) = derivative(x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = derivative(x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }

        // L_l(x) = w_l Σ_k (2k+1)/2 P_k(x_l) P_k(x), and
        // ∫_{-1}^{x} P_k = (P_{k+1}(x) - P_{k-1}(x)) / (2k+1) for k >= 1.
        let at_nodes: Vec<Vec<f64>> = nodes.iter().map(|&x| legendre_all(m, x)).collect();
        let mut antiderivative = vec![vec![0.0; m]; m];
        for (j, pj) in at_nodes.iter().enumerate() {
            for (l, pl) in at_nodes.iter().enumerate() {
                let mut s = 0.5 * (nodes[j] + 1.0);
                for k in 1..m {
                    s += 0.5 * pl[k] * (pj[k + 1] - pj[k - 1]);
                }
                antiderivative[j][l] = weights[l] * s;
            }
        }
        GaussLegendre { nodes, weights, antiderivative }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫_a^b f` for a real integrand.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)).sum::<f64>() * half
    }
}
