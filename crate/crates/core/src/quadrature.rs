//! Quadrature rules: Gauss-Legendre, Gauss rules for a logarithmic weight,
//! the periodic trapezoid rule, and split rules for `log|2 sin((s - t)/2)|`.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Affine image of this rule, assumed to live on `[0, 1]`, on `[a, b]`.
    pub fn mapped_from_unit(&self, a: f64, b: f64) -> QuadratureRule {
        let h = b - a;
        QuadratureRule {
            nodes: self.nodes.iter().map(|&x| a + h * x).collect(),
            weights: self.weights.iter().map(|&w| h * w).collect(),
        }
    }

    fn extend(&mut self, other: QuadratureRule) {
        self.nodes.extend(other.nodes);
        self.weights.extend(other.weights);
    }
}

/// `n`-point Gauss-Legendre rule on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> QuadratureRule {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * x;
        nodes[n - 1 - i] = mid + half * x;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = mid;
    }
    QuadratureRule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `n`-point Gauss rule for `int_0^1 f(x) (-log x) dx`.
///
/// Recurrence coefficients come from the modified Chebyshev algorithm with
/// shifted Legendre moments, nodes and weights from the Jacobi matrix.
pub fn gauss_log(n: usize) -> QuadratureRule {
    assert!(n >= 1);
    let m = 2 * n;
    // Monic shifted Legendre recurrence: p_{k+1} = (x - 1/2) p_k - b_k p_{k-1}.
    let a = vec![0.5; m];
    let b: Vec<f64> = (0..m)
        .map(|k| {
            if k == 0 {
                1.0
            } else {
                let k = k as f64;
                0.25 / (4.0 - 1.0 / (k * k))
            }
        })
        .collect();
    // Modified moments of -log x against the monic shifted Legendre basis.
    let mut nu = vec![0.0; m];
    nu[0] = 1.0;
    let mut scale = 1.0; // (k!)^2 / (2k)!
    for (k, v) in nu.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        scale *= kf * kf / ((2.0 * kf - 1.0) * (2.0 * kf));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        *v = scale * sign / (kf * (kf + 1.0));
    }

    let mut alpha = vec![0.0; n];
    let mut beta = vec![0.0; n];
    alpha[0] = a[0] + nu[1] / nu[0];
    beta[0] = nu[0];
    let mut sig_prev = vec![0.0; m + 1];
    let mut sig: Vec<f64> = nu.clone();
    sig.push(0.0);
    for k in 1..n {
        let mut next = vec![0.0; m + 1];
        for l in k..(m - k) {
            next[l] = sig[l + 1] - (alpha[k - 1] - a[l]) * sig[l] - beta[k - 1] * sig_prev[l]
                + b[l] * sig[l - 1];
        }
        alpha[k] = a[k] + next[k + 1] / next[k] - sig[k] / sig[k - 1];
        beta[k] = next[k] / sig[k - 1];
        sig_prev = sig;
        sig = next;
    }

    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            alpha[i]
        } else if i + 1 == j {
            beta[j].sqrt()
        } else if j + 1 == i {
            beta[i].sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let v0 = eig.eigenvectors[(0, k)];
            (eig.eigenvalues[k], beta[0] * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// `(2 pi / m) sum_k f(2 pi k / m)`.
pub fn periodic_trapezoid<F: FnMut(f64) -> f64>(mut f: F, m: usize) -> f64 {
    assert!(m >= 8, "periodic trapezoid rule needs m >= 8");
    let h = TAU / m as f64;
    (0..m).map(|k| f(k as f64 * h)).sum::<f64>() * h
}

/// Exact `int_a^b log|s - t| dt`.
pub fn log_moment(a: f64, b: f64, s: f64) -> f64 {
    // Antiderivative of log|u| is u log|u| - u.
    let anti = |u: f64| if u == 0.0 { 0.0 } else { u * u.abs().ln() - u };
    anti(b - s) - anti(a - s)
}

/// `log(2 sin(u/2) / u)`, smooth on `|u| < 2 pi`.
pub(crate) fn log_sinc_half(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        // 2 sin(u/2)/u = 1 - u^2/24 + u^4/1920 - ...
        let u2 = u * u;
        (-u2 / 24.0) - u2 * u2 / 2880.0
    } else {
        (2.0 * (0.5 * u).sin() / u).ln()
    }
}

/// Split rules for weakly singular integrals with a logarithmic kernel.
#[derive(Debug, Clone)]
pub struct LogSplit {
    gauss: QuadratureRule,
    log_rule: QuadratureRule,
}

impl Default for LogSplit {
    fn default() -> Self {
        Self::new(12)
    }
}

impl LogSplit {
    /// `n` points for both the Gauss-Legendre and the log-weighted rules.
    pub fn new(n: usize) -> Self {
        Self {
            gauss: gauss_legendre(n, 0.0, 1.0),
            log_rule: gauss_log(n),
        }
    }

    /// Rule on `[a, b]` for `int g(t) log|s - t| dt` with smooth `g`.
    /// All nodes lie inside `[a, b]`.
    pub fn log_abs_rule(&self, a: f64, b: f64, s: f64) -> QuadratureRule {
        let mut out = QuadratureRule {
            nodes: vec![],
            weights: vec![],
        };
        if s >= a && s <= b {
            // t = s + dir * len * x, so log|s - t| = log len + log x.
            for (len, dir) in [(s - a, -1.0), (b - s, 1.0)] {
                if len <= 0.0 {
                    continue;
                }
                let log_len = len.ln();
                for (&x, &w) in self.gauss.nodes.iter().zip(&self.gauss.weights) {
                    out.nodes.push(s + dir * len * x);
                    out.weights.push(len * log_len * w);
                }
                for (&x, &w) in self.log_rule.nodes.iter().zip(&self.log_rule.weights) {
                    out.nodes.push(s + dir * len * x);
                    out.weights.push(-len * w);
                }
            }
        } else {
            self.graded_rule(a, b, s, &mut out, &|t| (s - t).abs().ln(), 0);
        }
        out
    }

    /// Bisects `[a, b]` until each piece is at least its own length away
    /// from `s`, then applies Gauss-Legendre with weights times `kernel`.
    fn graded_rule(
        &self,
        a: f64,
        b: f64,
        s: f64,
        out: &mut QuadratureRule,
        kernel: &dyn Fn(f64) -> f64,
        depth: usize,
    ) {
        let dist = if s < a { a - s } else { s - b };
        if dist < b - a && depth < 60 {
            let m = 0.5 * (a + b);
            self.graded_rule(a, m, s, out, kernel, depth + 1);
            self.graded_rule(m, b, s, out, kernel, depth + 1);
            return;
        }
        let h = b - a;
        for (&x, &w) in self.gauss.nodes.iter().zip(&self.gauss.weights) {
            let t = a + h * x;
            out.nodes.push(t);
            out.weights.push(h * w * kernel(t));
        }
    }

    /// Rule on `[a, b]` for `int g(t) log|2 sin((s - t)/2)| dt` with smooth
    /// `g`, where `s` and `t` are angles (period `2 pi`).
    pub fn log_split_weights(&self, a: f64, b: f64, s: f64) -> QuadratureRule {
        if b - a > PI {
            let m = 0.5 * (a + b);
            let mut left = self.log_split_weights(a, m, s);
            left.extend(self.log_split_weights(m, b, s));
            return left;
        }
        let s = nearest_image(s, 0.5 * (a + b));
        let dist = if s < a {
            a - s
        } else if s > b {
            s - b
        } else {
            0.0
        };
        let h = b - a;
        if dist >= h {
            let g = self.gauss.mapped_from_unit(a, b);
            let weights = g
                .nodes
                .iter()
                .zip(&g.weights)
                .map(|(&t, &w)| w * (2.0 * (0.5 * (s - t)).sin()).abs().ln())
                .collect();
            return QuadratureRule {
                nodes: g.nodes,
                weights,
            };
        }
        let mut rule = self.log_abs_rule(a, b, s);
        let g = self.gauss.mapped_from_unit(a, b);
        for (&t, &w) in g.nodes.iter().zip(&g.weights) {
            rule.nodes.push(t);
            rule.weights.push(w * log_sinc_half(s - t));
        }
        rule
    }

    /// `int_a^b log|2 sin((s - t)/2)| dt`: exact log moment plus a Gauss rule
    /// for the smooth remainder.
    pub fn log_sin_moment(&self, a: f64, b: f64, s: f64) -> f64 {
        if b - a > PI {
            let m = 0.5 * (a + b);
            return self.log_sin_moment(a, m, s) + self.log_sin_moment(m, b, s);
        }
        let s = nearest_image(s, 0.5 * (a + b));
        let smooth = self
            .gauss
            .mapped_from_unit(a, b)
            .integrate(|t| log_sinc_half(s - t));
        log_moment(a, b, s) + smooth
    }
}

/// `s + 2 pi k` closest to `center`.
fn nearest_image(s: f64, center: f64) -> f64 {
    s + TAU * ((center - s) / TAU).round()
}
