//! Fixed-order Gaussian rules and the panel integrator shared by the
//! propagator routines.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// Nodes and weights of a Gaussian quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn legendre_cache() -> &'static Mutex<HashMap<usize, Arc<Rule>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Rule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss-Legendre rule on [-1, 1], cached per order.
pub fn gauss_legendre(n: usize) -> Arc<Rule> {
    assert!(n > 0, "Gauss-Legendre order must be positive");
    let mut cache = legendre_cache().lock().expect("rule cache poisoned");
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(compute_gauss_legendre(n)))
        .clone()
}

fn compute_gauss_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
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
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Gauss-Hermite rule for the weight `exp(-x^2)` (Golub-Welsch).
pub fn gauss_hermite(n: usize) -> Rule {
    assert!(n > 0, "Gauss-Hermite order must be positive");
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64 / 2.0).sqrt();
        jacobi[(k, k - 1)] = b;
        jacobi[(k - 1, k)] = b;
    }
    let eig = SymmetricEigen::new(jacobi);
    let mu0 = PI.sqrt();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let v0 = eig.eigenvectors[(0, k)];
            (eig.eigenvalues[k], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Symmetrize to remove eigen-solver noise.
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (pairs[j].0 - pairs[i].0);
        let w = 0.5 * (pairs[i].1 + pairs[j].1);
        pairs[i] = (-x, w);
        pairs[j] = (x, w);
    }
    if n % 2 == 1 {
        pairs[n / 2].0 = 0.0;
    }
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Integrates `f` over the straight segment `start + direction * s`,
/// `s` in `[s0, s1]`, with one Gauss-Legendre panel.
#[inline]
pub fn panel<F>(rule: &Rule, s0: f64, s1: f64, mut f: F) -> Complex64
where
    F: FnMut(f64) -> Complex64,
{
    let half = 0.5 * (s1 - s0);
    let mid = 0.5 * (s1 + s0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        acc += f(mid + half * x) * *w;
    }
    acc * half
}

/// Integrates `f` over `[0, end]` with panels whose width is chosen by
/// `width(s)` at the left edge of each panel.
///
/// Returns an error message when more than `max_panels` panels would be
/// needed.
pub fn panels<F, W>(
    rule: &Rule,
    end: f64,
    max_panels: usize,
    mut width: W,
    mut f: F,
) -> Result<Complex64, String>
where
    F: FnMut(f64) -> Complex64,
    W: FnMut(f64) -> f64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    let mut s = 0.0;
    let mut count = 0usize;
    while s < end {
        let h = width(s).max(f64::EPSILON * end.max(1.0));
        let s1 = (s + h).min(end);
        acc += panel(rule, s, s1, &mut f);
        s = s1;
        count += 1;
        if count > max_panels {
            return Err(format!(
                "more than {max_panels} panels required to reach {end:.3e}"
            ));
        }
    }
    Ok(acc)
}

/// Polynomial extrapolation to `h = 0` through the points `(h_k, v_k)`
/// (Neville's scheme).
pub fn extrapolate_to_zero(hs: &[f64], values: &[Complex64]) -> Complex64 {
    assert_eq!(hs.len(), values.len());
    assert!(!hs.is_empty());
    let mut p: Vec<Complex64> = values.to_vec();
    let n = hs.len();
    for m in 1..n {
        for i in 0..n - m {
            let hi = hs[i];
            let hj = hs[i + m];
            p[i] = (p[i] * hj - p[i + 1] * hi) / (hj - hi);
        }
    }
    p[0]
}
