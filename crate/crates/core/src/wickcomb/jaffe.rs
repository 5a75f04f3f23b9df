//! Multi-index expansion of vacuum expectations of products of Wick power
//! series,
//!
//! ```text
//! < rho_1 ... rho_n > = sum_R A(R) T^R / R!,
//! A(R) = prod_j a^(j)_{R_j},  T^R = prod_{i<j} t_ij^{r_ij},  R! = prod_{i<j} r_ij!,
//! ```
//!
//! with `R_j = sum_i r_ij`. Indices are visited by total degree, then
//! lexicographically over the pairs `(0,1), (0,2), ..., (n-2,n-1)`.

use num_complex::Complex64;

use super::{PairingMatrix, WickSeries};
use crate::error::{Error, Result};

/// Contraction counts `r_ij`, `i < j`, stored in pair order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContractionIndex {
    n: usize,
    r: Vec<u32>,
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((i, j));
        }
    }
    pairs
}

impl ContractionIndex {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        // offset of row a in the packed upper triangle
        let row = a * (2 * self.n - a - 1) / 2;
        self.r[row + b - a - 1]
    }

    pub fn degree(&self) -> u32 {
        self.r.iter().sum()
    }

    /// `R_j = sum_i r_ij`.
    pub fn row_sums(&self) -> Vec<u32> {
        let mut rows = vec![0; self.n];
        for ((i, j), &v) in pair_list(self.n).into_iter().zip(&self.r) {
            rows[i] += v;
            rows[j] += v;
        }
        rows
    }

    /// All indices on `n` points with total degree at most `trunc`, in
    /// enumeration order.
    pub fn enumerate(n: usize, trunc: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let caps = vec![usize::MAX; n];
        let pair_caps = vec![usize::MAX; pair_list(n).len()];
        Walker::new(n, &caps, &pair_caps).run(trunc, |_, r, _| {
            out.push(Self { n, r: r.to_vec() });
        });
        out
    }
}

/// Depth-first walk over contraction indices in degree-then-lex order,
/// skipping indices whose row sums exceed `caps` or whose entries exceed
/// `pair_caps`.
struct Walker<'a> {
    pairs: Vec<(usize, usize)>,
    caps: &'a [usize],
    pair_caps: &'a [usize],
    r: Vec<u32>,
    rows: Vec<usize>,
}

impl<'a> Walker<'a> {
    fn new(n: usize, caps: &'a [usize], pair_caps: &'a [usize]) -> Self {
        let pairs = pair_list(n);
        let r = vec![0; pairs.len()];
        Self {
            pairs,
            caps,
            pair_caps,
            r,
            rows: vec![0; n],
        }
    }

    fn run<F: FnMut(usize, &[u32], &[usize])>(&mut self, trunc: usize, mut f: F) {
        if self.pairs.is_empty() {
            f(0, &self.r, &self.rows);
            return;
        }
        for d in 0..=trunc {
            self.visit(0, d, d, &mut f);
        }
    }

    fn visit<F: FnMut(usize, &[u32], &[usize])>(
        &mut self,
        k: usize,
        rem: usize,
        d: usize,
        f: &mut F,
    ) {
        let (i, j) = self.pairs[k];
        let last = k + 1 == self.pairs.len();
        let lo = if last { rem } else { 0 };
        let hi = rem.min(self.pair_caps[k]);
        for v in lo..=hi {
            if self.rows[i] + v > self.caps[i] || self.rows[j] + v > self.caps[j] {
                break;
            }
            self.r[k] = v as u32;
            self.rows[i] += v;
            self.rows[j] += v;
            if last {
                f(d, &self.r, &self.rows);
            } else {
                self.visit(k + 1, rem - v, d, f);
            }
            self.rows[i] -= v;
            self.rows[j] -= v;
        }
        self.r[k] = 0;
    }
}

/// `t^v / v!` for `v = 0..=trunc`.
fn power_table(t: Complex64, trunc: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(trunc + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    for v in 0..=trunc {
        if v > 0 {
            acc = acc * t / v as f64;
        }
        out.push(acc);
    }
    out
}

fn check_sizes(series: &[WickSeries], t: &PairingMatrix) -> Result<()> {
    if series.len() != t.size() {
        return Err(Error::SizeMismatch {
            expected: t.size(),
            got: series.len(),
        });
    }
    Ok(())
}

fn support_caps(series: &[WickSeries]) -> Vec<usize> {
    // a_R = 0 past the support, so larger row sums never contribute; an
    // all-zero series still admits R = 0 (whose term is then zero).
    series
        .iter()
        .map(|s| s.support_len().saturating_sub(1))
        .collect()
}

/// Cumulative sums of the expansion: entry `d` holds the sum over all
/// indices of total degree `<= d`.
pub fn jaffe_partial_sums(
    series: &[WickSeries],
    t: &PairingMatrix,
    trunc: usize,
) -> Result<Vec<Complex64>> {
    check_sizes(series, t)?;
    let n = series.len();
    let pairs = pair_list(n);
    let tables: Vec<Vec<Complex64>> = pairs
        .iter()
        .map(|&(i, j)| power_table(t.get(i, j), trunc))
        .collect();
    let pair_caps: Vec<usize> = pairs
        .iter()
        .map(|&(i, j)| {
            if t.get(i, j) == Complex64::new(0.0, 0.0) {
                0
            } else {
                trunc
            }
        })
        .collect();
    let caps = support_caps(series);

    let mut by_degree = vec![Complex64::new(0.0, 0.0); trunc + 1];
    Walker::new(n, &caps, &pair_caps).run(trunc, |d, r, rows| {
        let mut term = Complex64::new(1.0, 0.0);
        for (s, &rj) in series.iter().zip(rows) {
            term *= s.coeff(rj);
        }
        for (table, &v) in tables.iter().zip(r) {
            term *= table[v as usize];
        }
        by_degree[d] += term;
    });
    let mut acc = Complex64::new(0.0, 0.0);
    Ok(by_degree
        .into_iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect())
}

/// Truncated expansion over all indices with `sum r_ij <= trunc`.
pub fn jaffe_vev(series: &[WickSeries], t: &PairingMatrix, trunc: usize) -> Result<Complex64> {
    Ok(*jaffe_partial_sums(series, t, trunc)?
        .last()
        .expect("trunc + 1 entries"))
}

/// Expansion with one derivative field: `series[point]` holds coefficients
/// `b_n` of `:(d_mu phi) phi^(n-1): / n!`, all other entries are plain
/// series. A derivative leg at `point` contracted with `j` contributes the
/// channel `t.derivative(point, j)[mu]` instead of `t_{point j}`.
pub fn jaffe_vev_mixed(
    series: &[WickSeries],
    point: usize,
    mu: usize,
    t: &PairingMatrix,
    trunc: usize,
) -> Result<Complex64> {
    check_sizes(series, t)?;
    let n = series.len();
    if point >= n {
        return Err(Error::Index {
            index: point,
            size: n,
        });
    }
    if mu >= 4 {
        return Err(Error::Index { index: mu, size: 4 });
    }
    let pairs = pair_list(n);
    let mut channels = vec![Complex64::new(0.0, 0.0); pairs.len()];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if i == point {
            channels[k] = t.derivative_or_err(i, j, mu)?;
        } else if j == point {
            channels[k] = t.derivative_or_err(j, i, mu)?;
        }
    }
    let tables: Vec<Vec<Complex64>> = pairs
        .iter()
        .map(|&(i, j)| power_table(t.get(i, j), trunc))
        .collect();
    let pair_caps: Vec<usize> = pairs
        .iter()
        .map(|&(i, j)| {
            let zero = t.get(i, j) == Complex64::new(0.0, 0.0);
            match (zero, i == point || j == point) {
                (false, _) => trunc,
                (true, true) => 1,
                (true, false) => 0,
            }
        })
        .collect();
    let caps = support_caps(series);

    let mut total = Complex64::new(0.0, 0.0);
    Walker::new(n, &caps, &pair_caps).run(trunc, |_, r, rows| {
        let rd = rows[point];
        if rd == 0 {
            return;
        }
        let mut a = Complex64::new(1.0, 0.0);
        for (s, &rj) in series.iter().zip(rows) {
            a *= s.coeff(rj);
        }
        if a == Complex64::new(0.0, 0.0) {
            return;
        }
        // the derivative leg sits in the group of r_dj legs going to j with
        // weight r_dj / R_d; r t^(r-1)/r! = t^(r-1)/(r-1)!
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if (i != point && j != point) || r[k] == 0 {
                continue;
            }
            let mut term = channels[k] * tables[k][r[k] as usize - 1];
            for (kk, table) in tables.iter().enumerate() {
                if kk != k {
                    term *= table[r[kk] as usize];
                }
            }
            sum += term;
        }
        total += a * sum / rd as f64;
    });
    Ok(total)
}
