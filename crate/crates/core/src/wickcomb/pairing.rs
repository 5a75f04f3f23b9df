use num_complex::Complex64;

use crate::error::{Error, Result};

/// Symmetric contraction matrix `t_ij` with zero diagonal, plus optional
/// derivative channels `tprime_ij[mu]` for a `d_mu phi` leg at `i` paired
/// with a plain leg at `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairingMatrix {
    n: usize,
    t: Vec<Complex64>,
    tprime: Vec<Option<[Complex64; 4]>>,
}

impl PairingMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            t: vec![Complex64::new(0.0, 0.0); n * n],
            tprime: vec![None; n * n],
        }
    }

    /// Every off-diagonal entry equal to `value`.
    pub fn uniform(n: usize, value: Complex64) -> Self {
        Self::from_fn(n, |_, _| value)
    }

    /// Entries `f(i, j)` for `i < j`, mirrored.
    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(n: usize, mut f: F) -> Self {
        let mut p = Self::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                p.set(i, j, f(i, j));
            }
        }
        p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i != j, "diagonal of a pairing matrix is fixed at zero");
        self.t[i * self.n + j] = value;
        self.t[j * self.n + i] = value;
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.t[i * self.n + j]
    }

    /// Sets the channel for `d phi` at `i` against `phi` at `j`. The reverse
    /// channel (`phi` at `i`, `d phi` at `j`) becomes its negative, as for
    /// a function of `x_i - x_j`.
    pub fn set_derivative(&mut self, i: usize, j: usize, value: [Complex64; 4]) {
        assert!(i != j, "no derivative channel on the diagonal");
        self.tprime[i * self.n + j] = Some(value);
        self.tprime[j * self.n + i] = Some(value.map(|c| -c));
    }

    /// Channel for `d phi` at `i` against `phi` at `j`.
    pub fn derivative(&self, i: usize, j: usize) -> Option<[Complex64; 4]> {
        self.tprime[i * self.n + j]
    }

    pub(crate) fn derivative_or_err(&self, i: usize, j: usize, mu: usize) -> Result<Complex64> {
        self.derivative(i, j).map(|d| d[mu]).ok_or_else(|| {
            Error::MissingChannel(format!(
                "no derivative channel for (d phi at {i}, phi at {j})"
            ))
        })
    }

    /// `sum_{i<j} |t_ij|`.
    pub fn abs_sum(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                s += self.get(i, j).norm();
            }
        }
        s
    }

    /// Relabels points: entry `(i, j)` of the result is entry
    /// `(perm[i], perm[j])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut p = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    p.t[i * self.n + j] = self.get(perm[i], perm[j]);
                    p.tprime[i * self.n + j] = self.derivative(perm[i], perm[j]);
                }
            }
        }
        p
    }
}
