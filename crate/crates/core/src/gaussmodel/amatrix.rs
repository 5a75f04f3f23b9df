use std::f64::consts::{FRAC_PI_4, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::propagator::{d_minus_decomposed, ComplexFourVector, Mass, QuadratureConfig};

/// Charges `r_j = +/-1`. `r = -1` is the field `:exp(+i l^2 phi^2):`,
/// `r = +1` its conjugate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeVector(Vec<i8>);

impl ChargeVector {
    pub fn new(r: Vec<i8>) -> Result<Self> {
        if let Some(bad) = r.iter().find(|v| v.abs() != 1) {
            return Err(Error::Domain(format!(
                "charges must be +1 or -1, got {bad}"
            )));
        }
        Ok(Self(r))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> i8 {
        self.0[j]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn flipped(&self) -> Self {
        Self(self.0.iter().map(|r| -r).collect())
    }
}

/// `h_r = exp(i r pi / 4)`.
pub fn phase_h(r: i8) -> Complex64 {
    assert!(r.abs() == 1, "charge must be +1 or -1");
    Complex64::from_polar(1.0, r as f64 * FRAC_PI_4)
}

/// Symmetric matrix with unit diagonal,
/// `a_jk = 2 h_{r_j} h_{r_k} l^2 D(z_j - z_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AMatrix(DMatrix<Complex64>);

impl AMatrix {
    /// Unit diagonal, `a_jk = a_kj = f(j, k)` for `j < k`.
    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(n: usize, mut f: F) -> Self {
        let mut a = DMatrix::identity(n, n);
        for j in 0..n {
            for k in j + 1..n {
                let v = f(j, k);
                a[(j, k)] = v;
                a[(k, j)] = v;
            }
        }
        Self(a)
    }

    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.0[(j, k)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn determinant(&self) -> Complex64 {
        self.0.clone().determinant()
    }

    /// `P A P^T` for the permutation sending row `i` to `perm[i]`'s row.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.size(), |j, k| self.get(perm[j], perm[k]))
    }

    /// `I + s (A - I)`.
    fn scaled(&self, s: f64) -> DMatrix<Complex64> {
        let n = self.size();
        let id = DMatrix::<Complex64>::identity(n, n);
        &id + (&self.0 - &id) * Complex64::new(s, 0.0)
    }
}

fn check_ordering(points: &[ComplexFourVector]) -> Result<()> {
    for j in 0..points.len() {
        for k in j + 1..points.len() {
            let d = (points[j] - points[k]).time().im;
            if !(d < 0.0) {
                return Err(Error::Domain(format!(
                    "Im(z_{j}^0 - z_{k}^0) = {d} must be negative for j < k"
                )));
            }
        }
    }
    Ok(())
}

/// Two-point values `D(z_j - z_k)`, `j < k`, in row order.
pub(crate) fn pair_propagators(
    m: Mass,
    points: &[ComplexFourVector],
    q: &QuadratureConfig,
) -> Result<Vec<Vec<Complex64>>> {
    check_ordering(points)?;
    let n = points.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in j + 1..n {
            let v = d_minus_decomposed(m, &(points[j] - points[k]), q)?;
            out[j][k] = v;
            out[k][j] = v;
        }
    }
    Ok(out)
}

pub fn build_a(
    l: f64,
    m: Mass,
    points: &[ComplexFourVector],
    r: &ChargeVector,
    q: &QuadratureConfig,
) -> Result<AMatrix> {
    if points.len() != r.len() {
        return Err(Error::SizeMismatch {
            expected: points.len(),
            got: r.len(),
        });
    }
    let d = pair_propagators(m, points, q)?;
    Ok(AMatrix::from_fn(points.len(), |j, k| {
        2.0 * phase_h(r.get(j)) * phase_h(r.get(k)) * (l * l) * d[j][k]
    }))
}

const PATH_STEPS: usize = 64;
const MAX_BISECTIONS: usize = 40;

/// Determinant values recorded along `s -> det(I + s (A - I))` and the
/// continuously tracked argument at `s = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchState {
    /// `(s, det A(s))` at every accepted step, starting from `(0, 1)`.
    pub path: Vec<(f64, Complex64)>,
    /// Argument of `det A` continued from 0 at the identity.
    pub arg: f64,
}

impl BranchState {
    pub fn determinant(&self) -> Complex64 {
        self.path.last().expect("path starts at s = 0").1
    }

    /// The continued branch of `det^(-1/2)`.
    pub fn inv_sqrt(&self) -> Complex64 {
        Complex64::from_polar(self.determinant().norm().powf(-0.5), -0.5 * self.arg)
    }
}

struct Tracker<'a> {
    a: &'a AMatrix,
    floor: f64,
    path: Vec<(f64, Complex64)>,
}

impl Tracker<'_> {
    fn det_at(&self, s: f64) -> Result<Complex64> {
        let d = self.a.scaled(s).determinant();
        if !(d.norm() > self.floor) {
            return Err(Error::Branch { s });
        }
        Ok(d)
    }

    /// Argument increment from `(s0, d0)` to `(s1, d1)`, bisecting until
    /// each sub-step turns by at most pi/4.
    fn step(
        &mut self,
        s0: f64,
        d0: Complex64,
        s1: f64,
        d1: Complex64,
        depth: usize,
    ) -> Result<f64> {
        let delta = (d1 / d0).arg();
        if delta.abs() <= FRAC_PI_4 {
            self.path.push((s1, d1));
            return Ok(delta);
        }
        let mid = 0.5 * (s0 + s1);
        if depth >= MAX_BISECTIONS {
            return Err(Error::Branch { s: mid });
        }
        let dm = self.det_at(mid)?;
        Ok(self.step(s0, d0, mid, dm, depth + 1)? + self.step(mid, dm, s1, d1, depth + 1)?)
    }
}

/// Follows `det(I + s (A - I))` from `s = 0` to `s = 1`.
pub fn continue_branch(a: &AMatrix) -> Result<BranchState> {
    let n = a.size() as i32;
    let off = (a.matrix() - DMatrix::<Complex64>::identity(a.size(), a.size())).norm();
    let floor = 1e-13 * (1.0 + off).powi(n);
    let mut t = Tracker {
        a,
        floor,
        path: vec![(0.0, Complex64::new(1.0, 0.0))],
    };
    let mut arg = 0.0;
    let mut prev = Complex64::new(1.0, 0.0);
    for k in 1..=PATH_STEPS {
        let s = k as f64 / PATH_STEPS as f64;
        let d = t.det_at(s)?;
        arg += t.step((k - 1) as f64 / PATH_STEPS as f64, prev, s, d, 0)?;
        prev = d;
    }
    debug_assert!(arg.is_finite() && arg.abs() < 1e3 * PI);
    Ok(BranchState { path: t.path, arg })
}

/// `(det A)^(-1/2)` on the branch continuous from 1 at the identity.
pub fn det_inv_sqrt(a: &AMatrix) -> Result<Complex64> {
    Ok(continue_branch(a)?.inv_sqrt())
}

/// `Q = det A - 1 + a_{j,j+1}^2`, the determinant with its constant term
/// and the pure `a_{j,j+1}^2` term removed. `j` is 0-based.
pub fn q_perturbation(a: &AMatrix, j: usize) -> Result<Complex64> {
    let n = a.size();
    if n < 2 || j > n - 2 {
        return Err(Error::Index {
            index: j,
            size: n.saturating_sub(1),
        });
    }
    let x = a.get(j, j + 1);
    Ok(a.determinant() - 1.0 + x * x)
}
