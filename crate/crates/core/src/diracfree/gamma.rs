use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub type CMatrix4 = Matrix4<Complex64>;

/// Minkowski metric diagonal, signature (+,-,-,-).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

const CLIFFORD_TOL: f64 = 1e-12;

/// Four Dirac matrices `gamma^0 .. gamma^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaBasis(pub [CMatrix4; 4]);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl GammaBasis {
    /// Dirac representation: `gamma^0 = diag(1, 1, -1, -1)`,
    /// `gamma^k = [[0, sigma_k], [-sigma_k, 0]]`.
    pub fn dirac() -> Self {
        let zero = c(0.0, 0.0);
        let pauli = [
            [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
            [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
        ];
        let g0 = CMatrix4::from_diagonal(&nalgebra::Vector4::new(
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(-1.0, 0.0),
        ));
        let spatial = |s: &[[Complex64; 2]; 2]| {
            let mut g = CMatrix4::from_element(zero);
            for i in 0..2 {
                for j in 0..2 {
                    g[(i, j + 2)] = s[i][j];
                    g[(i + 2, j)] = -s[i][j];
                }
            }
            g
        };
        Self([
            g0,
            spatial(&pauli[0]),
            spatial(&pauli[1]),
            spatial(&pauli[2]),
        ])
    }

    /// `S gamma^mu S^-1`.
    pub fn similarity(&self, s: &CMatrix4) -> Result<Self> {
        let inv = s
            .try_inverse()
            .ok_or_else(|| Error::Precondition("similarity matrix is singular".into()))?;
        Ok(Self(self.0.map(|g| s * g * inv)))
    }

    /// `gamma^mu v_mu` for a covector `v`.
    pub fn slash(&self, v: &[Complex64; 4]) -> CMatrix4 {
        let mut out = CMatrix4::zeros();
        for mu in 0..4 {
            out += self.0[mu] * v[mu];
        }
        out
    }
}

impl Default for GammaBasis {
    fn default() -> Self {
        Self::dirac()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaReport {
    /// Largest entry deviation over all checked relations.
    pub max_deviation: f64,
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix4) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Checks `{gamma^mu, gamma^nu} = 2 eta^{mu nu}` for `mu <= nu` in order,
/// then `(gamma^0)^dagger = gamma^0`.
pub fn gamma_check(basis: &GammaBasis) -> Result<GammaReport> {
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in mu..4 {
            let (a, b) = (&basis.0[mu], &basis.0[nu]);
            let anti = a * b + b * a;
            let target = if mu == nu { 2.0 * METRIC[mu] } else { 0.0 };
            let dev = max_abs(&(anti - CMatrix4::identity() * c(target, 0.0)));
            if !(dev <= CLIFFORD_TOL) {
                return Err(Error::Algebra {
                    mu,
                    nu,
                    detail: format!("anticommutator off by {dev:.3e}"),
                });
            }
            worst = worst.max(dev);
        }
    }
    let g0 = &basis.0[0];
    let dev = max_abs(&(g0.adjoint() - g0));
    if !(dev <= CLIFFORD_TOL) {
        return Err(Error::Algebra {
            mu: 0,
            nu: 0,
            detail: format!("gamma^0 not hermitian ({dev:.3e})"),
        });
    }
    Ok(GammaReport {
        max_deviation: worst.max(dev),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dirac_representation_passes() {
        let r = gamma_check(&GammaBasis::dirac()).unwrap();
        assert_eq!(r.max_deviation, 0.0);
    }

    #[test]
    fn broken_basis_fails_at_the_first_bad_relation() {
        let mut b = GammaBasis::dirac();
        b.0[1] = CMatrix4::zeros();
        match gamma_check(&b) {
            Err(Error::Algebra { mu: 1, nu: 1, .. }) => {}
            other => panic!("expected failure at (1, 1), got {other:?}"),
        }
    }

    /// Unitary matrix from the QR factorization of a random complex matrix.
    fn random_unitary(seed: u64) -> CMatrix4 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = CMatrix4::from_fn(|_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        m.qr().q()
    }

    #[test]
    fn unitary_similarity_preserves_the_relations() {
        for seed in 0..5 {
            let s = random_unitary(seed);
            let b = GammaBasis::dirac().similarity(&s).unwrap();
            assert!(gamma_check(&b).is_ok());
            assert!((b.0[2].trace()).norm() < 1e-14);
        }
    }
}
