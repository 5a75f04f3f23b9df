//! Brute-force Wick theorem: sums over all perfect matchings of labelled
//! legs, forbidding pairs at the same point.

use num_complex::Complex64;

use super::PairingMatrix;
use crate::error::{Error, Result};

/// Largest number of legs the enumeration accepts (15!! matchings).
pub const LEG_BUDGET: usize = 16;

/// One field factor at `point`; `derivative` marks a `d_mu phi` leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Leg {
    pub point: usize,
    pub derivative: bool,
}

impl Leg {
    pub fn plain(point: usize) -> Self {
        Self {
            point,
            derivative: false,
        }
    }

    pub fn derived(point: usize) -> Self {
        Self {
            point,
            derivative: true,
        }
    }
}

fn contraction(a: Leg, b: Leg, mu: usize, t: &PairingMatrix) -> Result<Complex64> {
    match (a.derivative, b.derivative) {
        (false, false) => Ok(t.get(a.point, b.point)),
        (true, false) => t.derivative_or_err(a.point, b.point, mu),
        (false, true) => t.derivative_or_err(b.point, a.point, mu),
        (true, true) => Err(Error::MissingChannel(format!(
            "(d phi, d phi) contraction between points {} and {}",
            a.point, b.point
        ))),
    }
}

/// Sum over perfect matchings of `legs` of the product of contractions.
/// The result does not depend on the order of `legs`.
pub fn pairing_sum(legs: &[Leg], mu: usize, t: &PairingMatrix) -> Result<Complex64> {
    if legs.len() > LEG_BUDGET {
        return Err(Error::Budget {
            legs: legs.len(),
            limit: LEG_BUDGET,
        });
    }
    if let Some(bad) = legs.iter().find(|l| l.point >= t.size()) {
        return Err(Error::Index {
            index: bad.point,
            size: t.size(),
        });
    }
    if legs.len() % 2 == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut used = vec![false; legs.len()];
    match_rest(legs, &mut used, mu, t)
}

fn match_rest(legs: &[Leg], used: &mut [bool], mu: usize, t: &PairingMatrix) -> Result<Complex64> {
    let Some(a) = used.iter().position(|u| !u) else {
        return Ok(Complex64::new(1.0, 0.0));
    };
    used[a] = true;
    let mut acc = Complex64::new(0.0, 0.0);
    for b in a + 1..legs.len() {
        if used[b] || legs[b].point == legs[a].point {
            continue;
        }
        let w = contraction(legs[a], legs[b], mu, t)?;
        used[b] = true;
        let rest = match_rest(legs, used, mu, t);
        used[b] = false;
        acc += w * rest?;
    }
    used[a] = false;
    Ok(acc)
}

fn check_degrees(degrees: &[usize], t: &PairingMatrix) -> Result<()> {
    if degrees.len() != t.size() {
        return Err(Error::SizeMismatch {
            expected: t.size(),
            got: degrees.len(),
        });
    }
    let legs: usize = degrees.iter().sum();
    if legs > LEG_BUDGET {
        return Err(Error::Budget {
            legs,
            limit: LEG_BUDGET,
        });
    }
    Ok(())
}

/// `< :phi^{n_1}(x_1): ... :phi^{n_k}(x_k): >` by explicit enumeration.
pub fn monomial_vev_oracle(degrees: &[usize], t: &PairingMatrix) -> Result<Complex64> {
    check_degrees(degrees, t)?;
    let legs: Vec<Leg> = degrees
        .iter()
        .enumerate()
        .flat_map(|(p, &n)| std::iter::repeat_n(Leg::plain(p), n))
        .collect();
    pairing_sum(&legs, 0, t)
}

/// As [`monomial_vev_oracle`], with `deriv_flags[i]` (0 or 1) of the legs
/// at point `i` replaced by `d_mu phi`.
pub fn mixed_monomial_vev_oracle(
    degrees: &[usize],
    deriv_flags: &[usize],
    mu: usize,
    t: &PairingMatrix,
) -> Result<Complex64> {
    check_degrees(degrees, t)?;
    if deriv_flags.len() != degrees.len() {
        return Err(Error::SizeMismatch {
            expected: degrees.len(),
            got: deriv_flags.len(),
        });
    }
    if mu >= 4 {
        return Err(Error::Index { index: mu, size: 4 });
    }
    for (i, (&f, &n)) in deriv_flags.iter().zip(degrees).enumerate() {
        if f > 1 || f > n {
            return Err(Error::Precondition(format!(
                "point {i}: {f} derivative legs among {n} (at most one supported)"
            )));
        }
    }
    let flagged: Vec<usize> = (0..degrees.len())
        .filter(|&i| deriv_flags[i] == 1)
        .collect();
    if flagged.len() > 1 {
        return Err(Error::MissingChannel(format!(
            "derivative legs at points {flagged:?} would need a (d phi, d phi) channel"
        )));
    }
    for &i in &flagged {
        for (j, &n) in degrees.iter().enumerate() {
            if j != i && n > 0 {
                t.derivative_or_err(i, j, mu)?;
            }
        }
    }
    let mut legs = Vec::new();
    for (p, &n) in degrees.iter().enumerate() {
        for k in 0..n {
            legs.push(Leg {
                point: p,
                derivative: k < deriv_flags[p],
            });
        }
    }
    pairing_sum(&legs, mu, t)
}
