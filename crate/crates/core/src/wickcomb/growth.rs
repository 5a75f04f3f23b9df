use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::Serialize;

use super::series::ln_factorial;
use super::{PairingMatrix, WickSeries};
use crate::error::{Error, Result};

/// `exp(sum_{i<j} g_i g_j t_ij)`.
pub fn exp_vev_closed(g: &[Complex64], t: &PairingMatrix) -> Result<Complex64> {
    if g.len() != t.size() {
        return Err(Error::SizeMismatch {
            expected: t.size(),
            got: g.len(),
        });
    }
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            s += g[i] * g[j] * t.get(i, j);
        }
    }
    Ok(s.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaEstimate {
    /// `max_n (|a_n|^2 / n!)^(1/n)` over the window.
    pub sigma: f64,
    /// `sqrt(sigma) / (2 pi)`.
    pub ell: f64,
}

/// Growth-rate estimate of the coefficients over `window` (degree 0 is
/// skipped; zero coefficients contribute 0).
pub fn sigma_growth(series: &WickSeries, window: RangeInclusive<usize>) -> Result<SigmaEstimate> {
    let (lo, hi) = (*window.start(), *window.end());
    if lo > hi || hi == 0 {
        return Err(Error::EmptyWindow { lo, hi });
    }
    let mut sigma: f64 = 0.0;
    for n in lo.max(1)..=hi {
        let a = series.coeff(n).norm();
        if a == 0.0 {
            continue;
        }
        let log = (2.0 * a.ln() - ln_factorial(n)) / n as f64;
        sigma = sigma.max(log.exp());
    }
    Ok(SigmaEstimate {
        sigma,
        ell: sigma.sqrt() / (2.0 * PI),
    })
}

/// `1/(2g) - sum_{i<j} |t_ij|`; positive values certify absolute
/// convergence of the expansion for `exp_square(g)` fields.
pub fn convergence_margin(g: f64, t: &PairingMatrix) -> f64 {
    1.0 / (2.0 * g) - t.abs_sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            exp_vev_closed(&[Complex64::new(1.0, 0.0); 3], &PairingMatrix::zeros(3)).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let t = PairingMatrix::uniform(3, Complex64::new(2f64.ln(), 0.0));
        let v = exp_vev_closed(&[Complex64::new(1.0, 0.0); 3], &t).unwrap();
        assert!((v - 8.0).norm() < 1e-14);
    }

    #[test]
    fn sigma_examples() {
        let s = sigma_growth(&WickSeries::monomial(1), 1..=10).unwrap();
        assert!(s.sigma >= 0.0);
        assert_eq!(
            sigma_growth(&WickSeries::monomial(1), 2..=10)
                .unwrap()
                .sigma,
            0.0
        );

        let l = 0.8;
        let est = sigma_growth(&WickSeries::exp_square(l * l, 60), 20..=60).unwrap();
        let target = 2.0 * l * l;
        assert!((est.sigma - target).abs() < 0.05 * target, "{est:?}");
        let ell = l / (2f64.sqrt() * PI);
        assert!((est.ell - ell).abs() < 0.05 * ell);

        let g = Complex64::new(1.5, 0.0);
        let small = sigma_growth(&WickSeries::exp_linear(g, 40), 10..=40)
            .unwrap()
            .sigma;
        let large = sigma_growth(&WickSeries::exp_linear(g, 400), 200..=400)
            .unwrap()
            .sigma;
        assert!(large < small && large < 0.05);

        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=4;
        assert!(matches!(
            sigma_growth(&WickSeries::monomial(1), empty),
            Err(Error::EmptyWindow { lo: 5, hi: 4 })
        ));
    }

    #[test]
    fn margin_arithmetic() {
        assert_eq!(convergence_margin(2.0, &PairingMatrix::zeros(3)), 0.25);
        let mut t = PairingMatrix::zeros(3);
        t.set(0, 1, Complex64::new(0.1, 0.0));
        t.set(0, 2, Complex64::new(0.0, -0.1));
        t.set(1, 2, Complex64::new(0.12, 0.16));
        assert!((convergence_margin(1.0, &t) - 0.1).abs() < 1e-15);
    }
}
