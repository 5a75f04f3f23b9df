//! The scalar two-point function from its momentum-space radial integral
//!
//! ```text
//! D(z0, x) = 1/(4 pi^2 r) * int_0^inf (p/w) exp(-i w z0) sin(r p) dp,   w = sqrt(p^2 + m^2)
//! ```
//!
//! integrated along the real `p` axis. The damping `exp(-eps w)` with
//! `eps = -Im z0 > 0` provides the tail bound that fixes the cutoff.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ComplexFourVector, Mass, QuadratureConfig, COINCIDENCE_RADIUS};
use crate::error::{Error, Result};
use crate::quad;

const MAX_PANELS: usize = 2_000_000;

/// Damping, time and radius of a point accepted by the direct route.
#[derive(Debug, Clone, Copy)]
struct Radial {
    z0: Complex64,
    eps: f64,
    r: f64,
}

fn radial(z: &ComplexFourVector) -> Result<Radial> {
    z.require_real_spatial()?;
    let z0 = z.time();
    if !(z0.im < 0.0) {
        return Err(Error::Domain(format!(
            "direct quadrature needs Im z0 < 0, got {}",
            z0.im
        )));
    }
    Ok(Radial {
        z0,
        eps: -z0.im,
        r: z.spatial_norm(),
    })
}

/// Smallest `P` with `exp(-eps P) (eps P)^k-ish` below `delta`, for an
/// integrand bounded by `p^degree exp(-eps p)`.
fn cutoff_for(eps: f64, degree: i32, delta: f64) -> f64 {
    // tail of p^k e^{-eps p} is e^{-y} sum_j y^j k!/j! / eps^{k+1}, y = eps P;
    // relative to the scale eps^{-(k+1)} it is below e^{-y} (1+y)^k (k+1).
    let k = degree as f64;
    let mut y: f64 = 10.0;
    for _ in 0..50 {
        y = ((k + 1.0) * (1.0 + y).powf(k) / delta).ln();
    }
    y / eps
}

fn integrate<F>(m: f64, rad: Radial, degree: i32, q: &QuadratureConfig, f: F) -> Result<Complex64>
where
    F: FnMut(f64) -> Complex64,
{
    q.validate()?;
    let end = cutoff_for(rad.eps, degree, q.rel_tol * 1e-4);
    if end > q.cutoff {
        return Err(Error::Convergence(format!(
            "required momentum cutoff {end:.3e} exceeds the configured limit {:.3e} (eps = {:.3e})",
            q.cutoff, rad.eps
        )));
    }
    let rate = rad.z0.re.abs() + rad.r + rad.eps;
    let h_osc = (3.0 / rate).min(4.0);
    let rule = quad::gauss_legendre(q.nodes);
    let width = |p: f64| {
        if m > 0.0 {
            h_osc.min(0.5 * p.max(m))
        } else {
            h_osc
        }
    };
    quad::panels(&rule, end, MAX_PANELS, width, f).map_err(Error::Convergence)
}

/// `sin(r p) / r`, with its limit `p` on the coincidence axis.
#[inline]
fn sinc_factor(r: f64, p: f64) -> f64 {
    if r < COINCIDENCE_RADIUS {
        p
    } else {
        (r * p).sin() / r
    }
}

/// `(y cos y - sin y) / y^3` evaluated stably.
#[inline]
fn radial_derivative_kernel(y: f64) -> f64 {
    if y.abs() < 0.5 {
        // sum_k (-1)^k 2k y^(2k-2) / (2k+1)!
        let y2 = y * y;
        let mut term = -1.0 / 3.0;
        let mut acc = term;
        for k in 2..10 {
            let kf = k as f64;
            // ratio of consecutive coefficients
            term *= -y2 * kf / (kf - 1.0) / ((2.0 * kf) * (2.0 * kf + 1.0));
            acc += term;
        }
        acc
    } else {
        (y * y.cos() - y.sin()) / (y * y * y)
    }
}

/// Complex value of the scalar two-point function at `z`
/// (`Im z0 < 0`, real spatial part).
pub fn d_minus(m: Mass, z: &ComplexFourVector, q: &QuadratureConfig) -> Result<Complex64> {
    let rad = radial(z)?;
    let m = m.value();
    let (z0, r) = (rad.z0, rad.r);
    let val = integrate(m, rad, 1, q, |p| {
        let w = (p * p + m * m).sqrt();
        let phase = (-Complex64::i() * w * z0).exp();
        phase * (p / w * sinc_factor(r, p))
    })?;
    Ok(val / (4.0 * PI * PI))
}

/// `dD/dz^mu` for `mu = 0..3`, by differentiating under the integral.
pub fn d_minus_grad(
    m: Mass,
    z: &ComplexFourVector,
    q: &QuadratureConfig,
) -> Result<[Complex64; 4]> {
    let rad = radial(z)?;
    let m = m.value();
    let (z0, r) = (rad.z0, rad.r);
    let norm = 1.0 / (4.0 * PI * PI);

    let d0 = integrate(m, rad, 2, q, |p| {
        let w = (p * p + m * m).sqrt();
        (-Complex64::i() * w * z0).exp() * (p * sinc_factor(r, p))
    })? * (-Complex64::i() * norm);

    let mut grad = [
        d0,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    if r < COINCIDENCE_RADIUS {
        return Ok(grad);
    }
    // dD/dx^k = x^k * (1/r) dD/dr, and (1/r) d/dr [sin(rp)/r] = p^3 K(rp).
    let radial_over_r = integrate(m, rad, 3, q, |p| {
        let w = (p * p + m * m).sqrt();
        (-Complex64::i() * w * z0).exp() * (p / w * p * p * p * radial_derivative_kernel(r * p))
    })? * norm;
    let x = z.real();
    for k in 1..4 {
        grad[k] = radial_over_r * x[k];
    }
    Ok(grad)
}

/// `dD/dz0` evaluated with the `(-i w)` weight inserted into the
/// `d_minus` integrand as written, i.e. without the `p/w * w = p`
/// simplification used by [`d_minus_grad`].
pub fn d_minus_time_derivative_weighted(
    m: Mass,
    z: &ComplexFourVector,
    q: &QuadratureConfig,
) -> Result<Complex64> {
    let rad = radial(z)?;
    let m = m.value();
    let (z0, r) = (rad.z0, rad.r);
    let val = integrate(m, rad, 2, q, |p| {
        let w = (p * p + m * m).sqrt();
        let phase = (-Complex64::i() * w * z0).exp();
        phase * (p / w * sinc_factor(r, p)) * (-Complex64::i() * w)
    })?;
    Ok(val / (4.0 * PI * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_series_matches_closed_form_at_switch() {
        for y in [0.49999, 0.5, 0.50001, -0.5] {
            let closed = (y * f64::cos(y) - f64::sin(y)) / (y * y * y);
            let series = {
                let y2: f64 = y * y;
                let mut term = -1.0 / 3.0;
                let mut acc = term;
                for k in 2..10 {
                    let kf = k as f64;
                    term *= -y2 * kf / (kf - 1.0) / ((2.0 * kf) * (2.0 * kf + 1.0));
                    acc += term;
                }
                acc
            };
            assert!(
                (closed - series).abs() < 1e-13,
                "y={y}: {closed} vs {series}"
            );
            assert!((radial_derivative_kernel(y) - closed).abs() < 1e-13);
        }
        assert!((radial_derivative_kernel(0.0) + 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn cutoff_grows_logarithmically() {
        let a = cutoff_for(0.5, 1, 1e-14);
        let b = cutoff_for(0.5, 1, 1e-16);
        assert!(b > a && b - a < 15.0);
        assert!((cutoff_for(0.25, 1, 1e-14) - 2.0 * a).abs() < 1e-9);
    }

    #[test]
    fn rejects_non_damped_time() {
        let z = ComplexFourVector::from_real([0.0, 1.0, 0.0, 0.0]);
        let m = Mass::new(1.0).unwrap();
        assert!(matches!(
            d_minus(m, &z, &QuadratureConfig::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tiny_damping_exceeds_cutoff() {
        let z = ComplexFourVector::with_time_damping([0.0, 1.0, 0.0, 0.0], 1e-4);
        let m = Mass::new(1.0).unwrap();
        assert!(matches!(
            d_minus(m, &z, &QuadratureConfig::default()),
            Err(Error::Convergence(_))
        ));
    }
}
