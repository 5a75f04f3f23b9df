//! Pole-plus-remainder form of the two-point function,
//!
//! ```text
//! D(z, r) = -exp(-i m z) / (4 pi^2 (z^2 - r^2))
//!           - (i m / (8 pi^2)) [ g(z, -r) / (z - r) + g(z, r) / (z + r) ]
//! ```
//!
//! with the auxiliary integral
//! `g(z, x) = int_0^inf exp(-i w z - i p x) m / (w (w + p)) dp`.
//!
//! The `g` integrals are taken along a ray `p = s exp(i phi)` tilted so the
//! oscillating factor `exp(-i p (z + x))` decays, which keeps the
//! representation usable on the real boundary `Im z = 0` away from the cone.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::{ComplexFourVector, Mass, QuadratureConfig, COINCIDENCE_RADIUS, SINGULARITY_FLOOR};
use crate::error::{Error, Result};
use crate::quad;

const MAX_PANELS: usize = 1_000_000;

/// `g`, `dg/dz` and `dg/dx` at one point.
#[derive(Debug, Clone, Copy)]
struct GParts {
    g: Complex64,
    dz: Complex64,
    dx: Complex64,
}

fn g_parts(m: f64, z: Complex64, x: f64, q: &QuadratureConfig, derivs: bool) -> Result<GParts> {
    let zero = Complex64::new(0.0, 0.0);
    if z.im > 0.0 {
        return Err(Error::Domain(format!("g needs Im z <= 0, got {}", z.im)));
    }
    if m == 0.0 {
        return Ok(GParts {
            g: zero,
            dz: zero,
            dx: zero,
        });
    }
    q.validate()?;
    let c = z.re + x;
    let eps = -z.im;
    if c == 0.0 && eps == 0.0 {
        // z + x = 0: substituting p = m sinh u gives int_0^1 exp(-i m z v) dv.
        if derivs {
            return Err(Error::Singularity {
                distance: 0.0,
                floor: SINGULARITY_FLOOR,
            });
        }
        let a = Complex64::i() * m * z;
        let g = if a.norm() < 1e-8 {
            Complex64::new(1.0, 0.0) - a / 2.0
        } else {
            (Complex64::new(1.0, 0.0) - (-a).exp()) / a
        };
        return Ok(GParts {
            g,
            dz: zero,
            dx: zero,
        });
    }

    let theta = if m * z.norm() > 0.0 {
        (2.0 / (m * z.norm())).min(FRAC_PI_4)
    } else {
        FRAC_PI_4
    };
    let phi = if c > 0.0 {
        -theta
    } else if c < 0.0 {
        theta
    } else {
        0.0
    };
    let kappa = c.abs() * phi.sin().abs() + eps * phi.cos();
    let dir = Complex64::from_polar(1.0, phi);
    let depth = (1.0 / (q.rel_tol * 1e-6)).ln();
    let end = depth / kappa + m;

    let zx = z + x;
    let zx_norm = zx.norm();
    let z_norm = z.norm();
    let m2 = m * m;
    let width = |s: f64| {
        let rate = zx_norm + z_norm * if s > m { m2 / (s * s) } else { 1.0 };
        let h = 0.5 * s.max(m);
        if rate > 0.0 {
            h.min(2.0 / rate)
        } else {
            h
        }
    };

    let rule = quad::gauss_legendre(q.nodes);
    let mut acc = [zero; 3];
    let mut s = 0.0;
    let mut count = 0usize;
    while s < end {
        let s1 = (s + width(s)).min(end);
        let half = 0.5 * (s1 - s);
        let mid = 0.5 * (s1 + s);
        for (node, w) in rule.nodes.iter().zip(&rule.weights) {
            let p = dir * (mid + half * node);
            let omega = (p * p + m2).sqrt();
            let sum = omega + p;
            let phase = (-Complex64::i() * (p * zx + z * (m2 / sum))).exp();
            let base = phase * (m / (omega * sum)) * dir * (w * half);
            acc[0] += base;
            if derivs {
                acc[1] += base * omega;
                acc[2] += base * p;
            }
        }
        s = s1;
        count += 1;
        if count > MAX_PANELS {
            return Err(Error::Convergence(format!(
                "g quadrature needs more than {MAX_PANELS} panels (z = {z}, x = {x})"
            )));
        }
    }
    let mi = -Complex64::i();
    Ok(GParts {
        g: acc[0],
        dz: acc[1] * mi,
        dx: acc[2] * mi,
    })
}

/// The auxiliary integral `g_m(z, x)` for `Im z <= 0`.
pub fn g_m(m: Mass, z: Complex64, x: f64, q: &QuadratureConfig) -> Result<Complex64> {
    Ok(g_parts(m.value(), z, x, q, false)?.g)
}

fn split(z: &ComplexFourVector) -> Result<(Complex64, f64)> {
    z.require_real_spatial()?;
    let z0 = z.time();
    if z0.im > 0.0 {
        return Err(Error::Domain(format!(
            "decomposition needs Im z0 <= 0, got {}",
            z0.im
        )));
    }
    let r = z.spatial_norm();
    let distance = (z0 - r).norm().min((z0 + r).norm());
    if distance < SINGULARITY_FLOOR {
        return Err(Error::Singularity {
            distance,
            floor: SINGULARITY_FLOOR,
        });
    }
    Ok((z0, r))
}

fn remainder_prefactor(m: f64) -> Complex64 {
    Complex64::new(0.0, -m / (8.0 * PI * PI))
}

/// Two-point function from the pole-plus-remainder decomposition.
/// Accepts `Im z0 <= 0`, including real points off the light cone.
pub fn d_minus_decomposed(
    m: Mass,
    z: &ComplexFourVector,
    q: &QuadratureConfig,
) -> Result<Complex64> {
    let (z0, r) = split(z)?;
    let mv = m.value();
    let pole = -(-Complex64::i() * mv * z0).exp() / (4.0 * PI * PI * (z0 * z0 - r * r));
    if mv == 0.0 {
        return Ok(pole);
    }
    let g1 = g_parts(mv, z0, -r, q, false)?.g;
    let g2 = g_parts(mv, z0, r, q, false)?.g;
    Ok(pole + remainder_prefactor(mv) * (g1 / (z0 - r) + g2 / (z0 + r)))
}

/// Gradient `dD/dz^mu` of the decomposed form.
pub fn d_minus_decomposed_grad(
    m: Mass,
    z: &ComplexFourVector,
    q: &QuadratureConfig,
) -> Result<[Complex64; 4]> {
    let (z0, r) = split(z)?;
    let mv = m.value();
    let e = (-Complex64::i() * mv * z0).exp();
    let den = z0 * z0 - r * r;
    let norm = 4.0 * PI * PI * den * den;
    let mut d_z = e * (Complex64::i() * mv * den + 2.0 * z0) / norm;
    let mut d_r = -e * (2.0 * r) / norm;
    if mv > 0.0 {
        let a = g_parts(mv, z0, -r, q, true)?;
        let b = g_parts(mv, z0, r, q, true)?;
        let (u, v) = (z0 - r, z0 + r);
        let k = remainder_prefactor(mv);
        d_z += k * (a.dz / u - a.g / (u * u) + b.dz / v - b.g / (v * v));
        d_r += k * (-a.dx / u + a.g / (u * u) + b.dx / v - b.g / (v * v));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut grad = [d_z, zero, zero, zero];
    if r >= COINCIDENCE_RADIUS {
        let x = z.real();
        for k in 1..4 {
            grad[k] = d_r * (x[k] / r);
        }
    }
    Ok(grad)
}

/// Boundary value `lim_{eps -> 0+} D(x0 - i eps, x)` at a real point, by
/// polynomial extrapolation of degree `order` through the first `order + 1`
/// damping values of `q` (`1e-2, 1e-3, ...`).
pub fn boundary_value_order(
    m: Mass,
    x: [f64; 4],
    q: &QuadratureConfig,
    order: usize,
) -> Result<Complex64> {
    extrapolate(x, q, order, |z| d_minus_decomposed(m, z, q).map(|v| [v])).map(|[v]| v)
}

/// Boundary value using all configured damping values.
pub fn boundary_value(m: Mass, x: [f64; 4], q: &QuadratureConfig) -> Result<Complex64> {
    let order = q.extrapolation_epsilons().len() - 1;
    boundary_value_order(m, x, q, order)
}

/// Extrapolated boundary value of the gradient.
pub fn boundary_grad(m: Mass, x: [f64; 4], q: &QuadratureConfig) -> Result<[Complex64; 4]> {
    let order = q.extrapolation_epsilons().len() - 1;
    extrapolate(x, q, order, |z| d_minus_decomposed_grad(m, z, q))
}

fn extrapolate<const N: usize, F>(
    x: [f64; 4],
    q: &QuadratureConfig,
    order: usize,
    mut f: F,
) -> Result<[Complex64; N]>
where
    F: FnMut(&ComplexFourVector) -> Result<[Complex64; N]>,
{
    let all = q.extrapolation_epsilons();
    if order + 1 > all.len() {
        return Err(Error::Precondition(format!(
            "extrapolation order {order} needs {} damping values, have {}",
            order + 1,
            all.len()
        )));
    }
    let eps = &all[..=order];
    let mut samples = Vec::with_capacity(eps.len());
    for &e in eps {
        samples.push(f(&ComplexFourVector::with_time_damping(x, e))?);
    }
    Ok(std::array::from_fn(|k| {
        let vals: Vec<Complex64> = samples.iter().map(|s| s[k]).collect();
        quad::extrapolate_to_zero(eps, &vals)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mass(v: f64) -> Mass {
        Mass::new(v).unwrap()
    }

    /// `g` in the hyperbolic variable, `int_0^U e^{-u} exp(-i m (z cosh u + x sinh u)) du`,
    /// by composite Simpson on a fine grid. Only usable when `Im z < 0`
    /// damps the tail fast enough.
    fn g_hyperbolic_oracle(m: f64, z: Complex64, x: f64) -> Complex64 {
        let upper = 12.0;
        let n = 200_000;
        let h = upper / n as f64;
        let f = |u: f64| {
            let e = -Complex64::i() * m * (z * u.cosh() + x * u.sinh());
            e.exp() * (-u).exp()
        };
        let mut acc = f(0.0) + f(upper);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += f(k as f64 * h) * w;
        }
        acc * (h / 3.0)
    }

    #[test]
    fn g_at_origin_is_one() {
        let q = QuadratureConfig::default();
        for m in [0.5, 1.0, 2.0] {
            let g = g_m(mass(m), Complex64::new(0.0, 0.0), 0.0, &q).unwrap();
            assert!((g - 1.0).norm() < 1e-14, "m={m}: {g}");
            assert!(g.norm() <= 2f64.sqrt() * PI / 4.0);
        }
    }

    #[test]
    fn g_vanishes_for_zero_mass() {
        let q = QuadratureConfig::default();
        let g = g_m(mass(0.0), Complex64::new(0.3, -0.2), 0.7, &q).unwrap();
        assert_eq!(g, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn g_matches_hyperbolic_oracle() {
        let q = QuadratureConfig::default();
        for &(m, z, x) in &[
            (1.0, Complex64::new(0.0, -0.5), 0.0),
            (1.0, Complex64::new(1.0, -0.2), 0.5),
            (2.0, Complex64::new(-0.7, -0.3), 1.1),
            (0.5, Complex64::new(0.2, -1.0), -2.0),
        ] {
            let a = g_m(mass(m), z, x, &q).unwrap();
            let b = g_hyperbolic_oracle(m, z, x);
            assert!((a - b).norm() < 1e-9, "m={m} z={z} x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn g_on_light_ray_matches_closed_form() {
        // z + x = 0 with real z reduces to (1 - e^{-imz}) / (imz); approach
        // it along c != 0 to exercise the rotated ray.
        let q = QuadratureConfig::default();
        let (m, z) = (1.3, 0.8);
        let exact =
            (Complex64::new(1.0, 0.0) - (-Complex64::i() * m * z).exp()) / (Complex64::i() * m * z);
        let direct = g_m(mass(m), Complex64::new(z, 0.0), -z, &q).unwrap();
        assert!((direct - exact).norm() < 1e-14);
        let near = g_m(mass(m), Complex64::new(z, 0.0), -z + 1e-7, &q).unwrap();
        assert!((near - exact).norm() < 1e-5, "{near} vs {exact}");
    }

    #[test]
    fn g_rejects_upper_half_plane() {
        let q = QuadratureConfig::default();
        assert!(matches!(
            g_m(mass(1.0), Complex64::new(0.0, 0.1), 0.0, &q),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn massless_decomposition_is_the_pole() {
        let q = QuadratureConfig::default();
        let z = ComplexFourVector::with_time_damping([0.3, 0.4, 0.0, 0.0], 0.2);
        let v = d_minus_decomposed(mass(0.0), &z, &q).unwrap();
        let z0 = z.time();
        let exact = -1.0 / (4.0 * PI * PI * (z0 * z0 - 0.16));
        assert!((v - exact).norm() < 1e-15);
    }

    #[test]
    fn singular_points_are_rejected() {
        let q = QuadratureConfig::default();
        let z = ComplexFourVector::from_real([1.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            d_minus_decomposed(mass(1.0), &z, &q),
            Err(Error::Singularity { .. })
        ));
        let z = ComplexFourVector::zero();
        assert!(matches!(
            d_minus_decomposed(mass(1.0), &z, &q),
            Err(Error::Singularity { .. })
        ));
    }

    #[test]
    fn extrapolation_reproduces_real_boundary_at_spacelike_points() {
        let q = QuadratureConfig::default();
        let m = mass(1.0);
        for x in [
            [0.0, 1.0, 0.0, 0.0],
            [0.4, 0.3, -0.9, 0.2],
            [-1.0, 2.0, 0.5, 0.0],
        ] {
            let direct = d_minus_decomposed(m, &ComplexFourVector::from_real(x), &q).unwrap();
            let extra = boundary_value(m, x, &q).unwrap();
            assert!(
                (direct - extra).norm() <= 1e-8 * direct.norm(),
                "{x:?}: {direct} vs {extra}"
            );
        }
    }
}
