//! Light-cone geometry and the closed-form bounds that go with the
//! propagator estimates.

use std::f64::consts::{PI, SQRT_2};

use super::Mass;

/// Upper bound on `|D|` used by the sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `(2 pi eps)^-2`, valid on the whole plane `Im z0 = -eps`.
    Epsilon,
    /// `(2 pi)^-2 (1/a^2 + m sqrt(2) pi / (4a))` with `a = min |z0 -/+ |x||`.
    A,
}

/// The fundamental length attached to the coupling `l`:
/// `(1/2pi) (l^2 m sqrt2 / 8 + l sqrt(2 + 2 (m/8)^2 l^2))`.
///
/// This is the positive root of `2 l^2 (2pi)^-2 (1/a^2 + m sqrt2 pi/(4a)) = 1`.
pub fn ell_fundamental(m: Mass, l: f64) -> f64 {
    let m = m.value();
    let l = l.max(0.0);
    (l * l * m * SQRT_2 / 8.0 + l * (2.0 + 2.0 * (m / 8.0).powi(2) * l * l).sqrt()) / (2.0 * PI)
}

/// Euclidean distance from a real point to the closed double cone
/// `|x0| >= |x|`.
pub fn dist_to_lightcone(x: [f64; 4]) -> f64 {
    let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
    ((r - x[0].abs()) / SQRT_2).max(0.0)
}

/// Piecewise damping profile: `ell` near the cone, decaying to zero at
/// distance `ell`.
pub fn epsilon_deform(ell: f64, x: [f64; 4]) -> f64 {
    let d = dist_to_lightcone(x);
    if d <= ell / SQRT_2 {
        ell
    } else if d <= ell {
        (2.0 * ell * ell - 2.0 * d * d).max(0.0).sqrt()
    } else {
        0.0
    }
}

pub fn bound_estimate(kind: BoundKind, m: Mass, param: f64) -> f64 {
    match kind {
        BoundKind::Epsilon => (2.0 * PI * param).powi(-2),
        BoundKind::A => {
            (1.0 / (param * param) + m.value() * SQRT_2 * PI / (4.0 * param)) / (4.0 * PI * PI)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mass(v: f64) -> Mass {
        Mass::new(v).unwrap()
    }

    #[test]
    fn ell_fundamental_values() {
        assert!((ell_fundamental(mass(0.0), 1.0) - 1.0 / (SQRT_2 * PI)).abs() < 1e-15);
        assert!((ell_fundamental(mass(0.0), 1.0) - 0.225079).abs() < 1e-6);
        assert_eq!(ell_fundamental(mass(3.0), 0.0), 0.0);
        assert!((ell_fundamental(mass(1.0), 1.0) - 0.254966).abs() < 1e-6);
    }

    #[test]
    fn ell_fundamental_solves_the_bound_equation() {
        for &(m, l) in &[(0.0, 0.3), (1.0, 1.0), (2.0, 0.7), (0.5, 3.0)] {
            let a = ell_fundamental(mass(m), l);
            let lhs = 2.0 * l * l * bound_estimate(BoundKind::A, mass(m), a);
            assert!((lhs - 1.0).abs() < 1e-12, "m={m} l={l}: {lhs}");
        }
    }

    #[test]
    fn ell_fundamental_is_monotone() {
        let mut prev = 0.0;
        for k in 1..50 {
            let v = ell_fundamental(mass(1.0), k as f64 * 0.1);
            assert!(v > prev);
            prev = v;
        }
        let mut prev = 0.0;
        for k in 0..50 {
            let v = ell_fundamental(mass(k as f64 * 0.1), 0.8);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(dist_to_lightcone([0.0; 4]), 0.0);
        assert_eq!(dist_to_lightcone([2.0, 1.0, 0.0, 0.0]), 0.0);
        assert!(
            (dist_to_lightcone([0.0, 1.0, 0.0, 0.0]) - std::f64::consts::FRAC_1_SQRT_2).abs()
                < 1e-15
        );
    }

    /// Numeric projection onto the cone boundary `|s| = |v|`: minimizes
    /// the squared distance over the sheet parameter `u >= 0`, the sign
    /// of `s`, and the angle between `v` and the spatial part of `x`
    /// (golden-section in `u` on a coarse angle grid).
    fn projection_oracle(x: [f64; 4]) -> f64 {
        let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
        if x[0].abs() >= r {
            return 0.0;
        }
        let dist2 = |u: f64, s: f64, cos_a: f64| {
            (x[0] - s * u).powi(2) + r * r + u * u - 2.0 * r * u * cos_a
        };
        let golden = |f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64| {
            let g = (5f64.sqrt() - 1.0) / 2.0;
            for _ in 0..200 {
                let c = b - g * (b - a);
                let d = a + g * (b - a);
                if f(c) < f(d) {
                    b = d;
                } else {
                    a = c;
                }
            }
            f(0.5 * (a + b))
        };
        let mut best = f64::INFINITY;
        for s in [1.0, -1.0] {
            for k in 0..=32 {
                let cos_a = (std::f64::consts::PI * k as f64 / 32.0).cos();
                let f = |u: f64| dist2(u, s, cos_a);
                best = best.min(golden(&f, 0.0, 2.0 * (r + x[0].abs())));
            }
        }
        best.max(0.0).sqrt()
    }

    #[test]
    fn distance_matches_projection_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1000 {
            let x: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
            let d = dist_to_lightcone(x);
            let o = projection_oracle(x);
            assert!((d - o).abs() < 1e-10, "{x:?}: {d} vs {o}");
            let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
            assert!((x[0] + r).abs() >= SQRT_2 * d - 1e-12);
            assert!((x[0] - r).abs() >= SQRT_2 * d - 1e-12);
        }
    }

    #[test]
    fn epsilon_deform_branches() {
        let at = |d: f64| [0.0, d * SQRT_2, 0.0, 0.0];
        assert_eq!(epsilon_deform(1.0, [0.0; 4]), 1.0);
        assert!((epsilon_deform(1.0, at(0.9)) - 0.38f64.sqrt()).abs() < 1e-12);
        assert!((epsilon_deform(1.0, at(0.9)) - 0.61644).abs() < 1e-5);
        assert_eq!(epsilon_deform(1.0, at(1.0)), 0.0);
        assert_eq!(epsilon_deform(1.0, at(2.5)), 0.0);
    }

    #[test]
    fn epsilon_deform_is_continuous_and_bounded() {
        let ell = 0.7;
        let mut prev = epsilon_deform(ell, [0.0; 4]);
        for k in 1..=4000 {
            let d = k as f64 * 1e-3 * 0.25;
            let v = epsilon_deform(ell, [0.0, d * SQRT_2, 0.0, 0.0]);
            assert!((0.0..=ell).contains(&v));
            assert!((v - prev).abs() < 0.05, "jump at d={d}");
            prev = v;
        }
    }

    #[test]
    fn bound_examples() {
        let m = mass(1.0);
        assert!((bound_estimate(BoundKind::Epsilon, m, 1.0 / (2.0 * PI)) - 1.0).abs() < 1e-14);
        assert!((bound_estimate(BoundKind::Epsilon, m, 0.5) - 0.101321).abs() < 1e-6);
        let a = 0.37;
        assert!(
            (bound_estimate(BoundKind::A, mass(0.0), a) - (2.0 * PI * a).powi(-2)).abs() < 1e-14
        );
    }
}
