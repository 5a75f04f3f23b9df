use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A function holomorphic on the strip `|Im z| < half_width` and rapidly
/// decreasing along horizontal lines (the latter is not checked).
#[derive(Clone)]
pub struct StripTestFunction {
    pub name: String,
    pub half_width: f64,
    f: Evaluator,
}

impl fmt::Debug for StripTestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StripTestFunction")
            .field("name", &self.name)
            .field("half_width", &self.half_width)
            .finish()
    }
}

impl StripTestFunction {
    pub fn new<F>(name: impl Into<String>, half_width: f64, f: F) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        if !(half_width > 0.0) {
            return Err(Error::Domain(format!(
                "half-width must be positive, got {half_width}"
            )));
        }
        Ok(Self {
            name: name.into(),
            half_width,
            f: Arc::new(f),
        })
    }

    /// `sech z`, poles at `+/- i pi/2`.
    pub fn sech() -> Self {
        Self::new("sech", FRAC_PI_2, |z: Complex64| 1.0 / z.cosh()).expect("positive half-width")
    }

    /// `exp(-z^2)`, entire.
    pub fn gaussian() -> Self {
        Self::new("gaussian", f64::INFINITY, |z: Complex64| (-z * z).exp())
            .expect("positive half-width")
    }

    /// `exp z`, entire (not decreasing; useful for exact coefficients).
    pub fn exp() -> Self {
        Self::new("exp", f64::INFINITY, |z: Complex64| z.exp()).expect("positive half-width")
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.f)(z)
    }

    pub fn is_entire(&self) -> bool {
        self.half_width.is_infinite()
    }

    /// Largest Cauchy-Riemann defect `|f_y - i f_x| / max(|f_x|, 1)` over
    /// `samples` points spread on the strip.
    pub fn cauchy_riemann_defect(&self, samples: usize) -> f64 {
        let h = 1e-5;
        let span = if self.is_entire() {
            2.0
        } else {
            0.9 * self.half_width
        };
        let mut worst: f64 = 0.0;
        for k in 0..samples {
            let t = (k as f64 + 0.5) / samples as f64;
            let z = Complex64::new(
                4.0 * t - 2.0,
                span * (2.0 * (t * 7.0 * PI).sin() - 1.0) * 0.5,
            );
            let fx = (self.eval(z + h) - self.eval(z - h)) / (2.0 * h);
            let fy = (self.eval(z + Complex64::new(0.0, h))
                - self.eval(z - Complex64::new(0.0, h)))
                / (2.0 * h);
            worst = worst.max((fy - Complex64::i() * fx).norm() / fx.norm().max(1.0));
        }
        worst
    }
}
