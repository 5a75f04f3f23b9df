use num_complex::Complex64;

/// Coefficients `a_n` of a Wick power series `sum_n a_n :phi^n: / n!`.
/// Degrees past the stored prefix are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WickSeries {
    coeffs: Vec<Complex64>,
}

/// `ln n!`.
pub(crate) fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// `hi! / lo!`, exact while the product stays below 2^53.
fn falling_ratio(hi: usize, lo: usize) -> f64 {
    (lo + 1..=hi).map(|k| k as f64).product()
}

impl WickSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    /// `:phi^n:`, i.e. `a_n = n!` and every other coefficient zero.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(falling_ratio(n, 0), 0.0);
        Self { coeffs }
    }

    /// `:exp(g phi):`, `a_n = g^n` for `n <= max_degree`.
    pub fn exp_linear(g: Complex64, max_degree: usize) -> Self {
        let mut coeffs = Vec::with_capacity(max_degree + 1);
        let mut a = Complex64::new(1.0, 0.0);
        for _ in 0..=max_degree {
            coeffs.push(a);
            a *= g;
        }
        Self { coeffs }
    }

    /// `:exp(i g phi^2):`, `a_{2n} = (i g)^n (2n)! / n!`, odd coefficients zero,
    /// stored through `max_degree`.
    pub fn exp_square(g: f64, max_degree: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); max_degree + 1];
        for n in 0..=max_degree / 2 {
            coeffs[2 * n] = square_coeff(g, n, 0);
        }
        Self { coeffs }
    }

    /// Series of `:(d phi) phi^(k-1) exp(i g phi^2):` style fields built
    /// from `exp_square`: `b_{2n+shift} = (i g)^n (2n+shift)! / n!`.
    pub(crate) fn shifted_square(g: f64, shift: usize, max_degree: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); max_degree + 1];
        let mut n = 0;
        while 2 * n + shift <= max_degree {
            coeffs[2 * n + shift] = square_coeff(g, n, shift);
            n += 1;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// One past the highest non-zero coefficient.
    pub fn support_len(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .map_or(0, |k| k + 1)
    }
}

/// `(i g)^n (2n + shift)! / n!` (log form once the factorials get large).
fn square_coeff(g: f64, n: usize, shift: usize) -> Complex64 {
    if n == 0 {
        return Complex64::new(falling_ratio(shift, 0), 0.0);
    }
    if g == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let mag = if n + shift <= 40 {
        g.abs().powi(n as i32) * falling_ratio(2 * n + shift, n)
    } else {
        (n as f64 * g.abs().ln() + ln_factorial(2 * n + shift) - ln_factorial(n)).exp()
    };
    let sign = if g < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    // i^n
    let phase = match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    phase * (sign * mag)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_and_exponentials() {
        let m = WickSeries::monomial(4);
        assert_eq!(m.coeff(4), Complex64::new(24.0, 0.0));
        assert_eq!(m.coeff(3), Complex64::new(0.0, 0.0));
        assert_eq!(m.coeff(40), Complex64::new(0.0, 0.0));
        assert_eq!(m.support_len(), 5);

        let e = WickSeries::exp_linear(Complex64::new(0.0, 2.0), 3);
        assert_eq!(e.coeff(3), Complex64::new(0.0, -8.0));

        let s = WickSeries::exp_square(0.5, 6);
        assert_eq!(s.coeff(1), Complex64::new(0.0, 0.0));
        // (i/2) * 2!/1! = i
        assert!((s.coeff(2) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        // (i/2)^2 * 4!/2! = -3
        assert!((s.coeff(4) + 3.0).norm() < 1e-14);
        // (i/2)^3 * 6!/3! = -15 i
        assert!((s.coeff(6) - Complex64::new(0.0, -15.0)).norm() < 1e-13);
        let neg = WickSeries::exp_square(-0.5, 6);
        assert!((neg.coeff(6) - Complex64::new(0.0, 15.0)).norm() < 1e-13);
    }

    #[test]
    fn shifted_square_coefficients() {
        let b = WickSeries::shifted_square(0.5, 2, 6);
        // n = 0: 2!; n = 1: (i/2) 4!/1!; n = 2: (i/2)^2 6!/2!
        assert!((b.coeff(2) - 2.0).norm() < 1e-15);
        assert!((b.coeff(4) - Complex64::new(0.0, 12.0)).norm() < 1e-13);
        assert!((b.coeff(6) + 90.0).norm() < 1e-12);
        assert_eq!(b.coeff(3), Complex64::new(0.0, 0.0));
    }
}
