//! Sine and cosine integrals with the auxiliary functions `f`, `g`.
//!
//! Conventions: `si(x) = Si(x) - pi/2`, `ci(x) = Ci(x)`, and
//!
//! ```text
//! f(x) = ci(x) sin x - si(x) cos x
//! g(x) = -ci(x) cos x - si(x) sin x
//! ```
//!
//! Power series below [`SERIES_LIMIT`], continued fraction for
//! `e^{ix} E1(ix) = g(x) - i f(x)` above it.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const SERIES_LIMIT: f64 = 6.0;
const MAX_TERMS: usize = 200;

/// `Si(x)` by its Taylor series.
pub(crate) fn sine_integral_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut sum = T::zero();
    // term = (-1)^k x^{2k+1} / (2k+1)!
    let mut term = x;
    let eps = T::epsilon();
    for k in 0..MAX_TERMS {
        let denom = T::int(2 * k as i64 + 1);
        let contrib = term / denom;
        sum += contrib;
        if contrib.abs() <= eps * sum.abs() {
            break;
        }
        let a = T::int(2 * k as i64 + 2);
        let b = T::int(2 * k as i64 + 3);
        term = -term * x2 / (a * b);
    }
    sum
}

/// `Ci(x) - gamma - ln x` by its Taylor series.
pub(crate) fn cosine_integral_series_part<T: Real>(x: T) -> T {
    let x2 = x * x;
    let mut sum = T::zero();
    // term = (-1)^k x^{2k} / (2k)!
    let mut term = -x2 / T::lit(2.0);
    let eps = T::epsilon();
    for k in 1..MAX_TERMS {
        let contrib = term / T::int(2 * k as i64);
        sum += contrib;
        if contrib.abs() <= eps * sum.abs() {
            break;
        }
        let a = T::int(2 * k as i64 + 1);
        let b = T::int(2 * k as i64 + 2);
        term = -term * x2 / (a * b);
    }
    sum
}

/// Continued fraction for `e^{ix} E1(ix)`, valid for `x` beyond a few units.
fn exp_e1_imaginary<T: Real>(x: T) -> Result<Complex<T>> {
    let tiny = T::min_positive_value() / T::epsilon();
    let eps = T::epsilon();
    let mut b = Complex::new(T::one(), x);
    let mut c = Complex::new(T::one() / tiny, T::zero());
    let mut d = Complex::new(T::one(), T::zero()) / b;
    let mut h = d;
    for i in 2..MAX_TERMS {
        let a = -T::int(((i - 1) * (i - 1)) as i64);
        b += Complex::new(T::lit(2.0), T::zero());
        d = Complex::new(T::one(), T::zero()) / (d * a + b);
        c = b + Complex::new(a, T::zero()) / c;
        let del = c * d;
        h *= del;
        if (del.re - T::one()).abs() + del.im.abs() <= eps {
            return Ok(h);
        }
    }
    Err(Error::numerical("special", "sine/cosine integral continued fraction did not converge"))
}

/// `(si(x), ci(x))` for `x > 0`.
pub fn sici<T: Real>(x: T) -> Result<(T, T)> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::domain("special", format!("ci requires x > 0, got {x}")));
    }
    if x <= T::lit(SERIES_LIMIT) {
        let si = sine_integral_series(x) - T::FRAC_PI_2();
        let ci = T::euler_gamma() + x.ln() + cosine_integral_series_part(x);
        Ok((si, ci))
    } else {
        let (f, g) = auxiliary_large(x)?;
        let (s, c) = x.sin_cos();
        Ok((-f * c - g * s, f * s - g * c))
    }
}

/// `si(x) = Si(x) - pi/2`, defined for `x >= 0`.
pub fn sine_integral_si<T: Real>(x: T) -> Result<T> {
    if x == T::zero() {
        return Ok(-T::FRAC_PI_2());
    }
    if x < T::zero() || x.is_nan() {
        return Err(Error::domain("special", format!("si requires x >= 0, got {x}")));
    }
    sici(x).map(|(si, _)| si)
}

/// Cosine integral `Ci(x)`, `x > 0`.
pub fn cosine_integral_ci<T: Real>(x: T) -> Result<T> {
    sici(x).map(|(_, ci)| ci)
}

fn auxiliary_large<T: Real>(x: T) -> Result<(T, T)> {
    let h = exp_e1_imaginary(x)?;
    Ok((-h.im, h.re))
}

/// Auxiliary functions `(f(x), g(x))`, `x > 0`.
pub fn auxiliary_fg<T: Real>(x: T) -> Result<(T, T)> {
    if x > T::lit(SERIES_LIMIT) && x.is_finite() {
        return auxiliary_large(x);
    }
    let (si, ci) = sici(x)?;
    let (s, c) = x.sin_cos();
    Ok((ci * s - si * c, -ci * c - si * s))
}

/// `f(x) - pi/2` without cancellation at small `x`.
pub(crate) fn aux_f_minus_half_pi<T: Real>(x: T) -> Result<T> {
    if x > T::lit(SERIES_LIMIT) {
        return auxiliary_large(x).map(|(f, _)| f - T::FRAC_PI_2());
    }
    let (s, c) = x.sin_cos();
    let si_full = sine_integral_series(x);
    let ci = T::euler_gamma() + x.ln() + cosine_integral_series_part(x);
    let half = (x * T::lit(0.5)).sin();
    Ok(ci * s - si_full * c - T::PI() * half * half)
}
