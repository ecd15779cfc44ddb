//! Photon-propagator kernels in the radial variable.
//!
//! With `x = |omega| r` (or `z = y r`):
//!
//! ```text
//! f(x)  = (1 - e^{ix}(1 - ix)) / x^2
//! ft(z) = (e^{-z}(1 + z) - 1) / z^2
//! Phi1  = [f_aux(x) + s pi/2] / x - theta pi e^{ix} / x
//! Phi2  = -s [f_aux(x) - pi/2 + x + x g_aux(x)] / x^2 - pi/4 - theta pi f(x)
//! ```
//!
//! where `s = sign(e_a - e_n)`, `theta = theta(e_a - |e_n|)`, `x = Delta r` and
//! `f_aux`, `g_aux` are the sine/cosine-integral auxiliary functions.

use num_complex::Complex;

use super::sici::{aux_f_minus_half_pi, auxiliary_fg, cosine_integral_series_part};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Below this value of the combined argument the kernels use power series.
pub const SERIES_SWITCH: f64 = 0.1;
const SERIES_TERMS: usize = 18;

/// Position of an intermediate level relative to the reference level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `e_n < e_a`, i.e. `sign(e_a - e_n) = +1`.
    Below,
    /// `e_n > e_a`.
    Above,
}

impl Side {
    pub fn of<T: Real>(reference: T, level: T) -> Self {
        if level < reference {
            Side::Below
        } else {
            Side::Above
        }
    }

    pub fn sign<T: Real>(self) -> T {
        match self {
            Side::Below => T::one(),
            Side::Above => -T::one(),
        }
    }
}

fn check_radius<T: Real>(r: T) -> Result<()> {
    if r > T::zero() && r.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("special", format!("radius must be positive, got {r}")))
    }
}

/// `f(omega, r)`; only `|omega|` enters.
pub fn kernel_f<T: Real>(omega: T, r: T) -> Result<Complex<T>> {
    check_radius(r)?;
    Ok(f_kernel(omega.abs() * r))
}

/// `ft(y, r)`.
pub fn kernel_ftilde<T: Real>(y: T, r: T) -> Result<T> {
    check_radius(r)?;
    if y < T::zero() {
        return Err(Error::invalid("special", "y must be non-negative"));
    }
    Ok(ftilde_kernel(y * r))
}

/// `f` as a function of `x = |omega| r >= 0`.
pub fn f_kernel<T: Real>(x: T) -> Complex<T> {
    if x < T::lit(SERIES_SWITCH) {
        f_kernel_series(x)
    } else {
        f_kernel_direct(x)
    }
}

pub(crate) fn f_kernel_direct<T: Real>(x: T) -> Complex<T> {
    let (s, c) = x.sin_cos();
    // e^{ix}(1 - ix) = (c + x s) + i (s - x c)
    let re = T::one() - (c + x * s);
    let im = -(s - x * c);
    let x2 = x * x;
    Complex::new(re / x2, im / x2)
}

pub(crate) fn f_kernel_series<T: Real>(x: T) -> Complex<T> {
    // sum_{k>=2} i^k (k-1)/k! x^{k-2}
    let mut re = T::zero();
    let mut im = T::zero();
    let mut inv_fact = T::lit(0.5);
    let mut pow = T::one();
    for k in 2..SERIES_TERMS + 2 {
        let c = T::int(k as i64 - 1) * inv_fact * pow;
        match k % 4 {
            0 => re += c,
            1 => im += c,
            2 => re -= c,
            _ => im -= c,
        }
        pow *= x;
        inv_fact /= T::int(k as i64 + 1);
    }
    Complex::new(re, im)
}

/// `ft` as a function of `z = y r >= 0`.
pub fn ftilde_kernel<T: Real>(z: T) -> T {
    if z < T::lit(SERIES_SWITCH) {
        ftilde_kernel_series(z)
    } else {
        ftilde_kernel_direct(z)
    }
}

pub(crate) fn ftilde_kernel_direct<T: Real>(z: T) -> T {
    ((-z).exp() * (T::one() + z) - T::one()) / (z * z)
}

pub(crate) fn ftilde_kernel_series<T: Real>(z: T) -> T {
    // sum_{k>=2} (-1)^k (1-k)/k! z^{k-2}
    let mut sum = T::zero();
    let mut inv_fact = T::lit(0.5);
    let mut pow = T::one();
    for k in 2..SERIES_TERMS + 2 {
        let c = T::int(1 - k as i64) * inv_fact * pow;
        if k % 2 == 0 {
            sum += c;
        } else {
            sum -= c;
        }
        pow *= z;
        inv_fact /= T::int(k as i64 + 1);
    }
    sum
}

fn check_phi_args<T: Real>(delta: T, r: T, open: bool, side: Side) -> Result<()> {
    check_radius(r)?;
    if !(delta > T::zero()) || !delta.is_finite() {
        return Err(Error::invalid("special", format!("level spacing must be positive, got {delta}")));
    }
    if open && side == Side::Above {
        return Err(Error::invalid("special", "an open channel must lie below the reference level"));
    }
    Ok(())
}

/// `Phi1(r)` for level spacing `delta`; `open` is `theta(e_a - |e_n|) = 1`.
pub fn phi1<T: Real>(delta: T, r: T, open: bool, side: Side) -> Result<Complex<T>> {
    check_phi_args(delta, r, open, side)?;
    phi1_kernel(delta * r, open, side)
}

/// `Phi2(r)` for level spacing `delta`.
pub fn phi2<T: Real>(delta: T, r: T, open: bool, side: Side) -> Result<Complex<T>> {
    check_phi_args(delta, r, open, side)?;
    phi2_kernel(delta * r, open, side)
}

/// `Phi1` as a function of `x = Delta r > 0`.
pub fn phi1_kernel<T: Real>(x: T, open: bool, side: Side) -> Result<Complex<T>> {
    let base = aux_f_minus_half_pi(x)?;
    let mut bracket = Complex::new(base, T::zero());
    if open {
        // the Below shift pi combined with -pi e^{ix}:
        // pi (1 - e^{ix}) = 2 pi sin^2(x/2) - i pi sin x
        let h = (x * T::lit(0.5)).sin();
        bracket.re += T::lit(2.0) * T::PI() * h * h;
        bracket.im -= T::PI() * x.sin();
    } else if side == Side::Below {
        bracket.re += T::PI();
    }
    Ok(bracket / x)
}

/// `Phi2` as a function of `x = Delta r > 0`.
pub fn phi2_kernel<T: Real>(x: T, open: bool, side: Side) -> Result<Complex<T>> {
    let b_over_x2 = if x < T::lit(SERIES_SWITCH) {
        phi2_bracket_series(x)
    } else {
        phi2_bracket_direct(x)?
    };
    let mut value = Complex::new(-side.sign::<T>() * b_over_x2 - T::FRAC_PI_4(), T::zero());
    if open {
        value -= f_kernel(x) * T::PI();
    }
    Ok(value)
}

/// `[f_aux - pi/2 + x + x g_aux] / x^2` from the auxiliary functions.
pub(crate) fn phi2_bracket_direct<T: Real>(x: T) -> Result<T> {
    let f_shift = aux_f_minus_half_pi(x)?;
    let (_, g) = auxiliary_fg(x)?;
    Ok((f_shift + x + x * g) / (x * x))
}

/// Same bracket regrouped as
/// `Ci (sin x - x cos x) + [x - Si (cos x + x sin x)] + pi/2 (cos x - 1 + x sin x)`,
/// every group expanded so no leading terms cancel.
pub(crate) fn phi2_bracket_series<T: Real>(x: T) -> T {
    let x2 = x * x;
    let ci = T::euler_gamma() + x.ln() + cosine_integral_series_part(x);
    // Coefficients of Si(x)/x = sum s_k x^{2k} and cos x + x sin x = sum c_j x^{2j}.
    const N: usize = 10;
    let mut s = [T::zero(); N];
    let mut c = [T::zero(); N];
    let mut fact = T::one(); // (2k)!
    for k in 0..N {
        if k > 0 {
            fact *= T::int((2 * k - 1) as i64) * T::int((2 * k) as i64);
        }
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let odd_fact = fact * T::int(2 * k as i64 + 1); // (2k+1)!
        s[k] = sign / (T::int(2 * k as i64 + 1) * odd_fact);
        c[k] = sign * T::int(1 - 2 * k as i64) / fact;
    }
    // sin x - x cos x = sum_{k>=1} (-1)^{k+1} 2k x^{2k+1}/(2k+1)!
    let mut sin_minus = T::zero();
    // x - Si (cos + x sin) = -sum_{n>=1} x^{2n+1} sum_{k+j=n} s_k c_j
    let mut si_group = T::zero();
    // cos x - 1 + x sin x = sum_{j>=1} c_j x^{2j}
    let mut cos_group = T::zero();
    let mut pow = T::one(); // x^{2n-2}
    let mut odd_fact = T::lit(6.0); // (2n+1)!
    for n in 1..N {
        let sign = if n % 2 == 1 { T::one() } else { -T::one() };
        sin_minus += sign * T::int(2 * n as i64) / odd_fact * pow;
        let d: T = (0..=n).map(|k| s[k] * c[n - k]).sum();
        si_group -= d * pow;
        cos_group += c[n] * pow;
        pow *= x2;
        odd_fact *= T::int(2 * n as i64 + 2) * T::int(2 * n as i64 + 3);
    }
    // groups divided by x^2: first two carry an extra x
    ci * sin_minus * x + si_group * x + T::FRAC_PI_2() * cos_group
}
