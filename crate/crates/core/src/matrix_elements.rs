//! Reduced matrix elements of the odd rank-1 operators `alpha phi(r)`,
//! `n phi(r)`, `p`, `D(omega)` and `S(y)` between basis eigenstates.
//!
//! Every element is `(bra || X || ket)` in the convention of
//! [`crate::angular`]; contract a pair with [`crate::angular::msum_weight`]
//! to obtain the magnetic sum `sum_m <a|X|n><n|Y|a>`.

use std::ops::{Add, Mul};

use num_complex::Complex;
use num_traits::Zero;

use crate::angular::{alpha_angular_factors, couples, n_angular_factors, KappaChannel};
use crate::basis::DiracSpectrum;
use crate::scalar::Real;
use crate::special::{f_kernel, ftilde_kernel};

/// One eigenstate of a [`DiracSpectrum`].
#[derive(Debug, Clone, Copy)]
pub struct State<'a, T> {
    pub spectrum: &'a DiracSpectrum<T>,
    pub index: usize,
}

impl<'a, T: Real> State<'a, T> {
    pub fn new(spectrum: &'a DiracSpectrum<T>, index: usize) -> Self {
        assert!(index < spectrum.len(), "state index {index} out of range");
        Self { spectrum, index }
    }

    pub fn energy(&self) -> T {
        self.spectrum.energies()[self.index]
    }

    pub fn channel(&self) -> &KappaChannel {
        self.spectrum.channel()
    }

    pub fn large(&self) -> &'a [T] {
        self.spectrum.large(self.index)
    }

    pub fn small(&self) -> &'a [T] {
        self.spectrum.small(self.index)
    }
}

/// Values a radial kernel may take at the quadrature nodes.
pub trait KernelValue<T>: Copy + Zero + Add<Output = Self> + Mul<T, Output = Self> + Into<Complex<T>> {}

impl<T: Real> KernelValue<T> for T {}
impl<T: Real> KernelValue<T> for Complex<T> {}

fn same_grid<T: Real>(bra: &State<'_, T>, ket: &State<'_, T>) {
    assert!(
        bra.spectrum.nodes().len() == ket.spectrum.nodes().len(),
        "matrix elements need both states on one radial basis"
    );
}

/// `int x(r) y(r) phi(r) dr` over the shared quadrature.
pub fn radial_integral<T: Real, K: KernelValue<T>>(weights: &[T], x: &[T], y: &[T], phi: &[K]) -> K {
    let mut acc = K::zero();
    for q in 0..weights.len() {
        acc = acc + phi[q] * (weights[q] * x[q] * y[q]);
    }
    acc
}

/// `(bra || alpha phi(r) || ket)`; `phi` is tabulated at the quadrature nodes.
pub fn me_alpha_phi<T: Real, K: KernelValue<T>>(bra: &State<'_, T>, ket: &State<'_, T>, phi: &[K]) -> Complex<T> {
    same_grid(bra, ket);
    if !couples(bra.channel().kappa, ket.channel().kappa) {
        return Complex::zero();
    }
    let (c_gf, c_fg) = alpha_angular_factors::<T>(bra.channel(), ket.channel());
    let w = bra.spectrum.weights();
    let mut out = Complex::zero();
    if !c_gf.is_zero() {
        out += c_gf * radial_integral(w, bra.large(), ket.small(), phi).into();
    }
    if !c_fg.is_zero() {
        out += c_fg * radial_integral(w, bra.small(), ket.large(), phi).into();
    }
    out
}

/// `(bra || n phi(r) || ket)`.
pub fn me_n_phi<T: Real, K: KernelValue<T>>(bra: &State<'_, T>, ket: &State<'_, T>, phi: &[K]) -> Complex<T> {
    same_grid(bra, ket);
    if !couples(bra.channel().kappa, ket.channel().kappa) {
        return Complex::zero();
    }
    let (c_gg, c_ff) = n_angular_factors::<T>(bra.channel(), ket.channel());
    let w = bra.spectrum.weights();
    let mut out = Complex::zero();
    if c_gg != T::zero() {
        out += radial_integral(w, bra.large(), ket.large(), phi).into() * c_gg;
    }
    if c_ff != T::zero() {
        out += radial_integral(w, bra.small(), ket.small(), phi).into() * c_ff;
    }
    out
}

fn alpha_z<T: Real>(state: &State<'_, T>) -> T {
    state.spectrum.alpha() * T::int(state.spectrum.z() as i64)
}

/// `(bra || p || ket)` from `p = (alpha H + H alpha)/2 - alpha V`, i.e. the
/// alpha element with `phi = (e_bra + e_ket)/2 + alpha Z / r`.
pub fn me_momentum<T: Real>(bra: &State<'_, T>, ket: &State<'_, T>) -> Complex<T> {
    let half_sum = (bra.energy() + ket.energy()) * T::lit(0.5);
    let az = alpha_z(bra);
    let phi: Vec<T> = bra.spectrum.nodes().iter().map(|&r| half_sum + az / r).collect();
    me_alpha_phi(bra, ket, &phi)
}

/// `<a| p^2 |a>` evaluated directly from the radial derivatives.
pub fn momentum_squared<T: Real>(state: &State<'_, T>) -> T {
    let sp = state.spectrum;
    let ch = sp.channel();
    let ll = T::int((ch.l * (ch.l + 1)) as i64);
    let lp = T::int((ch.l_prime * (ch.l_prime + 1)) as i64);
    let (g, f) = (state.large(), state.small());
    let (dg, df) = (sp.large_derivative(state.index), sp.small_derivative(state.index));
    let mut acc = T::zero();
    for (q, (&w, &r)) in sp.weights().iter().zip(sp.nodes()).enumerate() {
        let r2 = r * r;
        acc += w * (dg[q] * dg[q] + ll * g[q] * g[q] / r2 + df[q] * df[q] + lp * f[q] * f[q] / r2);
    }
    acc
}

/// `(bra || D(0) || ket)` with `D(0) = alpha Z alpha / r - (i alpha Z / 2) [H, n]`.
pub fn me_d0<T: Real>(bra: &State<'_, T>, ket: &State<'_, T>) -> Complex<T> {
    let az = alpha_z(bra);
    let nodes = bra.spectrum.nodes();
    let inv_r: Vec<T> = nodes.iter().map(|&r| az / r).collect();
    let ones = vec![T::one(); nodes.len()];
    let d1 = me_alpha_phi(bra, ket, &inv_r);
    let commutator = me_n_phi(bra, ket, &ones) * (bra.energy() - ket.energy());
    d1 - Complex::new(T::zero(), az * T::lit(0.5)) * commutator
}

/// `(bra || D(omega) || ket)`; `D_1` carries `e^{i|omega| r}/r`, `D_2` the
/// commutator with `f(omega, r) n`.
pub fn me_d<T: Real>(bra: &State<'_, T>, ket: &State<'_, T>, omega: T) -> Complex<T> {
    if omega == T::zero() {
        return me_d0(bra, ket);
    }
    let az = alpha_z(bra);
    let w = omega.abs();
    let nodes = bra.spectrum.nodes();
    let d1_kernel: Vec<Complex<T>> = nodes
        .iter()
        .map(|&r| Complex::from_polar(az / r, w * r))
        .collect();
    let f: Vec<Complex<T>> = nodes.iter().map(|&r| f_kernel(w * r)).collect();
    let d1 = me_alpha_phi(bra, ket, &d1_kernel);
    let d2 = me_n_phi(bra, ket, &f) * Complex::new(T::zero(), az * (bra.energy() - ket.energy()));
    d1 + d2
}

/// `(bra || S(y) || ket)` with `S_1 = alpha Z alpha e^{-y r}/r` and
/// `S_2 = i alpha Z [H, ft(y, r) n]`.
pub fn me_s<T: Real>(bra: &State<'_, T>, ket: &State<'_, T>, y: T) -> Complex<T> {
    let tables = SKernels::new(bra.spectrum.nodes(), alpha_z(bra), y);
    tables.element(bra, ket)
}

/// `S(y)` kernels tabulated once for many state pairs.
#[derive(Debug, Clone)]
pub struct SKernels<T> {
    alpha_z: T,
    screened: Vec<T>,
    ftilde: Vec<T>,
}

impl<T: Real> SKernels<T> {
    pub fn new(nodes: &[T], alpha_z: T, y: T) -> Self {
        Self {
            alpha_z,
            screened: nodes.iter().map(|&r| alpha_z * (-y * r).exp() / r).collect(),
            ftilde: nodes.iter().map(|&r| ftilde_kernel(y * r)).collect(),
        }
    }

    pub fn element(&self, bra: &State<'_, T>, ket: &State<'_, T>) -> Complex<T> {
        let s1 = me_alpha_phi(bra, ket, &self.screened);
        let s2 = me_n_phi(bra, ket, &self.ftilde) * Complex::new(T::zero(), self.alpha_z * (bra.energy() - ket.energy()));
        s1 + s2
    }
}

/// Weighted radial products of one state pair, reused for many kernels.
///
/// `forward` elements are `(bra || X || ket)`, `backward` ones
/// `(ket || X || bra)`.
#[derive(Debug, Clone)]
pub struct PairIntegrals<T> {
    gf: Vec<T>,
    fg: Vec<T>,
    gg: Vec<T>,
    ff: Vec<T>,
    alpha_fwd: (Complex<T>, Complex<T>),
    alpha_bwd: (Complex<T>, Complex<T>),
    n_fwd: (T, T),
    n_bwd: (T, T),
    coupled: bool,
}

impl<T: Real> PairIntegrals<T> {
    pub fn new(bra: &State<'_, T>, ket: &State<'_, T>) -> Self {
        same_grid(bra, ket);
        let (cb, ck) = (bra.channel(), ket.channel());
        let coupled = couples(cb.kappa, ck.kappa);
        let w = bra.spectrum.weights();
        let (g1, f1, g2, f2) = (bra.large(), bra.small(), ket.large(), ket.small());
        let prod = |x: &[T], y: &[T]| -> Vec<T> {
            if coupled {
                (0..w.len()).map(|q| w[q] * x[q] * y[q]).collect()
            } else {
                Vec::new()
            }
        };
        let zero = Complex::zero();
        Self {
            gf: prod(g1, f2),
            fg: prod(f1, g2),
            gg: prod(g1, g2),
            ff: prod(f1, f2),
            alpha_fwd: if coupled { alpha_angular_factors(cb, ck) } else { (zero, zero) },
            alpha_bwd: if coupled { alpha_angular_factors(ck, cb) } else { (zero, zero) },
            n_fwd: if coupled { n_angular_factors(cb, ck) } else { (T::zero(), T::zero()) },
            n_bwd: if coupled { n_angular_factors(ck, cb) } else { (T::zero(), T::zero()) },
            coupled,
        }
    }

    pub fn coupled(&self) -> bool {
        self.coupled
    }

    /// `((bra||alpha phi||ket), (ket||alpha phi||bra))`.
    pub fn alpha<K: KernelValue<T>>(&self, phi: &[K]) -> (Complex<T>, Complex<T>) {
        if !self.coupled {
            return (Complex::zero(), Complex::zero());
        }
        let i_gf: Complex<T> = dot(&self.gf, phi).into();
        let i_fg: Complex<T> = dot(&self.fg, phi).into();
        (
            self.alpha_fwd.0 * i_gf + self.alpha_fwd.1 * i_fg,
            self.alpha_bwd.0 * i_fg + self.alpha_bwd.1 * i_gf,
        )
    }

    /// `((bra||n phi||ket), (ket||n phi||bra))`.
    pub fn n<K: KernelValue<T>>(&self, phi: &[K]) -> (Complex<T>, Complex<T>) {
        if !self.coupled {
            return (Complex::zero(), Complex::zero());
        }
        let i_gg: Complex<T> = dot(&self.gg, phi).into();
        let i_ff: Complex<T> = dot(&self.ff, phi).into();
        (
            i_gg * self.n_fwd.0 + i_ff * self.n_fwd.1,
            i_gg * self.n_bwd.0 + i_ff * self.n_bwd.1,
        )
    }
}

fn dot<T: Real, K: KernelValue<T>>(weighted: &[T], phi: &[K]) -> K {
    let mut acc = K::zero();
    for (&w, &p) in weighted.iter().zip(phi) {
        acc = acc + p * w;
    }
    acc
}
