//! Spectral sums over the finite basis. All energies here are in units of
//! `m^2 / M` (electron mass `m = 1`, the nuclear mass factored out).

use num_complex::Complex;
use rayon::prelude::*;

use super::spectra::{Intermediate, Level, RecoilSpectra, StaticElements, StaticKernels};
use super::yquad::YQuadrature;
use crate::error::{Error, Result};
use crate::matrix_elements::momentum_squared;
use crate::scalar::Real;
use crate::special::{f_kernel, ftilde_kernel, phi1_kernel, phi2_kernel, Side};

/// Coulomb recoil term beyond lowest order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombSecond<T> {
    /// `-sum_{e_n < 0} <a|p|n><n|p|a>`.
    pub value: T,
    /// `-(<a|p^2|a> - sum_{e_n > 0} <a|p|n><n|p|a>)`.
    pub dual: T,
    /// `<a|p^2|a>` from the radial derivatives.
    pub p_squared: T,
    /// `sum_n <a|p|n><n|p|a>` over the whole finite spectrum.
    pub spectral_p_squared: T,
}

/// One-transverse-photon recoil term beyond lowest order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseOne<T> {
    /// Real part from the closed `y` integral, imaginary part from the
    /// open-channel piece (width diagnostic).
    pub value: Complex<T>,
    /// Real part assembled from the three pieces below.
    pub dual: T,
    /// `(1/2) sum_{e_n != e_a} {<a|p|n><n|D(0)|a> + c.c. ordering}`.
    pub static_part: T,
    /// `(2/pi) Re int dy sum (e_a - e_n)/(y^2 + Delta^2) <a|p|n><n|S(y)|a>`.
    pub y_part: T,
    /// `-sum_{|e_n| < e_a} {<a|p|n><n|D(Delta)|a> + <a|D(Delta)|n><n|p|a>}`.
    pub open_part: Complex<T>,
}

/// Two-transverse-photon recoil term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseTwo<T> {
    pub value: Complex<T>,
    /// `-(1/pi) int dy sum (e_a - e_n)/(y^2 + Delta^2) <a|S(y)|n><n|S(y)|a>`.
    pub y_part: T,
    /// `(1/2) sum_{e_n = e_a} <a|D(0)|n><n|D(0)|a>`.
    pub degenerate_part: T,
    /// `sum_{|e_n| < e_a} <a|D(Delta)|n><n|D(Delta)|a>`.
    pub open_part: Complex<T>,
}

/// Every all-order one-electron sum for one reference level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSums<T> {
    pub coulomb: CoulombSecond<T>,
    pub transverse_one: TransverseOne<T>,
    pub transverse_two: TransverseTwo<T>,
    /// Largest `|Im| / |Re|` over the magnetic-summed products that must be
    /// real (hermitian operator pairs).
    pub hermiticity_residue: T,
}

pub fn coulomb_second<T: Real>(spectra: &RecoilSpectra<T>) -> Result<CoulombSecond<T>> {
    let ctx = Context::new(spectra)?;
    Ok(ctx.coulomb())
}

pub fn transverse_one<T: Real>(spectra: &RecoilSpectra<T>, y: &YQuadrature<T>) -> Result<TransverseOne<T>> {
    Ok(spectral_sums(spectra, y)?.transverse_one)
}

pub fn transverse_two<T: Real>(spectra: &RecoilSpectra<T>, y: &YQuadrature<T>) -> Result<TransverseTwo<T>> {
    Ok(spectral_sums(spectra, y)?.transverse_two)
}

/// Evaluates all sums with a single pass over the `y` grid.
pub fn spectral_sums<T: Real>(spectra: &RecoilSpectra<T>, y: &YQuadrature<T>) -> Result<SpectralSums<T>> {
    let ctx = Context::new(spectra)?;
    let coulomb = ctx.coulomb();
    let closed = ctx.transverse_closed_form()?;
    let (static_one, degenerate_two) = ctx.static_parts();
    let (open_one, open_two) = ctx.open_parts();
    let (y_one, y_two) = ctx.y_parts(y)?;

    let transverse_one = TransverseOne {
        value: Complex::new(closed, open_one.im),
        dual: static_one + y_one + open_one.re,
        static_part: static_one,
        y_part: y_one,
        open_part: open_one,
    };
    let transverse_two = TransverseTwo {
        value: Complex::new(y_two + degenerate_two + open_two.re, open_two.im),
        y_part: y_two,
        degenerate_part: degenerate_two,
        open_part: open_two,
    };
    Ok(SpectralSums { coulomb, transverse_one, transverse_two, hermiticity_residue: ctx.hermiticity_residue() })
}

struct Context<'a, T> {
    spectra: &'a RecoilSpectra<T>,
    e_a: T,
    alpha_z: T,
    inter: Vec<Intermediate<'a, T>>,
    elements: Vec<StaticElements<T>>,
}

impl<'a, T: Real> Context<'a, T> {
    fn new(spectra: &'a RecoilSpectra<T>) -> Result<Self> {
        let a = spectra.reference();
        let inter = spectra.intermediates()?;
        let kernels = StaticKernels::new(a.spectrum.nodes(), spectra.alpha_z());
        let e_a = a.energy();
        let elements = inter.par_iter().map(|n| kernels.elements(e_a, n)).collect();
        Ok(Self { spectra, e_a, alpha_z: spectra.alpha_z(), inter, elements })
    }

    fn nodes(&self) -> &'a [T] {
        self.spectra.reference().spectrum.nodes()
    }

    fn coulomb(&self) -> CoulombSecond<T> {
        let (mut negative, mut positive) = (T::zero(), T::zero());
        for (n, el) in self.inter.iter().zip(&self.elements) {
            let term = (el.p.0 * el.p.1).re * n.weight;
            if n.energy() < T::zero() {
                negative += term;
            } else {
                positive += term;
            }
        }
        let p_squared = momentum_squared(&self.spectra.reference());
        CoulombSecond {
            value: -negative,
            dual: -(p_squared - positive),
            p_squared,
            spectral_p_squared: negative + positive,
        }
    }

    fn hermiticity_residue(&self) -> T {
        self.inter
            .iter()
            .zip(&self.elements)
            .map(|(_, el)| {
                let v = el.p.0 * el.p.1;
                if v.norm() > T::zero() { v.im.abs() / v.norm() } else { T::zero() }
            })
            .fold(T::zero(), T::max)
    }

    /// `(1/2) sum_{e_n != e_a} w {p D(0) + D(0) p}` and
    /// `(1/2) sum_{e_n = e_a} w D(0) D(0)`.
    fn static_parts(&self) -> (T, T) {
        let (mut one, mut two) = (Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), T::zero()));
        for (n, el) in self.inter.iter().zip(&self.elements) {
            if n.kind == Level::Degenerate {
                two += el.d0.0 * el.d0.1 * n.weight;
            } else {
                one += (el.p.0 * el.d0.1 + el.d0.0 * el.p.1) * n.weight;
            }
        }
        (one.re * T::lit(0.5), two.re * T::lit(0.5))
    }

    /// Photon-emission pieces with `omega = e_a - e_n` over open channels.
    fn open_parts(&self) -> (Complex<T>, Complex<T>) {
        let nodes = self.nodes();
        let az = self.alpha_z;
        let mut one = Complex::new(T::zero(), T::zero());
        let mut two = Complex::new(T::zero(), T::zero());
        for (n, el) in self.inter.iter().zip(&self.elements) {
            if n.kind != Level::Open {
                continue;
            }
            let e_n = n.energy();
            let omega = (self.e_a - e_n).abs();
            let d1: Vec<Complex<T>> = nodes.iter().map(|&r| Complex::from_polar(az / r, omega * r)).collect();
            let f: Vec<Complex<T>> = nodes.iter().map(|&r| f_kernel(omega * r)).collect();
            let a1 = n.pair.alpha(&d1);
            let nf = n.pair.n(&f);
            let i_az = Complex::new(T::zero(), az);
            let d_fwd = a1.0 + i_az * nf.0 * (self.e_a - e_n);
            let d_bwd = a1.1 + i_az * nf.1 * (e_n - self.e_a);
            one -= (el.p.0 * d_bwd + d_fwd * el.p.1) * n.weight;
            two += d_fwd * d_bwd * n.weight;
        }
        (one, two)
    }

    /// One-transverse term with the `y` integral done in closed form.
    fn transverse_closed_form(&self) -> Result<T> {
        let nodes = self.nodes();
        let e_a = self.e_a;
        let terms = self
            .inter
            .par_iter()
            .zip(&self.elements)
            .filter(|(n, _)| n.kind != Level::Degenerate)
            .map(|(n, el)| -> Result<Complex<T>> {
                let e_n = n.energy();
                let delta = (e_a - e_n).abs();
                if !(delta > T::zero()) {
                    return Err(Error::numerical(
                        "recoil_one",
                        format!("basis level {e_n} coincides with the reference without being its analytic partner"),
                    ));
                }
                let open = n.kind == Level::Open;
                let side = Side::of(e_a, e_n);
                let mut phi1 = Vec::with_capacity(nodes.len());
                let mut phi2 = Vec::with_capacity(nodes.len());
                for &r in nodes {
                    phi1.push(phi1_kernel(delta * r, open, side)?);
                    phi2.push(phi2_kernel(delta * r, open, side)?);
                }
                let b1 = n.pair.alpha(&phi1).1;
                let c2 = n.pair.n(&phi2).1;
                let i = Complex::new(T::zero(), T::one());
                Ok(i * el.p.0 * (i * b1 + c2) * ((e_n - e_a) * n.weight))
            })
            .collect::<Result<Vec<_>>>()?;
        let sum: Complex<T> = terms.into_iter().fold(Complex::new(T::zero(), T::zero()), |s, t| s + t);
        Ok(sum.re * T::lit(2.0) * self.alpha_z / T::PI())
    }

    /// The two `y` integrals, sharing the `S(y)` elements at each node.
    fn y_parts(&self, quad: &YQuadrature<T>) -> Result<(T, T)> {
        let gaps: Vec<T> = self
            .inter
            .iter()
            .filter(|n| n.kind != Level::Degenerate)
            .map(|n| (self.e_a - n.energy()).abs())
            .filter(|d| *d > T::zero())
            .collect();
        if gaps.is_empty() {
            return Ok((T::zero(), T::zero()));
        }
        let smallest = gaps.iter().copied().fold(T::infinity(), T::min);
        let largest = gaps.iter().copied().fold(T::zero(), T::max);
        let grid = quad.nodes(self.alpha_z, smallest, largest)?;
        let nodes = self.nodes();
        let az = self.alpha_z;
        let e_a = self.e_a;
        let per_node: Vec<(T, T)> = grid
            .par_iter()
            .map(|&(y, wy)| {
                let screened: Vec<T> = nodes.iter().map(|&r| az * (-y * r).exp() / r).collect();
                let ft: Vec<T> = nodes.iter().map(|&r| ftilde_kernel(y * r)).collect();
                let (mut one, mut two) = (T::zero(), T::zero());
                for (n, el) in self.inter.iter().zip(&self.elements) {
                    if n.kind == Level::Degenerate || !n.pair.coupled() {
                        continue;
                    }
                    let e_n = n.energy();
                    let gap = e_a - e_n;
                    let lorentz = gap / (y * y + gap * gap);
                    let s1 = n.pair.alpha(&screened);
                    let s2 = n.pair.n(&ft);
                    let i_az = Complex::new(T::zero(), az);
                    let s_fwd = s1.0 + i_az * s2.0 * gap;
                    let s_bwd = s1.1 - i_az * s2.1 * gap;
                    one += (el.p.0 * s_bwd).re * lorentz * n.weight;
                    two += (s_fwd * s_bwd).re * lorentz * n.weight;
                }
                (one * wy, two * wy)
            })
            .collect();
        let (one, two) = per_node
            .into_iter()
            .fold((T::zero(), T::zero()), |acc, v| (acc.0 + v.0, acc.1 + v.1));
        Ok((one * T::lit(2.0) / T::PI(), -two / T::PI()))
    }
}
