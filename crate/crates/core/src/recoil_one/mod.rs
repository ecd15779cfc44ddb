//! One-electron nuclear recoil corrections.
//!
//! Energies are returned in units of `m^2 / M` with `m = 1`; multiply by
//! `m / M` times the electron rest energy for physical units. The all-order
//! part is also expressed through the dimensionless function
//! `P = Delta E * pi n^3 / (alpha Z)^5`.

mod lowest;
mod salpeter;
mod spectra;
mod sums;
mod yquad;

use num_complex::Complex;

pub use lowest::{lowest_order, LowestOrder};
pub use salpeter::salpeter_p;
pub use spectra::{Intermediate, Level, RecoilSpectra};
pub use sums::{
    coulomb_second, spectral_sums, transverse_one, transverse_two, CoulombSecond, SpectralSums, TransverseOne,
    TransverseTwo,
};
pub use yquad::YQuadrature;

use crate::basis::{BasisConfig, Orbital};
use crate::error::Result;
use crate::scalar::Real;

/// Numerical settings of one recoil calculation.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoilConfig<T> {
    pub basis: BasisConfig<T>,
    pub alpha: T,
    pub y: YQuadrature<T>,
    /// Spline counts rerun to estimate the basis uncertainty.
    pub sweep: Vec<usize>,
}

impl<T: Real> Default for RecoilConfig<T> {
    fn default() -> Self {
        Self {
            basis: BasisConfig::default(),
            alpha: T::one() / T::lit(137.035_989_5),
            y: YQuadrature::default(),
            sweep: vec![50, 80],
        }
    }
}

impl<T: Real> RecoilConfig<T> {
    pub fn with_splines(&self, n_splines: usize) -> Self {
        Self { basis: BasisConfig { n_splines, ..self.basis }, sweep: Vec::new(), ..self.clone() }
    }
}

/// `pi n^3 / (alpha Z)^5`, converting `m^2/M` energies to `P` units.
pub fn p_scale<T: Real>(z: u32, n: u32, alpha: T) -> T {
    let az = alpha * T::int(z as i64);
    T::PI() * T::int((n * n * n) as i64) / az.powi(5)
}

/// The all-order function split by photon class.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PComponents<T> {
    pub coulomb: T,
    pub transverse_one: T,
    pub transverse_two: T,
    pub total: T,
}

impl<T: Real> PComponents<T> {
    fn from_sums(sums: &SpectralSums<T>, scale: T) -> Self {
        let c = sums.coulomb.value * scale;
        let t1 = sums.transverse_one.value.re * scale;
        let t2 = sums.transverse_two.value.re * scale;
        Self { coulomb: c, transverse_one: t1, transverse_two: t2, total: c + t1 + t2 }
    }

    fn max_deviation(&self, other: &Self) -> Self {
        Self {
            coulomb: (self.coulomb - other.coulomb).abs(),
            transverse_one: (self.transverse_one - other.transverse_one).abs(),
            transverse_two: (self.transverse_two - other.transverse_two).abs(),
            total: (self.total - other.total).abs(),
        }
    }

    fn max(self, other: Self) -> Self {
        Self {
            coulomb: self.coulomb.max(other.coulomb),
            transverse_one: self.transverse_one.max(other.transverse_one),
            transverse_two: self.transverse_two.max(other.transverse_two),
            total: self.total.max(other.total),
        }
    }
}

/// Full one-electron recoil breakdown for one level.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoilBreakdownOne<T> {
    pub z: u32,
    pub orbital: Orbital,
    pub lowest: LowestOrder<T>,
    /// Coulomb, one- and two-transverse all-order terms (`m^2/M`);
    /// imaginary parts are width diagnostics.
    pub coulomb: Complex<T>,
    pub transverse_one: Complex<T>,
    pub transverse_two: Complex<T>,
    pub p: PComponents<T>,
    /// Largest deviation of each `P` component over the spline sweep.
    pub band: PComponents<T>,
    pub sums: SpectralSums<T>,
}

impl<T: Real> RecoilBreakdownOne<T> {
    /// Sum of the all-order terms (`m^2/M`).
    pub fn second_order(&self) -> Complex<T> {
        self.coulomb + self.transverse_one + self.transverse_two
    }
}

/// All-order sums for one basis size.
pub fn recoil_sums<T: Real>(z: u32, orbital: Orbital, config: &RecoilConfig<T>) -> Result<SpectralSums<T>> {
    let spectra = RecoilSpectra::build(z, orbital, &config.basis, config.alpha)?;
    spectral_sums(&spectra, &config.y)
}

/// Lowest-order terms, all-order sums and `P` with its sweep band.
pub fn p_function<T: Real>(z: u32, orbital: Orbital, config: &RecoilConfig<T>) -> Result<RecoilBreakdownOne<T>> {
    let lowest = lowest_order(z, orbital, config.alpha)?;
    let scale = p_scale(z, orbital.n, config.alpha);
    let sums = recoil_sums(z, orbital, config)?;
    let p = PComponents::from_sums(&sums, scale);
    let mut band = PComponents::default();
    for &n in &config.sweep {
        if n == config.basis.n_splines {
            continue;
        }
        let other = recoil_sums(z, orbital, &config.with_splines(n))?;
        band = band.max(PComponents::from_sums(&other, scale).max_deviation(&p));
    }
    Ok(RecoilBreakdownOne {
        z,
        orbital,
        lowest,
        coulomb: Complex::new(sums.coulomb.value, T::zero()),
        transverse_one: sums.transverse_one.value,
        transverse_two: sums.transverse_two.value,
        p,
        band,
        sums,
    })
}
