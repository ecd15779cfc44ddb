use num_complex::Complex;
use rayon::prelude::*;

use crate::angular::{allowed_intermediate_kappas, msum_weight};
use crate::basis::{solve_spectrum, AnalyticState, BasisConfig, DiracSpectrum, Orbital};
use crate::error::{Error, Result};
use crate::matrix_elements::{PairIntegrals, State};
use crate::scalar::Real;

/// Coulomb-Dirac spectra of every channel a reference level couples to
/// through an odd rank-1 operator, on one shared radial basis.
#[derive(Debug, Clone)]
pub struct RecoilSpectra<T> {
    z: u32,
    alpha: T,
    orbital: Orbital,
    /// `spectra[0]` is the reference channel.
    spectra: Vec<DiracSpectrum<T>>,
    reference: usize,
}

impl<T: Real> RecoilSpectra<T> {
    /// Solves the reference channel and all coupled channels.
    pub fn build(z: u32, orbital: Orbital, basis: &BasisConfig<T>, alpha: T) -> Result<Self> {
        AnalyticState::new(z, orbital, alpha)?;
        let shared = basis.build(z, orbital.n, alpha)?;
        let mut kappas = vec![orbital.kappa];
        kappas.extend(allowed_intermediate_kappas(orbital.kappa)?);
        let spectra = kappas
            .par_iter()
            .map(|&k| solve_spectrum(k, shared.clone(), alpha))
            .collect::<Result<Vec<_>>>()?;
        Self::from_spectra(orbital, spectra)
    }

    /// Wraps spectra solved elsewhere; the reference channel may appear anywhere.
    pub fn from_spectra(orbital: Orbital, mut spectra: Vec<DiracSpectrum<T>>) -> Result<Self> {
        let pos = spectra
            .iter()
            .position(|s| s.kappa() == orbital.kappa)
            .ok_or_else(|| Error::invalid("recoil_one", format!("no kappa = {} spectrum for {orbital}", orbital.kappa)))?;
        let first = spectra.swap_remove(pos);
        spectra.insert(0, first);
        let (z, alpha) = (spectra[0].z(), spectra[0].alpha());
        for s in &spectra[1..] {
            if s.z() != z || s.alpha() != alpha || s.nodes().len() != spectra[0].nodes().len() {
                return Err(Error::invalid("recoil_one", "spectra do not share one basis and nucleus"));
            }
        }
        for k in allowed_intermediate_kappas(orbital.kappa)? {
            if !spectra.iter().any(|s| s.kappa() == k) {
                return Err(Error::invalid("recoil_one", format!("missing kappa = {k} channel for {orbital}")));
            }
        }
        let reference = spectra[0].find_bound_state(orbital)?;
        Ok(Self { z, alpha, orbital, spectra, reference })
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn alpha_z(&self) -> T {
        self.alpha * T::int(self.z as i64)
    }

    pub fn orbital(&self) -> Orbital {
        self.orbital
    }

    pub fn spectra(&self) -> &[DiracSpectrum<T>] {
        &self.spectra
    }

    pub fn spectrum(&self, kappa: i32) -> Option<&DiracSpectrum<T>> {
        self.spectra.iter().find(|s| s.kappa() == kappa)
    }

    pub fn reference(&self) -> State<'_, T> {
        State::new(&self.spectra[0], self.reference)
    }

    /// Basis state labelled by an analytic level of one of the held channels.
    pub fn labelled(&self, orbital: Orbital) -> Result<State<'_, T>> {
        let sp = self
            .spectrum(orbital.kappa)
            .ok_or_else(|| Error::invalid("recoil_one", format!("no kappa = {} channel held", orbital.kappa)))?;
        Ok(State::new(sp, sp.find_bound_state(orbital)?))
    }

    /// Every coupled basis state, classified relative to the reference.
    ///
    /// Degeneracy is decided analytically: only the basis state labelled as
    /// the `(n, -kappa)` partner of the reference counts as degenerate.
    pub fn intermediates(&self) -> Result<Vec<Intermediate<'_, T>>> {
        let a = self.reference();
        let e_a = a.energy();
        let partner = Orbital::new(self.orbital.n, -self.orbital.kappa).ok();
        let mut out = Vec::new();
        for sp in &self.spectra[1..] {
            let degenerate = match partner {
                Some(p) if p.kappa == sp.kappa() => Some(sp.find_bound_state(p)?),
                _ => None,
            };
            let weight = msum_weight::<T>(a.channel().two_j, sp.channel().two_j);
            let pairs: Vec<_> = (0..sp.len())
                .into_par_iter()
                .map(|i| PairIntegrals::new(&a, &State::new(sp, i)))
                .collect();
            for (i, pair) in pairs.into_iter().enumerate() {
                let state = State::new(sp, i);
                let e_n = state.energy();
                let kind = if degenerate == Some(i) {
                    Level::Degenerate
                } else if e_n.abs() < e_a {
                    Level::Open
                } else {
                    Level::Closed
                };
                out.push(Intermediate { state, weight, pair, kind });
            }
        }
        Ok(out)
    }
}

/// Position of an intermediate level relative to the reference level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// `e_n = e_a` (analytic partner).
    Degenerate,
    /// `|e_n| < e_a`: a real photon can be emitted.
    Open,
    Closed,
}

/// One intermediate state `n` with its pair integrals against the reference.
#[derive(Debug, Clone)]
pub struct Intermediate<'a, T> {
    pub state: State<'a, T>,
    /// Magnetic-sum weight for `(j_a, j_n)`.
    pub weight: T,
    /// Bra is the reference, ket is `n`.
    pub pair: PairIntegrals<T>,
    pub kind: Level,
}

impl<T: Real> Intermediate<'_, T> {
    pub fn energy(&self) -> T {
        self.state.energy()
    }
}

/// Reduced elements between the reference `a` and an intermediate `n` that
/// need only energy-independent radial kernels.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StaticElements<T> {
    /// `(a||p||n)`, `(n||p||a)`.
    pub p: (Complex<T>, Complex<T>),
    /// `(a||D(0)||n)`, `(n||D(0)||a)`.
    pub d0: (Complex<T>, Complex<T>),
}

/// Kernels shared by all pairs of one basis.
#[derive(Debug, Clone)]
pub(crate) struct StaticKernels<T> {
    pub ones: Vec<T>,
    pub coulomb: Vec<T>,
    pub alpha_z: T,
}

impl<T: Real> StaticKernels<T> {
    pub fn new(nodes: &[T], alpha_z: T) -> Self {
        Self {
            ones: vec![T::one(); nodes.len()],
            coulomb: nodes.iter().map(|&r| alpha_z / r).collect(),
            alpha_z,
        }
    }

    pub fn elements(&self, e_a: T, n: &Intermediate<'_, T>) -> StaticElements<T> {
        let e_n = n.energy();
        let a1 = n.pair.alpha(&self.ones);
        let ar = n.pair.alpha(&self.coulomb);
        let n1 = n.pair.n(&self.ones);
        let half_sum = (e_a + e_n) * T::lit(0.5);
        let p = (a1.0 * half_sum + ar.0, a1.1 * half_sum + ar.1);
        let c = Complex::new(T::zero(), self.alpha_z * T::lit(0.5));
        let d0 = (ar.0 - c * n1.0 * (e_a - e_n), ar.1 - c * n1.1 * (e_n - e_a));
        StaticElements { p, d0 }
    }
}
