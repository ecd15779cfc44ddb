//! Two-electron recoil corrections for a valence electron outside a closed
//! `(1s)^2` shell, and their dimensionless form
//! `Delta E_int = -(2^9 / 3^8) (m^2 / M) (alpha Z)^2 Q`.

use num_complex::Complex;

use crate::angular::msum_weight;
use crate::basis::{AnalyticState, Orbital};
use crate::error::{Error, Result};
use crate::matrix_elements::{PairIntegrals, State};
use crate::recoil_one::{RecoilConfig, RecoilSpectra};
use crate::scalar::Real;
use crate::special::f_kernel;

/// `Q` split by photon class.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QComponents<T> {
    pub coulomb: T,
    pub transverse_one: T,
    pub transverse_two: T,
    pub total: T,
}

/// Two-electron recoil terms for one valence level (`m^2/M` units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoilBreakdownTwo<T> {
    pub z: u32,
    pub valence: Orbital,
    pub coulomb: Complex<T>,
    pub transverse_one: Complex<T>,
    pub transverse_two: Complex<T>,
    pub q: QComponents<T>,
    pub q_leading: QComponents<T>,
    /// Largest deviation of each `Q` component over the spline sweep.
    pub band: QComponents<T>,
}

impl<T: Real> RecoilBreakdownTwo<T> {
    pub fn total(&self) -> Complex<T> {
        self.coulomb + self.transverse_one + self.transverse_two
    }
}

/// `-(2^9 / 3^8) (alpha Z)^2`, the `m^2/M` energy corresponding to `Q = 1`.
pub fn q_unit<T: Real>(z: u32, alpha: T) -> T {
    let az = alpha * T::int(z as i64);
    -T::int(512) / T::int(6561) * az * az
}

/// Leading `alpha Z` behaviour of `Q` and of its three parts.
pub fn q_leading<T: Real>(z: u32, alpha: T) -> QComponents<T> {
    let az = alpha * T::int(z as i64);
    let az2 = az * az;
    let ln98 = (T::lit(9.0) / T::lit(8.0)).ln();
    QComponents {
        coulomb: T::one() + az2 * (T::lit(55.0) / T::lit(48.0) + ln98),
        transverse_one: -T::lit(1.75) * az2,
        transverse_two: T::lit(49.0) / T::lit(64.0) * az2 * az2,
        total: T::one() + az2 * (-T::lit(29.0) / T::lit(48.0) + ln98),
    }
}

/// Reduced elements between the valence level and one core `1s` state.
struct CorePair<T> {
    weight: T,
    /// `(a||p||1s)`, `(1s||p||a)`.
    p: (Complex<T>, Complex<T>),
    /// `(a||D(omega)||1s)`, `(1s||D(omega)||a)` with `omega = e_a - e_1s`.
    d: (Complex<T>, Complex<T>),
    /// Same at `omega = 0`.
    d0: (Complex<T>, Complex<T>),
}

fn core_pair<T: Real>(spectra: &RecoilSpectra<T>) -> Result<CorePair<T>> {
    let valence = spectra.orbital();
    if valence == Orbital::S1 {
        return Err(Error::invalid("recoil_two", "the valence electron cannot occupy the closed 1s shell"));
    }
    let a = spectra.reference();
    let core: State<'_, T> = spectra
        .labelled(Orbital::S1)
        .map_err(|_| Error::invalid("recoil_two", "the spectra hold no 1s core state"))?;
    let (z, alpha) = (spectra.z(), spectra.alpha());
    let az = spectra.alpha_z();
    let omega = AnalyticState::new(z, valence, alpha)?.energy - AnalyticState::new(z, Orbital::S1, alpha)?.energy;
    let pair = PairIntegrals::new(&a, &core);
    let nodes = a.spectrum.nodes();
    let ones = vec![T::one(); nodes.len()];
    let coulomb: Vec<T> = nodes.iter().map(|&r| az / r).collect();
    let half_sum = (a.energy() + core.energy()) * T::lit(0.5);
    let a1 = pair.alpha(&ones);
    let ar = pair.alpha(&coulomb);
    let p = (a1.0 * half_sum + ar.0, a1.1 * half_sum + ar.1);

    let i_az = Complex::new(T::zero(), az);
    let n1 = pair.n(&ones);
    let half = T::lit(0.5);
    let d0 = (ar.0 - i_az * n1.0 * (omega * half), ar.1 + i_az * n1.1 * (omega * half));

    let retarded: Vec<Complex<T>> = nodes.iter().map(|&r| Complex::from_polar(az / r, omega.abs() * r)).collect();
    let f: Vec<Complex<T>> = nodes.iter().map(|&r| f_kernel(omega.abs() * r)).collect();
    let ad = pair.alpha(&retarded);
    let nf = pair.n(&f);
    let d = (ad.0 + i_az * nf.0 * omega, ad.1 - i_az * nf.1 * omega);
    Ok(CorePair { weight: msum_weight(a.channel().two_j, core.channel().two_j), p, d, d0 })
}

fn components<T: Real>(c: Complex<T>, t1: Complex<T>, t2: Complex<T>, unit: T) -> QComponents<T> {
    QComponents {
        coulomb: c.re / unit,
        transverse_one: t1.re / unit,
        transverse_two: t2.re / unit,
        total: (c.re + t1.re + t2.re) / unit,
    }
}

/// Coulomb, one- and two-transverse exchange terms with the core.
///
/// Exactly zero when the valence level has the parity of `1s`.
pub fn two_electron_int<T: Real>(spectra: &RecoilSpectra<T>) -> Result<RecoilBreakdownTwo<T>> {
    let cp = core_pair(spectra)?;
    let w = cp.weight;
    let coulomb = -(cp.p.0 * cp.p.1) * w;
    let transverse_one = (cp.p.0 * cp.d.1 + cp.d.0 * cp.p.1) * w;
    let transverse_two = -(cp.d.0 * cp.d.1) * w;
    let (z, alpha) = (spectra.z(), spectra.alpha());
    Ok(RecoilBreakdownTwo {
        z,
        valence: spectra.orbital(),
        coulomb,
        transverse_one,
        transverse_two,
        q: components(coulomb, transverse_one, transverse_two, q_unit(z, alpha)),
        q_leading: q_leading(z, alpha),
        band: QComponents::default(),
    })
}

/// Two-body part of the Breit-level recoil operator averaged over the
/// `(1s)^2 a` determinant (`m^2/M` units).
pub fn breit_expectation<T: Real>(spectra: &RecoilSpectra<T>) -> Result<T> {
    let cp = core_pair(spectra)?;
    let v = -(cp.p.0 * cp.p.1) + cp.p.0 * cp.d0.1 + cp.d0.0 * cp.p.1;
    Ok(v.re * cp.weight)
}

/// Sum of the one- and two-electron Coulomb terms written as a single
/// spectral sum split at the core level.
pub fn coulomb_combined<T: Real>(spectra: &RecoilSpectra<T>) -> Result<T> {
    let core = spectra.labelled(Orbital::S1)?.energy();
    let a = spectra.reference();
    let nodes = a.spectrum.nodes();
    let ones = vec![T::one(); nodes.len()];
    let coulomb: Vec<T> = nodes.iter().map(|&r| spectra.alpha_z() / r).collect();
    let mut acc = T::zero();
    for n in spectra.intermediates()? {
        let a1 = n.pair.alpha(&ones);
        let ar = n.pair.alpha(&coulomb);
        let half_sum = (a.energy() + n.energy()) * T::lit(0.5);
        let term = ((a1.0 * half_sum + ar.0) * (a1.1 * half_sum + ar.1)).re * n.weight;
        if n.energy() > core + T::lit(1e3) * T::epsilon() {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc * T::lit(0.5))
}

/// `Q` for the valence level with its spline-sweep band.
pub fn q_function<T: Real>(z: u32, valence: Orbital, config: &RecoilConfig<T>) -> Result<RecoilBreakdownTwo<T>> {
    let run = |cfg: &RecoilConfig<T>| -> Result<RecoilBreakdownTwo<T>> {
        let spectra = RecoilSpectra::build(z, valence, &cfg.basis, cfg.alpha)?;
        two_electron_int(&spectra)
    };
    let mut out = run(config)?;
    for &n in &config.sweep {
        if n == config.basis.n_splines {
            continue;
        }
        let q = run(&config.with_splines(n))?.q;
        let b = &mut out.band;
        b.coulomb = b.coulomb.max((q.coulomb - out.q.coulomb).abs());
        b.transverse_one = b.transverse_one.max((q.transverse_one - out.q.transverse_one).abs());
        b.transverse_two = b.transverse_two.max((q.transverse_two - out.q.transverse_two).abs());
        b.total = b.total.max((q.total - out.q.total).abs());
    }
    Ok(out)
}

/// Recoil contributions for hydrogen-like and lithium-like uranium (eV).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UraniumRecoil<T> {
    pub first_1s: T,
    /// Shared by the degenerate 2s and 2p1/2 levels.
    pub first_n2: T,
    pub second_1s: T,
    pub second_2s: T,
    pub second_2p: T,
    pub interaction_2p: T,
    /// `(1s)^2 2p1/2 - (1s)^2 2s` total recoil shift.
    pub transition: T,
    /// Spline-sweep band of `transition`.
    pub band: T,
    /// Spline-sweep bands of `second_1s`, `second_2s`, `second_2p`, `interaction_2p`.
    pub component_bands: [T; 4],
}

/// Nuclear charge and mass number of the uranium nuclide used here.
pub const URANIUM: (u32, u32) = (92, 238);

pub fn uranium_transition<T: Real>(
    config: &RecoilConfig<T>,
    constants: &crate::analysis::PhysicalConstants<T>,
) -> Result<UraniumRecoil<T>> {
    use crate::recoil_one::{lowest_order, p_function};
    let (z, a) = URANIUM;
    let ev = |v: T| constants.recoil_ev(v, z, a);
    let one_1s = p_function(z, Orbital::S1, config)?;
    let one_2s = p_function(z, Orbital::S2, config)?;
    let one_2p = p_function(z, Orbital::P2_HALF, config)?;
    let int = q_function(z, Orbital::P2_HALF, config)?;
    let second = |r: &crate::recoil_one::RecoilBreakdownOne<T>| ev(r.second_order().re);
    let (s2, p2, i2) = (second(&one_2s)?, second(&one_2p)?, ev(int.total().re)?);
    let unit_ev = |p: T, n: u32| ev(p / crate::recoil_one::p_scale(z, n, config.alpha));
    let bands = [
        unit_ev(one_1s.band.total, 1)?,
        unit_ev(one_2s.band.total, 2)?,
        unit_ev(one_2p.band.total, 2)?,
        ev(int.band.total * q_unit(z, config.alpha))?.abs(),
    ];
    Ok(UraniumRecoil {
        first_1s: ev(lowest_order(z, Orbital::S1, config.alpha)?.total)?,
        first_n2: ev(lowest_order(z, Orbital::S2, config.alpha)?.total)?,
        second_1s: second(&one_1s)?,
        second_2s: s2,
        second_2p: p2,
        interaction_2p: i2,
        transition: p2 - s2 + i2,
        band: bands[1] + bands[2] + bands[3],
        component_bands: bands,
    })
}
