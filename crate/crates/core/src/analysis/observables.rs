use crate::basis::Orbital;
use crate::error::Result;
use crate::recoil_one::{p_function, salpeter_p, RecoilConfig};
use crate::scalar::Real;

use super::PhysicalConstants;

/// `(m/M) (alpha Z)^5 / (pi n^3) P m c^2` in eV for the nuclide `(z, a)`.
pub fn p_to_ev<T: Real>(p: T, z: u32, a: u32, n: u32, constants: &PhysicalConstants<T>) -> Result<T> {
    let az = constants.alpha() * T::int(z as i64);
    let scale = az.powi(5) / (T::PI() * T::int((n * n * n) as i64));
    constants.recoil_ev(p * scale, z, a)
}

/// All-order recoil beyond the Salpeter term, as frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambDelta<T> {
    /// 1s level shift (kHz).
    pub ground_khz: T,
    /// `2s - 2p1/2` splitting (kHz).
    pub n2_khz: T,
    pub ground_band_khz: T,
    pub n2_band_khz: T,
}

/// Converts `P - P_S` for 1s, 2s and 2p1/2 into level shifts.
pub fn lamb_from_p<T: Real>(
    z: u32,
    a: u32,
    excess: [T; 3],
    bands: [T; 3],
    constants: &PhysicalConstants<T>,
) -> Result<LambDelta<T>> {
    let khz = |p: T, n: u32| -> Result<T> { Ok(p_to_ev(p, z, a, n, constants)? * constants.ev_to_khz) };
    Ok(LambDelta {
        ground_khz: khz(excess[0], 1)?,
        n2_khz: khz(excess[1] - excess[2], 2)?,
        ground_band_khz: khz(bands[0], 1)?,
        n2_band_khz: khz(bands[1] + bands[2], 2)?,
    })
}

/// Recoil beyond Salpeter's result for the ground state and the `n = 2`
/// Lamb shift of the nuclide `(z, a)`.
pub fn lamb_shift_recoil_delta<T: Real>(
    z: u32,
    a: u32,
    constants: &PhysicalConstants<T>,
    config: &RecoilConfig<T>,
) -> Result<LambDelta<T>> {
    let mut excess = [T::zero(); 3];
    let mut bands = [T::zero(); 3];
    for (i, orbital) in [Orbital::S1, Orbital::S2, Orbital::P2_HALF].into_iter().enumerate() {
        let r = p_function(z, orbital, config)?;
        excess[i] = r.p.total - salpeter_p(orbital, z, config.alpha)?;
        bands[i] = r.band.total;
    }
    lamb_from_p(z, a, excess, bands, constants)
}
