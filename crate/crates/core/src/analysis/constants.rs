use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Physical constants and the nuclide mass table.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalConstants<T> {
    pub alpha_inverse: T,
    pub electron_rest_energy_ev: T,
    /// Frequency equivalent of one electronvolt, in kHz.
    pub ev_to_khz: T,
    pub atomic_mass_unit_ev: T,
    /// Atomic masses in `u`, keyed by `(Z, A)`.
    pub atomic_masses: BTreeMap<(u32, u32), T>,
}

impl<T: Real> Default for PhysicalConstants<T> {
    fn default() -> Self {
        let mut atomic_masses = BTreeMap::new();
        atomic_masses.insert((1, 1), T::lit(1.007_825_032_23));
        atomic_masses.insert((92, 238), T::lit(238.050_788_4));
        Self {
            alpha_inverse: T::lit(137.035_989_5),
            electron_rest_energy_ev: T::lit(510_998.95),
            ev_to_khz: T::lit(2.417_989_242e11),
            atomic_mass_unit_ev: T::lit(931_494_102.42),
            atomic_masses,
        }
    }
}

impl<T: Real> PhysicalConstants<T> {
    pub fn alpha(&self) -> T {
        T::one() / self.alpha_inverse
    }

    /// Nuclear mass in electron masses: atomic mass minus `Z m_e`.
    pub fn nuclear_mass(&self, z: u32, a: u32) -> Result<T> {
        let atomic = self
            .atomic_masses
            .get(&(z, a))
            .ok_or_else(|| Error::invalid("analysis", format!("no mass tabulated for Z={z}, A={a}")))?;
        Ok(*atomic * self.atomic_mass_unit_ev / self.electron_rest_energy_ev - T::int(z as i64))
    }

    /// `m / M`.
    pub fn mass_ratio(&self, z: u32, a: u32) -> Result<T> {
        Ok(T::one() / self.nuclear_mass(z, a)?)
    }

    /// Energy in eV of a recoil term given in units of `m^2 / M`.
    pub fn recoil_ev(&self, value: T, z: u32, a: u32) -> Result<T> {
        Ok(value * self.mass_ratio(z, a)? * self.electron_rest_energy_ev)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: T| x > T::zero() && x.is_finite();
        if !(ok(self.alpha_inverse) && ok(self.electron_rest_energy_ev) && ok(self.ev_to_khz) && ok(self.atomic_mass_unit_ev))
            || !self.atomic_masses.values().all(|&m| ok(m))
        {
            return Err(Error::invalid("analysis", "physical constants must be positive and finite"));
        }
        Ok(())
    }
}

/// Energy units understood by [`convert_energy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyUnit {
    /// Electron rest energy `m c^2 = 1`.
    Natural,
    Ev,
    Khz,
}

impl std::str::FromStr for EnergyUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "natural" | "mc2" => Ok(EnergyUnit::Natural),
            "ev" => Ok(EnergyUnit::Ev),
            "khz" => Ok(EnergyUnit::Khz),
            other => Err(Error::invalid("analysis", format!("unknown energy unit '{other}'"))),
        }
    }
}

pub fn convert_energy<T: Real>(value: T, from: EnergyUnit, to: EnergyUnit, constants: &PhysicalConstants<T>) -> T {
    let to_ev = |u: EnergyUnit| match u {
        EnergyUnit::Natural => constants.electron_rest_energy_ev,
        EnergyUnit::Ev => T::one(),
        EnergyUnit::Khz => T::one() / constants.ev_to_khz,
    };
    if from == to {
        return value;
    }
    value * to_ev(from) / to_ev(to)
}
