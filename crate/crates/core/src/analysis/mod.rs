//! Expansion-coefficient fits, observables derived from `P` and `Q`, and
//! unit conversion.

mod constants;
mod fit;
mod observables;

pub use constants::{convert_energy, EnergyUnit, PhysicalConstants};
pub use fit::{fit_p_expansion, p_samples, FitModel, FitResult, PSample, FIT_CHARGES, FIT_SPLINES};
pub use observables::{lamb_from_p, lamb_shift_recoil_delta, p_to_ev, LambDelta};
