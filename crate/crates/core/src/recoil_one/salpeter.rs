use crate::basis::Orbital;
use crate::error::{Error, Result};
use crate::scalar::Real;

const BETHE_LOG_1S: f64 = 2.984129;
const BETHE_LOG_2S: f64 = 2.811769;
const BETHE_LOG_2P: f64 = -0.030017;

/// Leading `(alpha Z)^5` recoil function `P_S` for 1s, 2s and 2p1/2.
pub fn salpeter_p<T: Real>(orbital: Orbital, z: u32, alpha: T) -> Result<T> {
    let az = alpha * T::int(z as i64);
    if !(az > T::zero()) {
        return Err(Error::invalid("recoil_one", "alpha Z must be positive"));
    }
    let two_thirds = T::lit(2.0) / T::lit(3.0);
    let eight_thirds = T::lit(8.0) / T::lit(3.0);
    match (orbital.n, orbital.kappa) {
        (1, -1) => Ok(-two_thirds * az.ln() - eight_thirds * T::lit(BETHE_LOG_1S)
            + T::lit(14.0) / T::lit(3.0) * T::LN_2()
            + T::lit(62.0) / T::lit(9.0)),
        (2, -1) => Ok(-two_thirds * az.ln() - eight_thirds * T::lit(BETHE_LOG_2S) + T::lit(187.0) / T::lit(18.0)),
        (2, 1) => Ok(-eight_thirds * T::lit(BETHE_LOG_2P) - T::lit(7.0) / T::lit(18.0)),
        _ => Err(Error::invalid("recoil_one", format!("no leading-order formula for {orbital}"))),
    }
}
