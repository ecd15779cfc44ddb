use crate::basis::{AnalyticState, Orbital};
use crate::error::Result;
use crate::scalar::Real;

/// Lowest-order recoil terms in units of `m^2 / M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowestOrder<T> {
    pub coulomb: T,
    pub transverse: T,
    /// `coulomb + transverse`, equal to `(m^2 - e_a^2) / 2M`.
    pub total: T,
}

/// Closed forms from the virial relations.
pub fn lowest_order<T: Real>(z: u32, orbital: Orbital, alpha: T) -> Result<LowestOrder<T>> {
    let st = AnalyticState::new(z, orbital, alpha)?;
    let az = alpha * T::int(z as i64);
    let az2 = az * az;
    let kappa = T::int(orbital.kappa as i64);
    let nr = T::int(st.n_r as i64);
    let (g, n) = (st.gamma, st.big_n);
    let n2 = n * n;
    let four_g2_m1 = T::lit(4.0) * g * g - T::one();
    let bracket = kappa * (T::lit(2.0) * kappa * (g + nr) - n) + nr * four_g2_m1;
    let relativistic = az2 * az2 / (n2 * n2 * g * four_g2_m1) * bracket;
    // 1 - (gamma + n_r)^2 / N^2 written without cancellation
    let nonrel = az2 / n2;
    let coulomb = T::lit(0.5) * (nonrel + T::lit(2.0) * relativistic);
    let transverse = -relativistic;
    Ok(LowestOrder { coulomb, transverse, total: coulomb + transverse })
}
