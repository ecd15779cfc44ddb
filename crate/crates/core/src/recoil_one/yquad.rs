use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::special::QuadratureRule;

/// Quadrature for `int_0^inf dy` over the substitution `y = s e^u`.
///
/// Level spacings of one spectrum span many decades, and every Lorentzian
/// `Delta / (y^2 + Delta^2)` becomes a unit-width `sech` bump in `u`, so
/// equal panels in `u` resolve all of them at once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YQuadrature<T> {
    /// Panel width in `u`.
    pub panel_width: T,
    /// Gauss-Legendre order per panel.
    pub order: usize,
    /// Extent in `u` below the smallest level spacing.
    pub lower_margin: T,
    /// Extent in `u` above the largest level spacing.
    pub upper_margin: T,
}

impl<T: Real> Default for YQuadrature<T> {
    fn default() -> Self {
        Self { panel_width: T::lit(0.5), order: 8, lower_margin: T::lit(20.0), upper_margin: T::lit(30.0) }
    }
}

impl<T: Real> YQuadrature<T> {
    /// Same range with panels half as wide.
    pub fn refined(&self) -> Self {
        Self { panel_width: self.panel_width * T::lit(0.5), ..*self }
    }

    /// `(y, weight)` pairs covering `[s e^{u_lo}, s e^{u_hi}]`; the weight
    /// includes the Jacobian `dy = y du`.
    pub fn nodes(&self, scale: T, smallest: T, largest: T) -> Result<Vec<(T, T)>> {
        if !(self.panel_width > T::zero()) || self.order == 0 || !(scale > T::zero()) {
            return Err(Error::invalid("recoil_one", "y quadrature needs a positive panel width, order and scale"));
        }
        let lo = (smallest.min(scale) / scale).ln() - self.lower_margin;
        let hi = (largest.max(scale) / scale).ln() + self.upper_margin;
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::numerical("recoil_one", "non-finite y integration range"));
        }
        let panels = ((hi - lo) / self.panel_width).ceil().to_usize().unwrap_or(1).max(1);
        let width = (hi - lo) / T::int(panels as i64);
        let rule = QuadratureRule::<T>::gauss_legendre(self.order)?;
        let mut out = Vec::with_capacity(panels * self.order);
        for p in 0..panels {
            let a = lo + width * T::int(p as i64);
            for (u, w) in rule.mapped(a, a + width) {
                let y = scale * u.exp();
                out.push((y, w * y));
            }
        }
        Ok(out)
    }
}
