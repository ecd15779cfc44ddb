use crate::error::{Error, Result};
use crate::scalar::Real;

/// Radial breakpoints `r_i = rho_i^4 gamma0 / Z` with `rho_i` uniform and the
/// last breakpoint pinned to the box radius.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec<T> {
    z: u32,
    box_radius: T,
    gamma0: T,
    breakpoints: Vec<T>,
}

/// Default cavity radius: 40 n Bohr radii of the hydrogenic ion, in natural units.
pub fn default_box_radius<T: Real>(z: u32, n: u32, alpha: T) -> T {
    T::int(40 * n as i64) / (T::int(z as i64) * alpha)
}

pub fn build_grid<T: Real>(z: u32, box_radius: T, knot_count: usize, alpha: T) -> Result<GridSpec<T>> {
    if z == 0 {
        return Err(Error::invalid("basis", "nuclear charge must be positive"));
    }
    if !(box_radius > T::zero()) || !box_radius.is_finite() {
        return Err(Error::invalid("basis", "box radius must be positive and finite"));
    }
    if knot_count < 3 {
        return Err(Error::invalid("basis", format!("need at least 3 breakpoints, got {knot_count}")));
    }
    let az = alpha * T::int(z as i64);
    if !(az < T::one()) {
        return Err(Error::domain("basis", format!("alpha Z = {az} is not below 1")));
    }
    let gamma0 = (T::one() - az * az).sqrt();
    let zf = T::int(z as i64);
    let rho_max = (box_radius * zf / gamma0).powf(T::lit(0.25));
    let last = knot_count - 1;
    let mut breakpoints: Vec<T> = (0..knot_count)
        .map(|i| {
            let rho = rho_max * T::int(i as i64) / T::int(last as i64);
            rho.powi(4) * gamma0 / zf
        })
        .collect();
    breakpoints[0] = T::zero();
    breakpoints[last] = box_radius;
    if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::numerical("basis", "grid breakpoints are not strictly increasing"));
    }
    Ok(GridSpec { z, box_radius, gamma0, breakpoints })
}

impl<T: Real> GridSpec<T> {
    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn box_radius(&self) -> T {
        self.box_radius
    }

    pub fn gamma0(&self) -> T {
        self.gamma0
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn knot_count(&self) -> usize {
        self.breakpoints.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_quartic_clustering() {
        let alpha = 1.0 / 137.0359895;
        let g = build_grid(92u32, 60.0f64, 41, alpha).unwrap();
        let b = g.breakpoints();
        assert_eq!(b[0], 0.0);
        assert_eq!(*b.last().unwrap(), 60.0);
        for i in 1..5 {
            let ratio = b[i] / b[1];
            assert!((ratio - (i as f64).powi(4)).abs() < 1e-9 * ratio);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let alpha = 1.0 / 137.0359895;
        assert!(build_grid(0u32, 1.0f64, 10, alpha).is_err());
        assert!(build_grid(1u32, -1.0f64, 10, alpha).is_err());
        assert!(build_grid(1u32, 1.0f64, 2, alpha).is_err());
        assert!(matches!(build_grid(140u32, 1.0f64, 10, alpha), Err(Error::Domain { .. })));
    }
}
