//! B-spline finite basis for the radial Coulomb-Dirac problem.

mod analytic;
mod bspline;
mod grid;
mod spectrum;

use std::sync::Arc;

pub use analytic::{analytic_energy, AnalyticState, Orbital};
pub use bspline::SplineBasis;
pub use grid::{build_grid, default_box_radius, GridSpec};
pub use spectrum::{assemble, solve_spectrum, DiracSpectrum, LABEL_TOLERANCE};

use crate::error::Result;
use crate::scalar::Real;

/// Basis-set knobs shared by every channel of one calculation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisConfig<T> {
    /// Spline count before the two boundary splines are dropped.
    pub n_splines: usize,
    pub order: usize,
    pub quadrature_order: usize,
    /// Cavity radius; `None` selects [`default_box_radius`] for the state.
    pub box_radius: Option<T>,
}

impl<T: Real> Default for BasisConfig<T> {
    fn default() -> Self {
        Self { n_splines: 65, order: 9, quadrature_order: 12, box_radius: None }
    }
}

impl<T: Real> BasisConfig<T> {
    /// Grid plus tabulated splines for nuclear charge `z`, sized for a state
    /// with principal quantum number `n`.
    pub fn build(&self, z: u32, n: u32, alpha: T) -> Result<Arc<SplineBasis<T>>> {
        if self.n_splines < self.order + 2 {
            return Err(crate::Error::invalid(
                "basis",
                format!("{} splines is too few for order {}", self.n_splines, self.order),
            ));
        }
        let radius = self.box_radius.unwrap_or_else(|| default_box_radius(z, n, alpha));
        let grid = build_grid(z, radius, self.n_splines - self.order + 2, alpha)?;
        Ok(Arc::new(SplineBasis::new(grid, self.order, self.quadrature_order)?))
    }
}
