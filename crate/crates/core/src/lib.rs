//! Relativistic nuclear recoil corrections for hydrogen-like and
//! lithium-like ions, to all orders in `alpha Z`.
//!
//! The radial Dirac equation for a point Coulomb nucleus is discretised in a
//! B-spline basis; the resulting finite spectrum replaces the Coulomb Green
//! function in the spectral sums for the Coulomb, one-transverse-photon and
//! two-transverse-photon recoil contributions.
//!
//! Everything numerical is generic over [`Real`]; the `*64` aliases below are
//! what the CLI and the acceptance suite use.

// `!(x > 0)` style guards are there to reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod scalar;
pub mod error;
pub mod special;
pub mod angular;
pub mod linalg;
pub mod basis;
pub mod matrix_elements;
pub mod recoil_one;
pub mod recoil_two;

pub use error::{Error, Result};
pub use scalar::Real;
pub mod analysis;

/// Double-precision aliases of the generic types.
pub type DiracSpectrum64 = basis::DiracSpectrum<f64>;
pub type SplineBasis64 = basis::SplineBasis<f64>;
pub type BasisConfig64 = basis::BasisConfig<f64>;
pub type RecoilSpectra64 = recoil_one::RecoilSpectra<f64>;
pub type RecoilConfig64 = recoil_one::RecoilConfig<f64>;
pub type RecoilBreakdownOne64 = recoil_one::RecoilBreakdownOne<f64>;
pub type RecoilBreakdownTwo64 = recoil_two::RecoilBreakdownTwo<f64>;
pub type PhysicalConstants64 = analysis::PhysicalConstants<f64>;
pub type FitResult64 = analysis::FitResult<f64>;
