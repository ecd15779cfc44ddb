//! Scalar special functions and quadrature rules.

mod kernels;
mod quadrature;
mod sici;

pub use kernels::{
    f_kernel, ftilde_kernel, kernel_f, kernel_ftilde, phi1, phi1_kernel, phi2, phi2_kernel, Side,
    SERIES_SWITCH,
};
pub use quadrature::QuadratureRule;
pub use sici::{auxiliary_fg, cosine_integral_ci, sici, sine_integral_si};
