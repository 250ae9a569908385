//! Special functions, quadrature, interpolation and spectral tools
//! shared by the physics modules. Everything here is generic over
//! [`Real`](crate::scalar::Real).

pub mod bessel;
pub mod interp;
pub mod quadrature;
pub mod spectral;

pub use bessel::{bessel_j, bessel_j_capped, bessel_j_run};
pub use interp::HermiteTable;
pub use quadrature::{
    composite_gauss_legendre, gauss_legendre, integrate_1d, integrate_1d_complex,
    trapezoid_periodic, Estimate, QuadratureRule, Scheme,
};
pub use spectral::{
    fourier_coefficients, harmonic_of_bin, spectral_derivative_on_grid,
    spectral_derivative_periodic,
};
