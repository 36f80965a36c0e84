//! Shared numerical building blocks.

pub mod fourier;
pub mod linalg;
pub mod quadrature;
pub mod series;
