pub mod error;
pub mod hilbert;
pub mod operators;
mod parallel;
pub mod quadrature;
pub mod su2;
pub mod symmetry;
pub mod zeros;
pub mod zeta;
