//! Degrees of iterates measured by restriction to random lines, and
//! detection of eventually quadratic growth.

pub mod fit;
pub mod lines;

pub use fit::{quadratic_fit, QuadraticFit};
pub use lines::{degree_sequence, phi_degree_sequence, psi_degree_sequence, Arithmetic, DegreeConfig, DegreeTable, FactorDegrees};
