//! Recovering the invariants from their divisor classes.
//!
//! A class `2H_a + 2H_b − Σ ν_j [F_j]` translates into orders of vanishing
//! `ν_j` along the exceptional divisors; imposing them on all polynomials of
//! bidegree `(2, 2)` gives a linear system whose kernel is compared with
//! `span{1, I₁}` and `span{1, I₁, I₂}`.

pub mod ansatz;
pub mod system;

pub use ansatz::{i1_class, i2_class, Ansatz, AnsatzKind, ClassConstraint};
pub use system::{
    find_invariants, invariant_targets, match_invariants, orders_on_germs, solve_kernel, vanishing_system,
    FinderConfig, InvariantMatch, InvariantReport, VanishingSystem,
};
