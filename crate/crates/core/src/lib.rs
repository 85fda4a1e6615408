//! The four-dimensional map reduced from the lattice super-KdV equation,
//! its inverse, the three-dimensional reduction and the two invariants,
//! together with the shared error type and the parallel/sequential
//! execution switch.

pub mod dynamics;
pub mod error;
pub mod exec;
pub mod serde_q;

pub use error::{CoreError, Result};
pub use exec::Exec;
