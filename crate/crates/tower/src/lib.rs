//! The nine base charts of `P²×P²`, the seventeen blow-ups resolving the
//! indeterminacy of the map, and valuations of functions and blow-up
//! centers along the resulting divisors.

pub mod class;
pub mod tower;
pub mod valuation;

pub use class::{DivisorClass, NUM_E, RANK};
pub use tower::{Series, Tower};
pub use valuation::{default_valuator, sampled, symbolic, Hypersurface, Valuator};
