//! Singularity patterns: germs `x(ε)` are pushed through the map with exact
//! rational functions of `ε`, their orders and leading terms are recorded,
//! and the dimension of the family of limit points decides whether a
//! divisor is contracted, blown up, confined or cyclic.

pub mod germ;
pub mod track;

pub use germ::{preset, preset_names, EpsilonGerm, Erratum, GermSpec};
pub use track::{classify, seeds_agree, track, track_seeds, verify, Classification, OrderTrace, StepRecord, Verdict};
