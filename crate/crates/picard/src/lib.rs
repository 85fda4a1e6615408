//! The pull-back action on the Picard lattice of the resolved space, its
//! exact eigenstructure and the degree growth it predicts.

pub mod action;
pub mod growth;

pub use action::{build_action_matrix, fixed_classes, published_rows, predicted_degrees, ActionMatrix, Provenance};
pub use growth::{growth_class, jordan_structure, GrowthClass, GrowthReport};
