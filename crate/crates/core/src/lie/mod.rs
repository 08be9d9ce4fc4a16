//! Ternary Lie brackets on heaps (Lie trusses), Lie affebras, and the
//! constructions relating them to each other and to Lie rings.

mod affebra;
mod ring;
mod ternary;

pub use affebra::{
    affebra_to_ternary, linearized_bracket, ternary_to_affebra, validate_lie_affebra, LieAffebra,
};
pub use ring::{retract_lie_ring, validate_lie_ring, LieRingView};
pub use ternary::{
    bracket_from_truss, derivations_lie_truss, strengthen_bracket, validate_lie_truss,
    validate_strong_jacobi, DerivationLieTruss, LieBase, LieTernary,
};
