//! Finite heaps, trusses, affine spaces and their Lie structures.
//!
//! Carriers are `0..n` and elements are plain indices ([`Elem`]).

pub type Elem = usize;

pub mod affine;
pub mod error;
pub mod format;
pub mod group;
pub mod heap;
pub mod lie;
pub mod report;
pub mod search;
pub mod symbolic;
pub mod truss;

pub use affine::{AffineStructure, PrimeField, VectorSpaceView};
pub use error::{Error, Result};
pub use group::AbelianGroup;
pub use heap::{FiniteHeap, TernaryTable};
pub use lie::{LieAffebra, LieBase, LieRingView, LieTernary};
pub use report::{ReportMode, Violation, ViolationReport};
pub use truss::{Derivation, TrussStructure};
