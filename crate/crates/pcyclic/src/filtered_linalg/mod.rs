//! Filtered Λ-spaces, zero-level reductions and filtered singular value
//! decompositions.

mod echelon;
mod map;
mod matrix;
mod oracle;
mod reduction;
mod space;
mod svd;
mod vector;
mod wire;

pub use echelon::{Echelon, ExactField};
pub use map::FilteredMap;
pub use matrix::SparseMatrix;
pub use oracle::{field_kernel, field_rank, rank_of, solve_in_span, IndependenceTracker};
pub use reduction::{
    extend_orthogonal, filtration_of, is_orthogonal, k_rank, leading, orthogonalize, reduce_to_zero_level,
    Leading, OrthogonalSet,
};
pub use space::FilteredSpace;
pub use svd::{optimal_pair, svd, verify_svd, Pivot, SvdResult};
pub use vector::SparseVector;
pub use wire::{
    entries_from_wire, entries_to_wire, vector_from_wire, vector_to_wire, FieldWire, MapWire, SpaceWire, SvdWire,
    VectorWire,
};
