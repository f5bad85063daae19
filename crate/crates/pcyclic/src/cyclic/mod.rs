//! Cyclic group actions on cones: repair to exact actions, eigenspace
//! splitting, invariant complements, p-tuple decompositions and the
//! divisibility invariant.

mod action;
mod divisibility;
mod fixture;
mod maschke;
mod ptuple;
mod repair;
mod strategy;

pub use action::{is_permutation, preserves_filtration, strictly_lowering, CyclicActionData, RootAction};
pub use divisibility::{
    divisibility_invariant, divisibility_invariant_all, divisibility_invariant_of_lengths, verify_p_tuple_multiplicity,
};
pub use fixture::{
    generate_power_p_fixture, generate_power_p_fixture_with, FixtureConfig, FixtureWire, PowerFixture, FIXTURE_SCHEMA,
};
pub use maschke::{eigen_projectors, eigenspace_decomposition, maschke_complement, maschke_in_span};
pub use ptuple::{p_cyclic_svd, PTupleBlock, PTupleSVD};
pub use repair::{binomial_series, invert_perturbed, repair_to_group_action, RepairedAction};
pub use strategy::{
    strategies, strategy, strategy_barcode, BarcodeStrategy, FilteredSvdStrategy, PCyclicStrategy, StrategyInput,
};
