//! Trust games on weighted directed graphs.
//!
//! A weighted digraph with weights in `[0, 1]` induces a transferable-utility
//! game: a coalition is worth the weight of the edges inside it plus, for
//! each member, the weakest in-edge reaching it from outside. This crate
//! evaluates that game, expands it into unanimity games, computes Shapley
//! and Banzhaf values in closed form (and by brute force, for checking),
//! analyses how values respond to single edge weights, and constructs the
//! core and subgame core points.
//!
//! Everything is generic over [`Scalar`]; the aliases below fix `f64`.

pub mod coalition;
pub mod core_solver;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod graph;
pub mod mobius;
pub mod parse;
pub mod profile;
pub mod random;
pub mod scalar;
pub mod values;

pub use coalition::Coalition;
pub use core_solver::{
    core_allocation, core_upper_bounds, is_in_core, subgame_allocation, verify_core_identity,
    verify_total_balancedness, BalanceReport, CoalitionDeficit, CoreReport, SubgameViolation,
};
pub use error::{Error, Result};
pub use game::{
    check_monotone, check_superadditive, coalition_value, external_player_value, sample_monotone,
    sample_superadditive, value, value_table, CheckReport, PairViolation, ValueBreakdown,
};
pub use graph::{Edge, GraphBuilder, PlayerId, WeightedDigraph};
pub use mobius::{
    evaluate_decomposition, external_chain_terms, full_decomposition, mobius_oracle,
    GameDecomposition, SubsetTable, UnanimityTerm,
};
pub use parse::{parse_graph, GraphFormat};
pub use profile::{
    chain_supports, in_neighbor_profile, tail_suffix_sums, InNeighborProfile, ValueKind,
};
pub use scalar::{Scalar, DEFAULT_TOL};
pub use values::{
    banzhaf_bruteforce, banzhaf_closed_form, is_zero_shapley_player, marginal_effect,
    marginal_effect_banzhaf, marginal_effect_shapley, shapley_bruteforce, shapley_closed_form,
    sweep_edge, uniform_grid, Allocation, AllocationKind, EffectCase, MarginalEffectReport,
    SweepTable,
};

pub type Digraph = WeightedDigraph<f64>;
pub type Profile = InNeighborProfile<f64>;
pub type Breakdown = ValueBreakdown<f64>;
pub type Decomposition = GameDecomposition<f64>;
pub type Payoffs = Allocation<f64>;
pub type EffectReport = MarginalEffectReport<f64>;
pub type Sweep = SweepTable<f64>;
pub type Report = CheckReport<f64>;
pub type CoreCheck = CoreReport<f64>;
