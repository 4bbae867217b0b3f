//! Shapley and Banzhaf values: closed forms, definitional oracles, and
//! sensitivity to single edge weights.

mod allocation;
mod banzhaf;
mod marginal;
mod shapley;
mod sweep;
mod zero;

pub use allocation::{Allocation, AllocationKind};
pub use banzhaf::{banzhaf_bruteforce, banzhaf_closed_form, banzhaf_of_table};
pub use marginal::{
    marginal_effect, marginal_effect_banzhaf, marginal_effect_shapley, EffectCase,
    MarginalEffectReport,
};
pub use shapley::{shapley_bruteforce, shapley_closed_form, shapley_of_table};
pub use sweep::{sweep_edge, uniform_grid, Segment, SweepRow, SweepTable};
pub use zero::is_zero_shapley_player;

use crate::graph::WeightedDigraph;
use crate::mobius::GameDecomposition;
use crate::profile::{all_profiles, ValueKind};
use crate::scalar::Scalar;

/// Default guard for the brute-force oracles.
pub const BRUTEFORCE_MAX_N: usize = 12;

/// Closed-form value of every player, in `O(E log E)`.
///
/// Each player collects half of its incident edge weight, its own chain
/// `S_i(0) - c_i`, and for every out-neighbour `j` the tail of `j`'s chain
/// past its own rank, `S_j(r_j(i)) - c_j`. Here `S` are the tail suffix sums
/// and `c` the closing terms of the profiles.
pub(crate) fn closed_form<T: Scalar>(g: &WeightedDigraph<T>, kind: ValueKind) -> Vec<T> {
    let mut payoffs: Vec<T> = (0..g.n())
        .map(|i| (g.out_weight(i) + g.in_weight(i)) * T::half())
        .collect();
    for profile in all_profiles(g) {
        if profile.m() == 0 {
            continue;
        }
        let sums = profile.tail_suffix_sums(kind);
        let correction = profile.correction(kind);
        let owner = profile.owner();
        payoffs[owner] = payoffs[owner] + sums[0] - correction;
        for (k, &(tail, _)) in profile.ordered().iter().enumerate() {
            payoffs[tail] = payoffs[tail] + sums[k + 1] - correction;
        }
    }
    payoffs
}

/// Value obtained by crediting every unanimity term's coefficient to its
/// support members, `1/|T|` each (Shapley) or `2^(1-|T|)` each (Banzhaf).
pub fn value_from_decomposition<T: Scalar>(
    d: &GameDecomposition<T>,
    n: usize,
    kind: ValueKind,
) -> Vec<T> {
    let mut payoffs = vec![T::zero(); n];
    for term in &d.terms {
        let share = term.coefficient * kind.unanimity_share::<T>(term.support.len());
        for p in term.support.iter() {
            payoffs[p] = payoffs[p] + share;
        }
    }
    payoffs
}
