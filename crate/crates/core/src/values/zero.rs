use crate::error::Result;
use crate::graph::{PlayerId, WeightedDigraph};
use crate::scalar::Scalar;

/// Structural test for a zero Shapley value: every in-edge of `i` has weight
/// zero, and every out-neighbour of `i` either has `i` as its only
/// in-neighbour or receives only zero-weight in-edges.
pub fn is_zero_shapley_player<T: Scalar>(g: &WeightedDigraph<T>, i: PlayerId) -> Result<bool> {
    g.check_player(i)?;
    let zero_in = |p: PlayerId| g.in_edges(p).all(|e| e.weight == T::zero());
    Ok(zero_in(i)
        && g.out_edges(i)
            .all(|e| g.in_degree(e.to) == 1 || zero_in(e.to)))
}
