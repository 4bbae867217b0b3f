use crate::error::{guard, Result};
use crate::game::value_table;
use crate::graph::WeightedDigraph;
use crate::profile::ValueKind;
use crate::scalar::Scalar;

use super::{closed_form, Allocation, AllocationKind};

pub fn shapley_closed_form<T: Scalar>(g: &WeightedDigraph<T>) -> Allocation<T> {
    Allocation::over_graph(
        g,
        closed_form(g, ValueKind::Shapley),
        AllocationKind::Shapley,
    )
}

/// Shapley value from a full table of `v`, via the subset-weighted sum
/// `sum_{S not containing i} |S|! (n-|S|-1)! / n! * (v(S+i) - v(S))`.
pub fn shapley_of_table<T: Scalar>(n: usize, v: &[T]) -> Vec<T> {
    if n == 0 {
        return Vec::new();
    }
    // weight[s] = 1 / (n * C(n-1, s))
    let mut weight = Vec::with_capacity(n);
    let mut binom = T::one();
    for s in 0..n {
        weight.push(T::one() / (T::from_count(n) * binom));
        binom = binom * T::from_count(n - 1 - s) / T::from_count(s + 1);
    }
    (0..n)
        .map(|i| {
            let bit = 1usize << i;
            (0..v.len())
                .filter(|mask| mask & bit == 0)
                .fold(T::zero(), |acc, mask| {
                    let s = mask.count_ones() as usize;
                    acc + weight[s] * (v[mask | bit] - v[mask])
                })
        })
        .collect()
}

/// Definitional Shapley value by enumerating all `2^n` coalitions.
pub fn shapley_bruteforce<T: Scalar>(
    g: &WeightedDigraph<T>,
    max_n: usize,
) -> Result<Allocation<T>> {
    guard("shapley brute force", g.n(), max_n)?;
    let v = value_table(g, max_n)?;
    Ok(Allocation::over_graph(
        g,
        shapley_of_table(g.n(), &v),
        AllocationKind::Shapley,
    ))
}
