use crate::error::{guard, Result};
use crate::game::value_table;
use crate::graph::WeightedDigraph;
use crate::profile::ValueKind;
use crate::scalar::Scalar;

use super::{closed_form, Allocation, AllocationKind};

pub fn banzhaf_closed_form<T: Scalar>(g: &WeightedDigraph<T>) -> Allocation<T> {
    Allocation::over_graph(
        g,
        closed_form(g, ValueKind::Banzhaf),
        AllocationKind::Banzhaf,
    )
}

/// Mean marginal contribution of each player over the `2^(n-1)` coalitions
/// without it.
pub fn banzhaf_of_table<T: Scalar>(n: usize, v: &[T]) -> Vec<T> {
    let mut norm = T::one();
    for _ in 1..n {
        norm = norm / T::two();
    }
    (0..n)
        .map(|i| {
            let bit = 1usize << i;
            let total = (0..v.len())
                .filter(|mask| mask & bit == 0)
                .fold(T::zero(), |acc, mask| acc + v[mask | bit] - v[mask]);
            total * norm
        })
        .collect()
}

pub fn banzhaf_bruteforce<T: Scalar>(
    g: &WeightedDigraph<T>,
    max_n: usize,
) -> Result<Allocation<T>> {
    guard("banzhaf brute force", g.n(), max_n)?;
    let v = value_table(g, max_n)?;
    Ok(Allocation::over_graph(
        g,
        banzhaf_of_table(g.n(), &v),
        AllocationKind::Banzhaf,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalition::Coalition;
    use crate::fixtures::{edgeless, g2, g3, gf};
    use crate::values::BRUTEFORCE_MAX_N;

    fn assert_payoffs(got: &[f64], want: &[f64]) {
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn g3_values() {
        let closed = banzhaf_closed_form(&g3());
        assert_payoffs(&closed.payoffs, &[0.575, 0.125, 0.125]);
        assert!(!closed.efficient);
        let brute = banzhaf_bruteforce(&g3(), BRUTEFORCE_MAX_N).unwrap();
        assert_payoffs(&brute.payoffs, &[0.575, 0.125, 0.125]);
    }

    #[test]
    fn g3_player_one_by_hand() {
        // marginals of player 1 over {}, {2}, {3}, {2,3}
        let v = value_table(&g3(), 12).unwrap();
        let m = [
            v[0b001] - v[0],
            v[0b011] - v[0b010],
            v[0b101] - v[0b100],
            v[0b111] - v[0b110],
        ];
        assert_payoffs(&m, &[0.2, 0.7, 0.7, 0.7]);
        assert_payoffs(&[m.iter().sum::<f64>() / 4.0], &[0.575]);
    }

    #[test]
    fn small_fixtures() {
        assert_payoffs(&banzhaf_closed_form(&g2()).payoffs, &[0.0, 0.6]);
        assert_payoffs(
            &banzhaf_bruteforce(&g2(), BRUTEFORCE_MAX_N).unwrap().payoffs,
            &[0.0, 0.6],
        );
        assert_payoffs(&banzhaf_closed_form(&edgeless(4)).payoffs, &[0.0; 4]);
        assert_payoffs(
            &banzhaf_bruteforce(&edgeless(4), BRUTEFORCE_MAX_N)
                .unwrap()
                .payoffs,
            &[0.0; 4],
        );
    }

    #[test]
    fn unanimity_game_share() {
        // u_{0,1} on three players
        let support = Coalition::from([0, 1]);
        let v: Vec<f64> = (0..8u64)
            .map(|m| {
                if support.is_subset(&Coalition::from_mask(m)) {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        assert_payoffs(&banzhaf_of_table(3, &v), &[0.5, 0.5, 0.0]);
    }

    #[test]
    fn closed_form_matches_oracle_on_gf() {
        for a in [0.0, 0.1, 0.2, 0.65, 1.0] {
            let g = gf(a);
            assert_payoffs(
                &banzhaf_closed_form(&g).payoffs,
                &banzhaf_bruteforce(&g, BRUTEFORCE_MAX_N).unwrap().payoffs,
            );
        }
    }
}
