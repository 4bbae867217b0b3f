//! Exact slopes of a player's value in a single edge weight.
//!
//! While no in-neighbour ranking changes, every value is linear in each
//! weight. For the edge `k -> j` and a target player the slope is:
//!
//! | target                                  | internal | Shapley external | Banzhaf external |
//! |-----------------------------------------|----------|------------------|------------------|
//! | the head `j`                            | 1/2      | 1/(r(r+1))       | 1/2^r            |
//! | the tail `k`                            | 1/2      | -1/(r+1)         | -1/2^r           |
//! | `i` with `i -> j` ranked below `k`      | 0        | 1/(r(r+1))       | 1/2^r            |
//! | anyone else                             | 0        | 0                | 0                |
//!
//! where `r` is the rank of `k` among `j`'s in-neighbours.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{PlayerId, WeightedDigraph};
use crate::profile::{in_neighbor_profile, ValueKind};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectCase {
    /// Target is the head of the edge.
    Head,
    /// Target is the tail of the edge.
    Tail,
    /// Target also points into the head, at a lower rank than the tail.
    SharedHeadBelow,
    Unaffected,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginalEffectReport<T> {
    pub edge: (PlayerId, PlayerId),
    pub target: PlayerId,
    pub method: ValueKind,
    pub case: EffectCase,
    pub internal_coeff: T,
    pub external_coeff: T,
    pub total_coeff: T,
    /// Rank of the edge's tail in the head's profile.
    pub rank_used: usize,
    /// Open interval of perturbations `eps` for which `w + eps` keeps every
    /// ranking (and stays in `[0, 1]`).
    pub valid_epsilon_window: (T, T),
}

pub fn marginal_effect<T: Scalar>(
    g: &WeightedDigraph<T>,
    edge: (PlayerId, PlayerId),
    target: PlayerId,
    method: ValueKind,
) -> Result<MarginalEffectReport<T>> {
    let (k, j) = edge;
    let weight = g
        .weight(k, j)
        .ok_or(Error::EdgeNotFound { from: k, to: j })?;
    g.check_player(target)?;
    let profile = in_neighbor_profile(g, j)?;
    let m = profile.m();
    let r = profile.rank_of(k).expect("tail of an in-edge is ranked");

    let rank_slope = |r: usize| -> T {
        match method {
            // 1/r - 1/(r+1); at r = m the closing term plays the successor's role
            ValueKind::Shapley => T::one() / (T::from_count(r) * T::from_count(r + 1)),
            ValueKind::Banzhaf => method.unanimity_share::<T>(r + 1),
        }
    };
    let tail_slope = |r: usize| -> T {
        match method {
            ValueKind::Shapley => -(T::one() / T::from_count(r + 1)),
            ValueKind::Banzhaf => -method.unanimity_share::<T>(r + 1),
        }
    };

    let shared_below =
        target != k && target != j && profile.rank_of(target).is_some_and(|rt| rt < r);
    let (case, internal, external) = if target == j {
        (EffectCase::Head, T::half(), rank_slope(r))
    } else if target == k {
        (EffectCase::Tail, T::half(), tail_slope(r))
    } else if shared_below {
        (EffectCase::SharedHeadBelow, T::zero(), rank_slope(r))
    } else {
        (EffectCase::Unaffected, T::zero(), T::zero())
    };

    let below = if r > 1 { profile.b(r - 1) } else { T::zero() };
    let above = if r < m { profile.b(r + 1) } else { T::one() };
    Ok(MarginalEffectReport {
        edge,
        target,
        method,
        case,
        internal_coeff: internal,
        external_coeff: external,
        total_coeff: internal + external,
        rank_used: r,
        valid_epsilon_window: (below - weight, above - weight),
    })
}

pub fn marginal_effect_shapley<T: Scalar>(
    g: &WeightedDigraph<T>,
    edge: (PlayerId, PlayerId),
    target: PlayerId,
) -> Result<MarginalEffectReport<T>> {
    marginal_effect(g, edge, target, ValueKind::Shapley)
}

pub fn marginal_effect_banzhaf<T: Scalar>(
    g: &WeightedDigraph<T>,
    edge: (PlayerId, PlayerId),
    target: PlayerId,
) -> Result<MarginalEffectReport<T>> {
    marginal_effect(g, edge, target, ValueKind::Banzhaf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g3, gf, gf_ids::*};
    use crate::values::closed_form;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    /// Difference quotient of the closed form at half the window.
    fn finite_difference(
        g: &WeightedDigraph<f64>,
        report: &MarginalEffectReport<f64>,
        method: ValueKind,
    ) -> f64 {
        let (k, j) = report.edge;
        let w = g.weight(k, j).unwrap();
        let (lo, hi) = report.valid_epsilon_window;
        let eps = if hi > 0.0 { hi / 2.0 } else { lo / 2.0 };
        let moved = g.reweighted(k, j, w + eps).unwrap();
        let before = closed_form(g, method)[report.target];
        let after = closed_form(&moved, method)[report.target];
        (after - before) / eps
    }

    #[test]
    fn g3_shapley_cases() {
        let g = g3();
        let r = marginal_effect_shapley(&g, (1, 0), 0).unwrap();
        assert_eq!(r.case, EffectCase::Head);
        assert!(close(r.internal_coeff, 0.5) && close(r.external_coeff, 0.5));
        assert!(close(r.total_coeff, 1.0));
        assert_eq!(r.rank_used, 1);

        let r = marginal_effect_shapley(&g, (1, 0), 1).unwrap();
        assert_eq!(r.case, EffectCase::Tail);
        assert!(close(r.external_coeff, -0.5) && close(r.total_coeff, 0.0));

        let r = marginal_effect_shapley(&g, (2, 0), 1).unwrap();
        assert_eq!(r.case, EffectCase::SharedHeadBelow);
        assert!(close(r.internal_coeff, 0.0) && close(r.external_coeff, 1.0 / 6.0));

        // player 3 ranks above player 2, so it does not feel a_21
        let r = marginal_effect_shapley(&g, (1, 0), 2).unwrap();
        assert_eq!(r.case, EffectCase::Unaffected);
        assert_eq!(r.total_coeff, 0.0);
    }

    #[test]
    fn g3_banzhaf_cases() {
        let g = g3();
        let r = marginal_effect_banzhaf(&g, (1, 0), 0).unwrap();
        assert!(close(r.external_coeff, 0.5) && close(r.total_coeff, 1.0));
        let r = marginal_effect_banzhaf(&g, (1, 0), 1).unwrap();
        assert!(close(r.external_coeff, -0.5) && close(r.total_coeff, 0.0));
        let r = marginal_effect_banzhaf(&g, (2, 0), 2).unwrap();
        assert!(close(r.external_coeff, -0.25) && close(r.total_coeff, 0.25));
        let r = marginal_effect_banzhaf(&g, (2, 0), 1).unwrap();
        assert!(close(r.external_coeff, 0.25));
    }

    #[test]
    fn windows() {
        let g = g3();
        let r = marginal_effect_shapley(&g, (1, 0), 0).unwrap();
        assert!(close(r.valid_epsilon_window.0, -0.2) && close(r.valid_epsilon_window.1, 0.3));
        let r = marginal_effect_shapley(&g, (2, 0), 0).unwrap();
        assert!(close(r.valid_epsilon_window.0, -0.3) && close(r.valid_epsilon_window.1, 0.5));
    }

    #[test]
    fn tie_closes_window_on_one_side() {
        let g = WeightedDigraph::from_edges(3, [(1, 0, 0.4), (2, 0, 0.4)]).unwrap();
        let low = marginal_effect_shapley(&g, (1, 0), 0).unwrap();
        assert_eq!(low.valid_epsilon_window.1, 0.0);
        let high = marginal_effect_shapley(&g, (2, 0), 0).unwrap();
        assert_eq!(high.valid_epsilon_window.0, 0.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            marginal_effect_shapley(&g3(), (0, 1), 0),
            Err(Error::EdgeNotFound { .. })
        ));
        assert!(marginal_effect_shapley(&g3(), (1, 0), 9).is_err());
    }

    #[test]
    fn finite_differences_on_every_case() {
        for (g, _) in [(g3(), ()), (gf(0.35), ()), (gf(0.9), ())] {
            for method in [ValueKind::Shapley, ValueKind::Banzhaf] {
                for e in g.edges() {
                    for target in 0..g.n() {
                        let r = marginal_effect(&g, (e.from, e.to), target, method).unwrap();
                        let fd = finite_difference(&g, &r, method);
                        assert!(close(fd, r.total_coeff), "{r:?}: fd {fd}");
                    }
                }
            }
        }
    }

    #[test]
    fn top_rank_uses_interior_form() {
        // i is the strongest in-neighbour of j when a = 0.9
        let r = marginal_effect_shapley(&gf(0.9), (I, J), J).unwrap();
        assert_eq!(r.rank_used, 4);
        assert!(close(r.external_coeff, 1.0 / 20.0));
        let r = marginal_effect_shapley(&gf(0.9), (K3, J), K2).unwrap();
        assert_eq!(r.case, EffectCase::SharedHeadBelow);
        assert!(close(r.external_coeff, 1.0 / 12.0));
        let r = marginal_effect_shapley(&gf(0.9), (K4, I), I).unwrap();
        assert_eq!(r.case, EffectCase::Head);
    }
}
