use serde::Serialize;

use crate::coalition::Coalition;
use crate::game::value;
use crate::graph::{PlayerId, WeightedDigraph};
use crate::scalar::{sum, Scalar, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AllocationKind {
    Shapley,
    Banzhaf,
    Core,
    Subgame,
}

/// A payoff vector over `players`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Allocation<T> {
    pub players: Vec<PlayerId>,
    pub payoffs: Vec<T>,
    pub kind: AllocationKind,
    /// Payoffs sum to the worth of `players` as a coalition.
    pub efficient: bool,
}

impl<T: Scalar> Allocation<T> {
    /// Allocation over all players of `g`, with `efficient` computed.
    pub fn over_graph(g: &WeightedDigraph<T>, payoffs: Vec<T>, kind: AllocationKind) -> Self {
        Self::over(g, (0..g.n()).collect(), payoffs, kind)
    }

    /// Allocation over a subset of players, with `efficient` computed
    /// against the worth of that subset.
    pub fn over(
        g: &WeightedDigraph<T>,
        players: Vec<PlayerId>,
        payoffs: Vec<T>,
        kind: AllocationKind,
    ) -> Self {
        let worth = value(g, &players.iter().copied().collect::<Coalition>())
            .expect("allocation players belong to the graph");
        let efficient = sum(payoffs.iter().copied()).approx_eq(worth, DEFAULT_TOL);
        Self {
            players,
            payoffs,
            kind,
            efficient,
        }
    }

    pub fn total(&self) -> T {
        sum(self.payoffs.iter().copied())
    }

    /// Payoff of `p`, if it is covered.
    pub fn payoff(&self, p: PlayerId) -> Option<T> {
        self.players
            .iter()
            .position(|&q| q == p)
            .map(|k| self.payoffs[k])
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(&self, other: &Allocation<T>) -> T {
        self.payoffs
            .iter()
            .zip(&other.payoffs)
            .map(|(&a, &b)| (a - b).abs())
            .fold(T::zero(), T::max_of)
    }

    /// Players holding the largest payoff, within `tol`.
    pub fn argmax(&self, tol: f64) -> Vec<PlayerId> {
        let Some(best) = self.payoffs.iter().copied().reduce(T::max_of) else {
            return Vec::new();
        };
        self.players
            .iter()
            .zip(&self.payoffs)
            .filter(|(_, &x)| x.approx_eq(best, tol))
            .map(|(&p, _)| p)
            .collect()
    }
}
