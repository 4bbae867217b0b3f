//! Sorted in-neighbour structure of a player.
//!
//! Player `i`'s in-neighbours are ranked by nondecreasing edge weight,
//! `b(1) <= .. <= b(m)` with `b(0) = 0`; equal weights are ordered by
//! ascending player id. Every closed-form value formula reads its
//! coefficients off this ranking.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::Result;
use crate::graph::{PlayerId, WeightedDigraph};
use crate::scalar::Scalar;

/// Which value operator a computation is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueKind {
    Shapley,
    Banzhaf,
}

impl ValueKind {
    /// Share of a unanimity dividend on a support of `size` players that
    /// each member receives: `1/size` or `2^(1-size)`.
    pub fn unanimity_share<T: Scalar>(self, size: usize) -> T {
        match self {
            ValueKind::Shapley => T::one() / T::from_count(size),
            ValueKind::Banzhaf => {
                let mut share = T::one();
                for _ in 1..size {
                    share = share / T::two();
                }
                share
            }
        }
    }

    /// Shares for supports of sizes `1..=len`, computed incrementally.
    pub fn unanimity_shares<T: Scalar>(self, len: usize) -> Vec<T> {
        let mut out = Vec::with_capacity(len);
        let mut pow = T::one();
        for size in 1..=len {
            out.push(match self {
                ValueKind::Shapley => T::one() / T::from_count(size),
                ValueKind::Banzhaf => pow,
            });
            pow = pow / T::two();
        }
        out
    }
}

impl std::str::FromStr for ValueKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "shapley" => Ok(Self::Shapley),
            "banzhaf" => Ok(Self::Banzhaf),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InNeighborProfile<T> {
    owner: PlayerId,
    ordered: Vec<(PlayerId, T)>,
    rank_of: HashMap<PlayerId, usize>,
}

/// Ascending weight, then ascending id.
pub(crate) fn rank_order<T: Scalar>(a: &(PlayerId, T), b: &(PlayerId, T)) -> Ordering {
    a.1.partial_cmp(&b.1)
        .unwrap_or(Ordering::Equal)
        .then(a.0.cmp(&b.0))
}

impl<T: Scalar> InNeighborProfile<T> {
    /// Builds the profile from `(neighbour, weight)` pairs in any order.
    pub fn from_neighbors(owner: PlayerId, mut neighbors: Vec<(PlayerId, T)>) -> Self {
        neighbors.sort_by(rank_order);
        let rank_of = neighbors
            .iter()
            .enumerate()
            .map(|(k, &(p, _))| (p, k + 1))
            .collect();
        Self {
            owner,
            ordered: neighbors,
            rank_of,
        }
    }

    pub fn owner(&self) -> PlayerId {
        self.owner
    }

    /// In-neighbours with weights, by rank.
    pub fn ordered(&self) -> &[(PlayerId, T)] {
        &self.ordered
    }

    /// Number of in-neighbours.
    pub fn m(&self) -> usize {
        self.ordered.len()
    }

    /// Weight at rank `t`, with `b(0) = 0`.
    pub fn b(&self, t: usize) -> T {
        if t == 0 {
            T::zero()
        } else {
            self.ordered[t - 1].1
        }
    }

    /// Largest incoming weight, zero without in-neighbours.
    pub fn top(&self) -> T {
        self.b(self.m())
    }

    /// 1-based rank of `neighbor`.
    pub fn rank_of(&self, neighbor: PlayerId) -> Option<usize> {
        self.rank_of.get(&neighbor).copied()
    }

    /// Neighbour at 1-based rank `t`.
    pub fn at_rank(&self, t: usize) -> PlayerId {
        self.ordered[t - 1].0
    }

    /// `T(1), .., T(m+1)` where `T(t)` is the owner plus its `t-1` weakest
    /// in-neighbours. Always an inclusion chain starting at `{owner}`.
    pub fn chain_supports(&self) -> Vec<Coalition> {
        let mut support = Coalition::singleton(self.owner);
        let mut out = Vec::with_capacity(self.m() + 1);
        out.push(support.clone());
        for &(p, _) in &self.ordered {
            support.insert(p);
            out.push(support.clone());
        }
        out
    }

    /// `S(r) = sum_{t=r+1..m} (b(t) - b(t-1)) * share(t)` for `r = 0..=m`,
    /// where `share(t)` is `1/t` (Shapley) or `1/2^(t-1)` (Banzhaf).
    pub fn tail_suffix_sums(&self, kind: ValueKind) -> Vec<T> {
        let m = self.m();
        let shares = kind.unanimity_shares::<T>(m);
        let mut sums = vec![T::zero(); m + 1];
        for r in (0..m).rev() {
            let t = r + 1;
            sums[r] = sums[t] + (self.b(t) - self.b(t - 1)) * shares[t - 1];
        }
        sums
    }

    /// Magnitude of the closing term `b(m) * share(m+1)`.
    pub fn correction(&self, kind: ValueKind) -> T {
        if self.m() == 0 {
            return T::zero();
        }
        self.top() * kind.unanimity_share::<T>(self.m() + 1)
    }
}

pub fn in_neighbor_profile<T: Scalar>(
    g: &WeightedDigraph<T>,
    i: PlayerId,
) -> Result<InNeighborProfile<T>> {
    g.check_player(i)?;
    Ok(InNeighborProfile::from_neighbors(
        i,
        g.in_edges(i).map(|e| (e.from, e.weight)).collect(),
    ))
}

/// Profiles of every player, indexed by id.
pub fn all_profiles<T: Scalar>(g: &WeightedDigraph<T>) -> Vec<InNeighborProfile<T>> {
    (0..g.n())
        .map(|i| {
            InNeighborProfile::from_neighbors(
                i,
                g.in_edges(i).map(|e| (e.from, e.weight)).collect(),
            )
        })
        .collect()
}

pub fn chain_supports<T: Scalar>(profile: &InNeighborProfile<T>) -> Vec<Coalition> {
    profile.chain_supports()
}

pub fn tail_suffix_sums<T: Scalar>(profile: &InNeighborProfile<T>, kind: ValueKind) -> Vec<T> {
    profile.tail_suffix_sums(kind)
}
