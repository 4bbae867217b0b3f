//! The core of the trust game and total balancedness.
//!
//! The core is the single allocation paying each player its total incoming
//! weight. Every subgame on `S` has the core point that pays each member
//! its incoming weight from inside `S` plus its external bottleneck.

use rayon::prelude::*;
use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::{guard, Error, Result};
use crate::game::{external_player_value, value, value_table};
use crate::graph::WeightedDigraph;
use crate::scalar::{Scalar, DEFAULT_TOL};
use crate::values::{Allocation, AllocationKind};

/// Default guard for [`is_in_core`].
pub const CORE_MAX_N: usize = 16;
/// Default guard for [`verify_total_balancedness`].
pub const BALANCE_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoalitionDeficit<T> {
    pub coalition: Coalition,
    /// `v(S) - x(S)`, positive when `S` can do better on its own.
    pub deficit: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreReport<T> {
    pub allocation: Allocation<T>,
    /// `x(N) - v(N)`.
    pub efficiency_gap: T,
    pub efficient: bool,
    /// The allocation equals `v(N) - v(N \ {i})` for every `i`, the upper
    /// bound any core point must meet, so it is the unique core point.
    pub is_unique_checked: bool,
    /// `sum_i v(N \ {i}) / (n - 1)`; `None` for fewer than two players.
    pub identity_lhs: Option<T>,
    /// `v(N)`; `None` for fewer than two players.
    pub identity_rhs: Option<T>,
    pub coalitions_checked: u64,
    pub violations: Vec<CoalitionDeficit<T>>,
}

impl<T> CoreReport<T> {
    pub fn is_member(&self) -> bool {
        self.efficient && self.violations.is_empty()
    }
}

pub fn core_allocation<T: Scalar>(g: &WeightedDigraph<T>) -> Allocation<T> {
    let payoffs = (0..g.n()).map(|i| g.in_weight(i)).collect();
    Allocation::over_graph(g, payoffs, AllocationKind::Core)
}

/// `c_i = v(N) - v(N \ {i})` for every player.
pub fn core_upper_bounds<T: Scalar>(g: &WeightedDigraph<T>) -> Vec<T> {
    let grand = Coalition::grand(g.n());
    let worth = value(g, &grand).expect("grand coalition is valid");
    (0..g.n())
        .map(|i| {
            let rest: Coalition = grand.iter().filter(|&p| p != i).collect();
            worth - value(g, &rest).expect("subset of grand coalition")
        })
        .collect()
}

/// Both sides of `sum_i v(N \ {i}) / (n - 1) = v(N)`.
pub fn verify_core_identity<T: Scalar>(g: &WeightedDigraph<T>) -> Result<(T, T)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooFewPlayers {
            operation: "core identity",
            required: 2,
            n,
        });
    }
    let grand = Coalition::grand(n);
    let rhs = value(g, &grand)?;
    let mut lhs = T::zero();
    for i in 0..n {
        let rest: Coalition = grand.iter().filter(|&p| p != i).collect();
        lhs = lhs + value(g, &rest)?;
    }
    Ok((lhs / T::from_count(n - 1), rhs))
}

/// Sums of `x` over every subset, indexed by bitmask.
fn subset_sums<T: Scalar>(x: &[T]) -> Vec<T> {
    let mut sums = vec![T::zero(); 1 << x.len()];
    for mask in 1..sums.len() {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + x[low];
    }
    sums
}

/// Exhaustive core test of `x`: efficiency within `tol` (relative) and
/// `x(S) >= v(S)` for all `S`, where only deficits above `tol` count.
pub fn is_in_core<T: Scalar>(
    g: &WeightedDigraph<T>,
    x: &Allocation<T>,
    tol: f64,
    max_n: usize,
) -> Result<CoreReport<T>> {
    let n = g.n();
    guard("core membership", n, max_n)?;
    if x.payoffs.len() != n {
        return Err(Error::AllocationLength {
            got: x.payoffs.len(),
            expected: n,
        });
    }
    let v = value_table(g, max_n)?;
    let xs = subset_sums(&x.payoffs);
    let full = (1usize << n) - 1;
    let tol_t = T::tolerance(tol);
    let violations: Vec<_> = (1..=full)
        .filter_map(|mask| {
            let deficit = v[mask] - xs[mask];
            (deficit > tol_t).then(|| CoalitionDeficit {
                coalition: Coalition::from_mask(mask as u64),
                deficit,
            })
        })
        .collect();
    let upper = core_upper_bounds(g);
    let is_unique_checked = x
        .payoffs
        .iter()
        .zip(&upper)
        .all(|(&a, &c)| a.approx_eq(c, tol));
    let (identity_lhs, identity_rhs) = match verify_core_identity(g) {
        Ok((l, r)) => (Some(l), Some(r)),
        Err(_) => (None, None),
    };
    Ok(CoreReport {
        allocation: x.clone(),
        efficiency_gap: xs[full] - v[full],
        efficient: xs[full].approx_eq(v[full], tol),
        is_unique_checked,
        identity_lhs,
        identity_rhs,
        coalitions_checked: full as u64,
        violations,
    })
}

/// The core point of the subgame on `s`, indexed over the members of `s`.
pub fn subgame_allocation<T: Scalar>(
    g: &WeightedDigraph<T>,
    s: &Coalition,
) -> Result<Allocation<T>> {
    if s.is_empty() {
        return Err(Error::EmptyCoalition);
    }
    crate::game::validate_coalition(g, s)?;
    let players = s.members();
    let payoffs = players
        .iter()
        .map(|&j| {
            let inside = g
                .in_edges(j)
                .filter(|e| s.contains(e.from))
                .fold(T::zero(), |acc, e| acc + e.weight);
            inside + external_player_value(g, s, j)
        })
        .collect();
    Ok(Allocation::over(
        g,
        players,
        payoffs,
        AllocationKind::Subgame,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubgameViolation<T> {
    pub subgame: Coalition,
    pub coalition: Coalition,
    pub deficit: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalanceReport<T> {
    pub subgames_checked: u64,
    pub pairs_checked: u64,
    /// Subgames whose constructed allocation does not sum to `v(S)`.
    pub inefficient: Vec<Coalition>,
    pub violations: Vec<SubgameViolation<T>>,
}

impl<T> BalanceReport<T> {
    pub fn passed(&self) -> bool {
        self.inefficient.is_empty() && self.violations.is_empty()
    }
}

/// Checks, for every nonempty `S`, that [`subgame_allocation`] lies in the
/// core of the subgame on `S`. Subgames run by increasing size.
pub fn verify_total_balancedness<T: Scalar>(
    g: &WeightedDigraph<T>,
    max_n: usize,
) -> Result<BalanceReport<T>> {
    let n = g.n();
    guard("total balancedness", n, max_n)?;
    let v = value_table(g, max_n)?;
    let mut subgames: Vec<u64> = (1..1u64 << n).collect();
    subgames.sort_by_key(|&m| (m.count_ones(), m));
    let tol = T::tolerance(DEFAULT_TOL);

    let per_subgame: Vec<(u64, bool, Vec<SubgameViolation<T>>)> = subgames
        .par_iter()
        .map(|&s_mask| {
            let s = Coalition::from_mask(s_mask);
            let x = subgame_allocation(g, &s).expect("nonempty valid subgame");
            let members = s.members();
            let sums = subset_sums(&x.payoffs);
            let mut pairs = 0u64;
            let mut bad = Vec::new();
            // local submask over members of s
            for (local, &x_sum) in sums.iter().enumerate().skip(1) {
                let global = members
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| local >> k & 1 == 1)
                    .fold(0u64, |acc, (_, &p)| acc | 1 << p);
                pairs += 1;
                let deficit = v[global as usize] - x_sum;
                if deficit > tol {
                    bad.push(SubgameViolation {
                        subgame: s.clone(),
                        coalition: Coalition::from_mask(global),
                        deficit,
                    });
                }
            }
            let efficient = x.total().approx_eq(v[s_mask as usize], DEFAULT_TOL);
            (pairs, efficient, bad)
        })
        .collect();

    let mut report = BalanceReport {
        subgames_checked: subgames.len() as u64,
        pairs_checked: 0,
        inefficient: Vec::new(),
        violations: Vec::new(),
    };
    for ((pairs, efficient, bad), &s_mask) in per_subgame.into_iter().zip(&subgames) {
        report.pairs_checked += pairs;
        if !efficient {
            report.inefficient.push(Coalition::from_mask(s_mask));
        }
        report.violations.extend(bad);
    }
    Ok(report)
}
