//! The characteristic function and exhaustive checks of its properties.
//!
//! For a coalition `S`, `v(S)` is the total weight of edges inside `S` plus,
//! for every member with an in-neighbour outside `S`, the smallest weight
//! among those outside in-edges.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coalition::Coalition;
use crate::error::{guard, Error, Result};
use crate::graph::{PlayerId, WeightedDigraph};
use crate::scalar::{Scalar, DEFAULT_TOL};

/// Default player-count guard for the exhaustive property checkers.
pub const CHECK_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueBreakdown<T> {
    pub internal: T,
    pub external: T,
    pub total: T,
    /// `w_i(S)` for every member `i` of `S`.
    pub per_player_external: BTreeMap<PlayerId, T>,
}

/// Smallest weight of an in-edge of `i` whose tail fails `inside`; zero when
/// there is none.
fn external_min<T: Scalar>(
    g: &WeightedDigraph<T>,
    i: PlayerId,
    inside: &impl Fn(PlayerId) -> bool,
) -> T {
    g.in_edges(i)
        .filter(|e| !inside(e.from))
        .map(|e| e.weight)
        .reduce(T::min_of)
        .unwrap_or_else(T::zero)
}

/// Internal and external parts of `v` for the coalition described by
/// `inside`, whose members are `members`.
fn value_parts<T: Scalar>(
    g: &WeightedDigraph<T>,
    members: impl Iterator<Item = PlayerId>,
    inside: impl Fn(PlayerId) -> bool,
) -> (T, T) {
    let mut internal = T::zero();
    let mut external = T::zero();
    for i in members {
        for e in g.in_edges(i) {
            if inside(e.from) {
                internal = internal + e.weight;
            }
        }
        external = external + external_min(g, i, &inside);
    }
    (internal, external)
}

fn membership<T: Scalar>(g: &WeightedDigraph<T>, s: &Coalition) -> Result<Vec<bool>> {
    let mut inside = vec![false; g.n()];
    for p in s.iter() {
        g.check_player(p)?;
        inside[p] = true;
    }
    Ok(inside)
}

pub fn coalition_value<T: Scalar>(
    g: &WeightedDigraph<T>,
    s: &Coalition,
) -> Result<ValueBreakdown<T>> {
    let inside = membership(g, s)?;
    let per_player_external: BTreeMap<_, _> = s
        .iter()
        .map(|i| (i, external_min(g, i, &|p| inside[p])))
        .collect();
    let (internal, external) = value_parts(g, s.iter(), |p| inside[p]);
    Ok(ValueBreakdown {
        internal,
        external,
        total: internal + external,
        per_player_external,
    })
}

/// `v(S)`.
pub fn value<T: Scalar>(g: &WeightedDigraph<T>, s: &Coalition) -> Result<T> {
    let inside = membership(g, s)?;
    let (internal, external) = value_parts(g, s.iter(), |p| inside[p]);
    Ok(internal + external)
}

/// `v` on the coalition whose members are the set bits of `mask`.
pub fn value_of_mask<T: Scalar>(g: &WeightedDigraph<T>, mask: u64) -> T {
    let members = (0..g.n()).filter(|&p| mask >> p & 1 == 1);
    let (internal, external) = value_parts(g, members, |p| mask >> p & 1 == 1);
    internal + external
}

/// `v(S)` for every `S`, indexed by bitmask. Size `2^n`.
pub fn value_table<T: Scalar>(g: &WeightedDigraph<T>, max_n: usize) -> Result<Vec<T>> {
    guard("value table", g.n(), max_n)?;
    Ok((0..1u64 << g.n())
        .into_par_iter()
        .map(|mask| value_of_mask(g, mask))
        .collect())
}

/// The external game `w_i(S)`.
pub fn external_player_value<T: Scalar>(g: &WeightedDigraph<T>, s: &Coalition, i: PlayerId) -> T {
    if !s.contains(i) || i >= g.n() {
        return T::zero();
    }
    external_min(g, i, &|p| s.contains(p))
}

/// A pair of coalitions for which a claimed inequality `lhs >= rhs` failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairViolation<T> {
    pub s: Coalition,
    pub t: Coalition,
    pub lhs: T,
    pub rhs: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport<T> {
    pub claim: String,
    pub n_checked: u64,
    pub violations: Vec<PairViolation<T>>,
}

impl<T> CheckReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Violation with the fewest players involved.
    pub fn minimal_witness(&self) -> Option<&PairViolation<T>> {
        self.violations.first()
    }
}

fn violated<T: Scalar>(lhs: T, rhs: T) -> bool {
    lhs < rhs && !lhs.approx_eq(rhs, DEFAULT_TOL)
}

/// Orders masks so the smallest witnesses come first.
fn canonical(pairs: &mut [(u64, u64)]) {
    pairs.sort_by_key(|&(s, t)| ((s | t).count_ones(), s.count_ones(), s, t));
}

fn report<T: Scalar>(
    claim: &str,
    n_checked: u64,
    mut pairs: Vec<(u64, u64)>,
    eval: impl Fn(u64, u64) -> (T, T),
) -> CheckReport<T> {
    canonical(&mut pairs);
    let violations = pairs
        .into_iter()
        .map(|(s, t)| {
            let (lhs, rhs) = eval(s, t);
            PairViolation {
                s: Coalition::from_mask(s),
                t: Coalition::from_mask(t),
                lhs,
                rhs,
            }
        })
        .collect();
    CheckReport {
        claim: claim.to_string(),
        n_checked,
        violations,
    }
}

pub const SUPERADDITIVE_CLAIM: &str = "superadditive: v(S u T) >= v(S) + v(T) for disjoint S, T";
pub const MONOTONE_CLAIM: &str = "monotone: v(S) <= v(T) for S subset of T";

/// Checks `v(S ∪ T) >= v(S) + v(T)` for every unordered pair of disjoint
/// nonempty coalitions.
pub fn check_superadditive<T: Scalar>(
    g: &WeightedDigraph<T>,
    max_n: usize,
) -> Result<CheckReport<T>> {
    guard("superadditivity check", g.n(), max_n)?;
    let v = value_table(g, max_n)?;
    let full = (1u64 << g.n()) - 1;
    let (n_checked, bad) = (0..=full)
        .into_par_iter()
        .map(|u| {
            let mut count = 0u64;
            let mut bad = Vec::new();
            // s ranges over nonempty proper submasks of u with s < u ^ s
            let mut s = (u.wrapping_sub(1)) & u;
            while s != 0 {
                let t = u ^ s;
                if s < t {
                    count += 1;
                    if violated(v[u as usize], v[s as usize] + v[t as usize]) {
                        bad.push((s, t));
                    }
                }
                s = (s - 1) & u;
            }
            (count, bad)
        })
        .reduce(
            || (0, Vec::new()),
            |mut a, b| {
                a.0 += b.0;
                a.1.extend(b.1);
                a
            },
        );
    Ok(report(SUPERADDITIVE_CLAIM, n_checked, bad, |s, t| {
        (v[(s | t) as usize], v[s as usize] + v[t as usize])
    }))
}

/// Checks `v(S) <= v(T)` for every pair `S ⊆ T`.
pub fn check_monotone<T: Scalar>(g: &WeightedDigraph<T>, max_n: usize) -> Result<CheckReport<T>> {
    guard("monotonicity check", g.n(), max_n)?;
    let v = value_table(g, max_n)?;
    let full = (1u64 << g.n()) - 1;
    let (n_checked, bad) = (0..=full)
        .into_par_iter()
        .map(|t| {
            let mut count = 0u64;
            let mut bad = Vec::new();
            let mut s = t;
            loop {
                count += 1;
                if violated(v[t as usize], v[s as usize]) {
                    bad.push((s, t));
                }
                if s == 0 {
                    break;
                }
                s = (s - 1) & t;
            }
            (count, bad)
        })
        .reduce(
            || (0, Vec::new()),
            |mut a, b| {
                a.0 += b.0;
                a.1.extend(b.1);
                a
            },
        );
    Ok(report(MONOTONE_CLAIM, n_checked, bad, |s, t| {
        (v[t as usize], v[s as usize])
    }))
}

fn random_coalition(n: usize, rng: &mut ChaCha8Rng) -> Coalition {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

/// Randomized superadditivity check for graphs beyond the exhaustive guard.
/// Deterministic for a given `seed`.
pub fn sample_superadditive<T: Scalar>(
    g: &WeightedDigraph<T>,
    samples: u64,
    seed: u64,
) -> Result<CheckReport<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..samples {
        // assign each player to S, T or neither
        let mut s = Coalition::empty();
        let mut t = Coalition::empty();
        for p in 0..g.n() {
            match rng.gen_range(0..3) {
                0 => {
                    s.insert(p);
                }
                1 => {
                    t.insert(p);
                }
                _ => {}
            }
        }
        let lhs = value(g, &s.union(&t))?;
        let rhs = value(g, &s)? + value(g, &t)?;
        if violated(lhs, rhs) {
            violations.push(PairViolation { s, t, lhs, rhs });
        }
    }
    sort_sampled(&mut violations);
    Ok(CheckReport {
        claim: SUPERADDITIVE_CLAIM.to_string(),
        n_checked: samples,
        violations,
    })
}

/// Randomized monotonicity check: random `T` and a random subset `S` of it.
pub fn sample_monotone<T: Scalar>(
    g: &WeightedDigraph<T>,
    samples: u64,
    seed: u64,
) -> Result<CheckReport<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..samples {
        let t = random_coalition(g.n(), &mut rng);
        let s: Coalition = t.iter().filter(|_| rng.gen_bool(0.5)).collect();
        let lhs = value(g, &t)?;
        let rhs = value(g, &s)?;
        if violated(lhs, rhs) {
            violations.push(PairViolation { s, t, lhs, rhs });
        }
    }
    sort_sampled(&mut violations);
    Ok(CheckReport {
        claim: MONOTONE_CLAIM.to_string(),
        n_checked: samples,
        violations,
    })
}

fn sort_sampled<T>(violations: &mut Vec<PairViolation<T>>) {
    violations.sort_by(|a, b| {
        (a.s.len() + a.t.len(), &a.s, &a.t).cmp(&(b.s.len() + b.t.len(), &b.s, &b.t))
    });
    violations.dedup_by(|a, b| a.s == b.s && a.t == b.t);
}

/// Refuses a coalition that mentions unknown players.
pub fn validate_coalition<T: Scalar>(g: &WeightedDigraph<T>, s: &Coalition) -> Result<()> {
    match s.max_member() {
        Some(p) if p >= g.n() => Err(Error::UnknownPlayer(p)),
        _ => Ok(()),
    }
}
