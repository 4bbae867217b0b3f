//! Unanimity (Möbius) decomposition of the trust game.
//!
//! Each edge `(i, j)` contributes `a_ij` on the pair `{i, j}`. Each player
//! `i` with `m >= 1` in-neighbours contributes a chain over the nested
//! supports `T(1) ⊂ .. ⊂ T(m+1)`: coefficient `b(t) - b(t-1)` on `T(t)` and
//! `-b(m)` on `T(m+1)`.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::coalition::Coalition;
use crate::error::{guard, Result};
use crate::game::value_table;
use crate::graph::{PlayerId, WeightedDigraph};
use crate::profile::{all_profiles, in_neighbor_profile, InNeighborProfile};
use crate::scalar::Scalar;

/// Default guard for [`mobius_oracle`].
pub const ORACLE_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnanimityTerm<T> {
    pub support: Coalition,
    #[serde(rename = "coeff")]
    pub coefficient: T,
}

impl<T: Scalar> UnanimityTerm<T> {
    /// `coefficient * u_support(S)`.
    pub fn eval(&self, s: &Coalition) -> T {
        if self.support.is_subset(s) {
            self.coefficient
        } else {
            T::zero()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameDecomposition<T> {
    /// Pair terms in edge order, then each player's chain in id order.
    pub terms: Vec<UnanimityTerm<T>>,
    /// Dividends summed by support.
    pub aggregated: BTreeMap<Coalition, T>,
}

impl<T: Scalar> GameDecomposition<T> {
    fn from_terms(terms: Vec<UnanimityTerm<T>>) -> Self {
        let mut aggregated = BTreeMap::new();
        for term in &terms {
            let d = aggregated
                .entry(term.support.clone())
                .or_insert_with(T::zero);
            *d = *d + term.coefficient;
        }
        Self { terms, aggregated }
    }

    /// Dividend of `support`, zero if it carries no term.
    pub fn dividend(&self, support: &Coalition) -> T {
        self.aggregated
            .get(support)
            .copied()
            .unwrap_or_else(T::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Keys of the dividend map render as comma-joined ids, e.g. `"0,2"`.
pub fn support_key(support: &Coalition, label: impl Fn(PlayerId) -> String) -> String {
    support.iter().map(label).collect::<Vec<_>>().join(",")
}

impl<T: Scalar + Serialize> Serialize for GameDecomposition<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Dividends<'a, T>(&'a BTreeMap<Coalition, T>);
        impl<T: Serialize> Serialize for Dividends<'_, T> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (support, d) in self.0 {
                    map.serialize_entry(&support_key(support, |p| p.to_string()), d)?;
                }
                map.end()
            }
        }
        let mut st = serializer.serialize_struct("GameDecomposition", 2)?;
        st.serialize_field("terms", &self.terms)?;
        st.serialize_field("dividends", &Dividends(&self.aggregated))?;
        st.end()
    }
}

fn chain_terms<T: Scalar>(profile: &InNeighborProfile<T>) -> Vec<UnanimityTerm<T>> {
    let m = profile.m();
    if m == 0 {
        return Vec::new();
    }
    profile
        .chain_supports()
        .into_iter()
        .enumerate()
        .map(|(k, support)| {
            let t = k + 1;
            let coefficient = if t <= m {
                profile.b(t) - profile.b(t - 1)
            } else {
                -profile.top()
            };
            UnanimityTerm {
                support,
                coefficient,
            }
        })
        .collect()
}

/// The unanimity expansion of the external game `w_i`.
pub fn external_chain_terms<T: Scalar>(
    g: &WeightedDigraph<T>,
    i: PlayerId,
) -> Result<Vec<UnanimityTerm<T>>> {
    Ok(chain_terms(&in_neighbor_profile(g, i)?))
}

pub fn full_decomposition<T: Scalar>(g: &WeightedDigraph<T>) -> GameDecomposition<T> {
    let mut terms: Vec<_> = g
        .edges()
        .iter()
        .map(|e| UnanimityTerm {
            support: Coalition::from([e.from, e.to]),
            coefficient: e.weight,
        })
        .collect();
    for profile in all_profiles(g) {
        terms.extend(chain_terms(&profile));
    }
    GameDecomposition::from_terms(terms)
}

/// `sum of coefficient * u_support(S)` over all terms.
pub fn evaluate_decomposition<T: Scalar>(d: &GameDecomposition<T>, s: &Coalition) -> T {
    d.terms
        .iter()
        .fold(T::zero(), |acc, term| acc + term.eval(s))
}

/// A value for every subset of `{0, .., n-1}`, indexed by bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetTable<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Scalar> SubsetTable<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: &Coalition) -> Option<T> {
        let mask = s.to_mask()?;
        self.values.get(mask as usize).copied()
    }

    pub fn get_mask(&self, mask: u64) -> T {
        self.values[mask as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Coalition, T)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(mask, &v)| (Coalition::from_mask(mask as u64), v))
    }
}

/// Dividends `d(T) = sum_{S ⊆ T} (-1)^{|T|-|S|} v(S)` for every `T`, by
/// exhaustive inversion of the value table.
pub fn mobius_oracle<T: Scalar>(g: &WeightedDigraph<T>, max_n: usize) -> Result<SubsetTable<T>> {
    guard("mobius oracle", g.n(), max_n)?;
    let mut values = value_table(g, max_n)?;
    // subset-sum inversion, one coordinate at a time
    for bit in 0..g.n() {
        let b = 1usize << bit;
        for mask in 0..values.len() {
            if mask & b != 0 {
                values[mask] = values[mask] - values[mask ^ b];
            }
        }
    }
    Ok(SubsetTable { n: g.n(), values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{edgeless, g2, g3, gf};
    use crate::game::{value, value_of_mask};

    fn close(a: f64, b: f64) -> bool {
        a.approx_eq(b, 1e-12)
    }

    fn terms_of(g: &WeightedDigraph<f64>, i: PlayerId) -> Vec<(Coalition, f64)> {
        external_chain_terms(g, i)
            .unwrap()
            .into_iter()
            .map(|t| (t.support, t.coefficient))
            .collect()
    }

    #[test]
    fn g3_chain() {
        let terms = terms_of(&g3(), 0);
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0].0, Coalition::from([0]));
        assert!(close(terms[0].1, 0.2));
        assert_eq!(terms[1].0, Coalition::from([0, 1]));
        assert!(close(terms[1].1, 0.3));
        assert_eq!(terms[2].0, Coalition::from([0, 1, 2]));
        assert!(close(terms[2].1, -0.5));
        assert!(terms_of(&g3(), 1).is_empty());
    }

    #[test]
    fn g2_chain() {
        assert_eq!(
            terms_of(&g2(), 1),
            vec![(Coalition::from([1]), 0.6), (Coalition::from([0, 1]), -0.6)]
        );
    }

    #[test]
    fn g3_dividends() {
        let d = full_decomposition(&g3());
        assert!(close(d.dividend(&Coalition::from([0])), 0.2));
        assert!(close(d.dividend(&Coalition::from([0, 1])), 0.5));
        assert!(close(d.dividend(&Coalition::from([0, 2])), 0.5));
        assert!(close(d.dividend(&Coalition::from([0, 1, 2])), -0.5));
        assert_eq!(d.dividend(&Coalition::from([1])), 0.0);
        assert_eq!(d.aggregated.len(), 4);
    }

    #[test]
    fn g2_dividends_and_edgeless() {
        let d = full_decomposition(&g2());
        assert!(close(d.dividend(&Coalition::from([1])), 0.6));
        assert!(close(d.dividend(&Coalition::from([0, 1])), 0.0));
        assert!(full_decomposition(&edgeless(3)).is_empty());
    }

    #[test]
    fn evaluation_matches_value() {
        let g = g3();
        let d = full_decomposition(&g);
        assert!(close(
            evaluate_decomposition(&d, &Coalition::from([0, 1])),
            0.7
        ));
        assert!(close(
            evaluate_decomposition(&d, &Coalition::from([1])),
            0.0
        ));
        assert!(close(evaluate_decomposition(&d, &Coalition::grand(3)), 0.7));
        for g in [g2(), g3(), gf(0.1), gf(0.9)] {
            let d = full_decomposition(&g);
            for mask in 0..1u64 << g.n() {
                let s = Coalition::from_mask(mask);
                assert!(close(
                    evaluate_decomposition(&d, &s),
                    value(&g, &s).unwrap()
                ));
            }
        }
    }

    /// Literal double sum over subsets, independent of the in-place transform.
    fn naive_dividend(g: &WeightedDigraph<f64>, t: u64) -> f64 {
        let mut d = 0.0;
        let mut s = t;
        loop {
            let sign = if (t ^ s).count_ones().is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            d += sign * value_of_mask(g, s);
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
        d
    }

    #[test]
    fn oracle_matches_naive_inversion_and_closed_chains() {
        for g in [g2(), g3(), gf(0.5), edgeless(2)] {
            let oracle = mobius_oracle(&g, ORACLE_MAX_N).unwrap();
            let d = full_decomposition(&g);
            for (s, div) in oracle.iter() {
                let mask = s.to_mask().unwrap();
                assert!(close(div, naive_dividend(&g, mask)));
                assert!(
                    close(div, d.dividend(&s)),
                    "{s}: {div} vs {}",
                    d.dividend(&s)
                );
            }
        }
        let o = mobius_oracle(&g2(), ORACLE_MAX_N).unwrap();
        assert!(close(o.get(&Coalition::from([1])).unwrap(), 0.6));
        assert!(close(o.get(&Coalition::from([0, 1])).unwrap(), 0.0));
        assert_eq!(o.get(&Coalition::from([0])), Some(0.0));
    }

    #[test]
    fn oracle_guard() {
        assert!(mobius_oracle(&edgeless(17), ORACLE_MAX_N).is_err());
    }

    #[test]
    fn decomposition_json_shape() {
        let json = serde_json::to_value(full_decomposition(&g2())).unwrap();
        assert_eq!(json["terms"][0]["support"], serde_json::json!([0, 1]));
        assert_eq!(json["terms"][0]["coeff"], 0.6);
        assert_eq!(json["dividends"]["1"], 0.6);
        assert!(json["dividends"].get("0,1").is_some());
    }
}
