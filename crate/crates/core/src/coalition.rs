use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::graph::PlayerId;

/// A set of players.
///
/// Members are kept sorted, so equality, ordering and serialization are
/// canonical (a sorted id array).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Coalition(BTreeSet<PlayerId>);

impl Coalition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(p: PlayerId) -> Self {
        Self(BTreeSet::from([p]))
    }

    /// The grand coalition `{0, .., n-1}`.
    pub fn grand(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Members are the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        Self(
            (0..64)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| b as PlayerId)
                .collect(),
        )
    }

    /// Bitmask of members; `None` if any member id is 64 or larger.
    pub fn to_mask(&self) -> Option<u64> {
        self.0.iter().try_fold(
            0u64,
            |acc, &p| {
                if p < 64 {
                    Some(acc | 1 << p)
                } else {
                    None
                }
            },
        )
    }

    pub fn contains(&self, p: PlayerId) -> bool {
        self.0.contains(&p)
    }

    pub fn insert(&mut self, p: PlayerId) -> bool {
        self.0.insert(p)
    }

    pub fn with(mut self, p: PlayerId) -> Self {
        self.0.insert(p);
        self
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Coalition) -> Coalition {
        Self(self.0.union(&other.0).copied().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = PlayerId> + '_ {
        self.0.iter().copied()
    }

    pub fn max_member(&self) -> Option<PlayerId> {
        self.0.last().copied()
    }

    pub fn members(&self) -> Vec<PlayerId> {
        self.iter().collect()
    }
}

impl FromIterator<PlayerId> for Coalition {
    fn from_iter<I: IntoIterator<Item = PlayerId>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[PlayerId; N]> for Coalition {
    fn from(ids: [PlayerId; N]) -> Self {
        ids.into_iter().collect()
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_round_trip() {
        let c = Coalition::from([0, 3, 5]);
        assert_eq!(c.to_mask(), Some(0b101001));
        assert_eq!(Coalition::from_mask(0b101001), c);
        assert_eq!(Coalition::singleton(70).to_mask(), None);
    }

    #[test]
    fn display_and_json() {
        let c = Coalition::from([2, 0]);
        assert_eq!(c.to_string(), "{0,2}");
        assert_eq!(serde_json::to_string(&c).unwrap(), "[0,2]");
        assert_eq!(Coalition::empty().to_string(), "{}");
    }

    #[test]
    fn subset_and_union() {
        let a = Coalition::from([1]);
        let b = Coalition::from([1, 2]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(a.union(&Coalition::from([3])), Coalition::from([1, 3]));
        assert_eq!(Coalition::grand(3), Coalition::from([0, 1, 2]));
    }
}
