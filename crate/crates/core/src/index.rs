//! Mostowski–Rabin indices: the pair (least rank, greatest rank) of an
//! automaton after shifting its ranks down by an even amount.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::Rank;
use crate::error::Error;

/// An index `(iota, kappa)` with `iota` in `{0, 1}` and `kappa >= iota`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(u32, u32)", into = "(u32, u32)")]
pub struct IndexPair {
    iota: u32,
    kappa: u32,
}

/// Outcome of comparing two indices by the number of ranks they use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexOrder {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl IndexPair {
    pub fn new(iota: u32, kappa: u32) -> Result<Self, Error> {
        if iota > 1 || kappa < iota {
            return Err(Error::InvalidIndex { iota, kappa });
        }
        Ok(IndexPair { iota, kappa })
    }

    /// `(0, kappa)`.
    pub fn even(kappa: u32) -> Self {
        IndexPair { iota: 0, kappa }
    }

    /// `(1, kappa)`; panics on `kappa == 0`.
    pub fn odd(kappa: u32) -> Self {
        assert!(kappa >= 1, "(1,0) is not an index");
        IndexPair { iota: 1, kappa }
    }

    pub fn iota(self) -> u32 {
        self.iota
    }

    pub fn kappa(self) -> u32 {
        self.kappa
    }

    /// Number of ranks in the band minus one.
    pub fn width(self) -> u32 {
        self.kappa - self.iota
    }

    /// `(0,k)` and `(1,k+1)` swap.
    pub fn dual(self) -> Self {
        if self.iota == 0 {
            IndexPair { iota: 1, kappa: self.kappa + 1 }
        } else {
            IndexPair { iota: 0, kappa: self.kappa - 1 }
        }
    }

    pub fn compare(self, other: IndexPair) -> IndexOrder {
        use std::cmp::Ordering::*;
        match self.width().cmp(&other.width()) {
            Less => IndexOrder::Less,
            Greater => IndexOrder::Greater,
            Equal if self.iota == other.iota => IndexOrder::Equal,
            Equal => IndexOrder::Incomparable,
        }
    }

    /// True when every language of index `self` also has index `other`.
    pub fn is_below(self, other: IndexPair) -> bool {
        matches!(self.compare(other), IndexOrder::Less | IndexOrder::Equal)
    }

    pub fn contains(self, rank: Rank) -> bool {
        (self.iota..=self.kappa).contains(&rank)
    }

    /// The two incomparable indices at a given width, even one first.
    pub fn level(width: u32) -> [IndexPair; 2] {
        [IndexPair::even(width), IndexPair::odd(width + 1)]
    }
}

/// Free-function form of [`IndexPair::dual`].
pub fn dual_index(i: IndexPair) -> IndexPair {
    i.dual()
}

/// Free-function form of [`IndexPair::compare`].
pub fn index_leq(i: IndexPair, j: IndexPair) -> IndexOrder {
    i.compare(j)
}

/// The largest even shift that brings `min` down to 0 or 1.
pub fn even_shift(min: Rank) -> Rank {
    min & !1
}

/// Index of a non-empty rank multiset.
pub fn index_of_ranks(ranks: impl IntoIterator<Item = Rank>) -> Option<IndexPair> {
    let mut it = ranks.into_iter();
    let first = it.next()?;
    let (min, max) = it.fold((first, first), |(lo, hi), r| (lo.min(r), hi.max(r)));
    let shift = even_shift(min);
    Some(IndexPair { iota: min - shift, kappa: max - shift })
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.iota, self.kappa)
    }
}

impl FromStr for IndexPair {
    type Err = Error;

    /// Accepts `0,2`, `(0,2)` and `0 2`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::semantic(format!("cannot parse index `{s}`"));
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = trimmed.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty());
        let iota = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let kappa = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if parts.next().is_some() {
            return Err(bad());
        }
        IndexPair::new(iota, kappa)
    }
}

impl TryFrom<(u32, u32)> for IndexPair {
    type Error = Error;
    fn try_from((iota, kappa): (u32, u32)) -> Result<Self, Error> {
        IndexPair::new(iota, kappa)
    }
}

impl From<IndexPair> for (u32, u32) {
    fn from(i: IndexPair) -> Self {
        (i.iota, i.kappa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(i: u32, k: u32) -> IndexPair {
        IndexPair::new(i, k).unwrap()
    }

    #[test]
    fn one_zero_is_not_an_index() {
        assert!(IndexPair::new(1, 0).is_err());
        assert!(IndexPair::new(2, 3).is_err());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(ip(0, 2).dual(), ip(1, 3));
        assert_eq!(ip(1, 3).dual(), ip(0, 2));
        assert_eq!(ip(0, 0).dual(), ip(1, 1));
    }

    #[test]
    fn ordering_examples() {
        assert_eq!(index_leq(ip(0, 1), ip(1, 2)), IndexOrder::Incomparable);
        assert_eq!(index_leq(ip(0, 0), ip(0, 1)), IndexOrder::Less);
        assert_eq!(index_leq(ip(1, 2), ip(1, 2)), IndexOrder::Equal);
        assert_eq!(index_leq(ip(1, 3), ip(0, 1)), IndexOrder::Greater);
    }

    #[test]
    fn scaling_examples() {
        assert_eq!(index_of_ranks([1, 2]), Some(ip(1, 2)));
        assert_eq!(index_of_ranks([2, 3]), Some(ip(0, 1)));
        assert_eq!(index_of_ranks([0, 1, 2]), Some(ip(0, 2)));
        assert_eq!(index_of_ranks([5]), Some(ip(1, 1)));
        assert_eq!(index_of_ranks(std::iter::empty()), None);
    }

    #[test]
    fn parses_index_spellings() {
        assert_eq!("0,2".parse::<IndexPair>().unwrap(), ip(0, 2));
        assert_eq!("(1,3)".parse::<IndexPair>().unwrap(), ip(1, 3));
        assert!("1,0".parse::<IndexPair>().is_err());
        assert!("x".parse::<IndexPair>().is_err());
    }

    fn any_index() -> impl Strategy<Value = IndexPair> {
        (0u32..2, 0u32..20).prop_filter_map("constructible", |(i, k)| IndexPair::new(i, k).ok())
    }

    proptest! {
        #[test]
        fn dual_is_an_involution(i in any_index()) {
            prop_assert_eq!(i.dual().dual(), i);
        }

        #[test]
        fn duals_are_incomparable(i in any_index()) {
            prop_assert_eq!(index_leq(i, i.dual()), IndexOrder::Incomparable);
        }

        #[test]
        fn even_shift_keeps_index(ranks in prop::collection::vec(0u32..12, 1..8)) {
            let shifted: Vec<_> = ranks.iter().map(|r| r + 2).collect();
            prop_assert_eq!(index_of_ranks(ranks), index_of_ranks(shifted));
        }
    }
}
