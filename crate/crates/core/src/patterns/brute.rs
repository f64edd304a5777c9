//! Definitional pattern search for small automata.
//!
//! The set of states visited by a closed walk is exactly a non-empty state
//! set that is strongly connected in its induced subgraph and carries an
//! edge. Enumerating all such sets gives every loop up to the states it
//! visits, which is all the pattern definitions depend on.

use std::collections::{BTreeMap, BTreeSet};

use crate::automaton::{DetAutomaton, Rank, StateId};
use crate::error::{Error, Result};
use crate::index::IndexPair;

pub const STATE_LIMIT: usize = 7;

/// A closed-walk state set, as a bitmask, with its top rank.
#[derive(Clone, Copy, Debug)]
struct LoopSet {
    mask: u32,
    top: Rank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternInventory {
    pub loop_ranks: Vec<BTreeSet<Rank>>,
    pub flower: BTreeMap<IndexPair, bool>,
    pub weak_flower: BTreeMap<IndexPair, bool>,
    pub replicated_flower: BTreeMap<IndexPair, bool>,
    pub replicated_weak_flower: BTreeMap<IndexPair, bool>,
    pub split: bool,
    /// Replicated by an accepting loop, sink included.
    pub replicated: Vec<bool>,
}

/// Decides every pattern predicate for the indices with `kappa ≤ max_kappa`.
/// `budget` bounds the number of state subsets examined.
pub fn brute_force_patterns(a: &DetAutomaton, max_kappa: u32, budget: usize) -> Result<PatternInventory> {
    let n = a.num_states();
    if n > STATE_LIMIT {
        return Err(Error::SizeGuard { size: n, limit: STATE_LIMIT });
    }
    if (1usize << n) > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let adj: Vec<u32> = a
        .states()
        .map(|q| a.successors(q).into_iter().fold(0, |m, t| m | 1 << t.0))
        .collect();
    let loops: Vec<LoopSet> = (1u32..1 << n)
        .filter(|&m| strongly_connected(&adj, m))
        .map(|m| LoopSet { mask: m, top: members(m).map(|q| a.rank(StateId(q))).max().unwrap() })
        .collect();
    let reach: Vec<u32> = (0..n).map(|q| reach_from(&adj, 1 << q)).collect();

    let loop_ranks = (0..n)
        .map(|q| loops.iter().filter(|l| l.mask & 1 << q != 0).map(|l| l.top).collect())
        .collect();

    // accepting loops through an edge p -(σ,d)-> t
    let mut replicated_mask = 0u32;
    let mut split = false;
    for p in a.states() {
        for l in 0..a.num_letters() {
            let [t0, t1] = a.succ(p, l);
            let through = |t: StateId| -> Vec<Rank> {
                let need = 1 << p.0 | 1 << t.0;
                loops
                    .iter()
                    .filter(|s| s.mask & need == need)
                    .map(|s| s.top)
                    .collect()
            };
            let (r0, r1) = (through(t0), through(t1));
            if r0.iter().any(|r| r % 2 == 0) {
                replicated_mask |= reach[t1.0];
            }
            if r1.iter().any(|r| r % 2 == 0) {
                replicated_mask |= reach[t0.0];
            }
            split |= r0.iter().any(|&x| r1.iter().any(|&y| x % 2 != y % 2 && x.max(y) % 2 == 1));
        }
    }

    let mut inv = PatternInventory {
        loop_ranks,
        flower: BTreeMap::new(),
        weak_flower: BTreeMap::new(),
        replicated_flower: BTreeMap::new(),
        replicated_weak_flower: BTreeMap::new(),
        split,
        replicated: (0..n).map(|q| replicated_mask & 1 << q != 0).collect(),
    };
    for kappa in 0..=max_kappa {
        for iota in 0..=kappa.min(1) {
            let i = IndexPair::new(iota, kappa).expect("iota ≤ kappa");
            inv.flower.insert(i, strong(&loops, n, i, 0));
            inv.replicated_flower.insert(i, strong(&loops, n, i, replicated_mask));
            inv.weak_flower.insert(i, weak(&loops, &reach, i, 0));
            inv.replicated_weak_flower.insert(i, weak(&loops, &reach, i, replicated_mask));
        }
    }
    Ok(inv)
}

fn members(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |q| m & 1 << q != 0)
}

fn reach_from(adj: &[u32], start: u32) -> u32 {
    let mut seen = start;
    loop {
        let next = members(seen).fold(seen, |m, q| m | adj[q]);
        if next == seen {
            return seen;
        }
        seen = next;
    }
}

fn reach_within(adj: &[u32], start: u32, within: u32) -> u32 {
    let mut seen = start & within;
    loop {
        let next = members(seen).fold(seen, |m, q| m | (adj[q] & within));
        if next == seen {
            return seen;
        }
        seen = next;
    }
}

fn strongly_connected(adj: &[u32], m: u32) -> bool {
    let first = m.trailing_zeros() as usize;
    let has_edge = members(m).any(|q| adj[q] & m != 0);
    let forward = {
        // states reachable by at least one step from `first`
        let one = adj[first] & m;
        reach_within(adj, one, m)
    };
    has_edge && forward & 1 << first != 0 && reach_within(adj, 1 << first, m) == m && {
        // every member reaches `first`
        members(m).all(|q| reach_within(adj, 1 << q, m) & 1 << first != 0)
    }
}

/// Loops through a common pivot with strictly increasing tops of matching
/// parities; with `mark != 0`, some loop meets `mark`.
fn strong(loops: &[LoopSet], n: usize, i: IndexPair, mark: u32) -> bool {
    let len = (i.width() + 1) as usize;
    (0..n).any(|p| {
        let at: Vec<&LoopSet> = loops.iter().filter(|l| l.mask & 1 << p != 0).collect();
        search_strong(&at, len, i.iota() % 2, None, mark == 0, mark)
    })
}

fn search_strong(at: &[&LoopSet], left: usize, parity: u32, prev: Option<Rank>, marked: bool, mark: u32) -> bool {
    if left == 0 {
        return marked;
    }
    at.iter().any(|l| {
        l.top % 2 == parity
            && prev.is_none_or(|p| l.top > p)
            && search_strong(at, left - 1, parity ^ 1, Some(l.top), marked || l.mask & mark != 0, mark)
    })
}

/// Chains of loops, each reachable from the previous, alternating
/// acceptance; with `mark != 0`, the first loop meets `mark`.
fn weak(loops: &[LoopSet], reach: &[u32], i: IndexPair, mark: u32) -> bool {
    let len = (i.width() + 1) as usize;
    let reach_set = |m: u32| members(m).fold(0, |acc, q| acc | reach[q]);
    let start = (i.iota() % 2) as Rank;
    // cur[j]: some admissible chain so far ends with loop j
    let mut cur: Vec<bool> =
        loops.iter().map(|l| l.top % 2 == start && (mark == 0 || l.mask & mark != 0)).collect();
    for step in 1..len {
        let parity = (start + step as Rank) % 2;
        cur = loops
            .iter()
            .map(|l| {
                l.top % 2 == parity
                    && loops.iter().zip(&cur).any(|(prev, &c)| c && reach_set(prev.mask) & l.mask != 0)
            })
            .collect();
    }
    cur.contains(&true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_inventories() {
        let a = catalog::all_a();
        let inv = brute_force_patterns(&a, 3, 1 << 10).unwrap();
        assert_eq!(inv.loop_ranks, vec![BTreeSet::from([0]), BTreeSet::from([1])]);
        assert!(inv.weak_flower[&IndexPair::even(1)]);
        assert!(!inv.weak_flower[&IndexPair::odd(2)]);
        assert!(!inv.flower[&IndexPair::even(1)]);
        assert!(!inv.split);
        assert_eq!(inv.replicated, vec![true, true]);

        let b = catalog::inf_b_left();
        let inv = brute_force_patterns(&b, 3, 1 << 10).unwrap();
        assert!(inv.flower[&IndexPair::odd(2)]);
        assert!(!inv.flower[&IndexPair::even(1)]);
        assert!(inv.weak_flower[&IndexPair::even(3)]);

        let c = catalog::split_min();
        assert!(brute_force_patterns(&c, 1, 1 << 10).unwrap().split);
    }

    #[test]
    fn guards() {
        let a = catalog::all_a();
        assert!(matches!(brute_force_patterns(&a, 1, 2), Err(Error::BudgetExceeded(2))));
    }
}
