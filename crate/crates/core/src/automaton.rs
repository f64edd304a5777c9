//! Alternating parity tree automata over binary trees, and the deterministic
//! sub-shape used by the classifier.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{index_of_ranks, IndexPair};

pub type Rank = u32;

/// Name of the all-rejecting sink added by trimming and constructions.
pub const BOT: &str = "_bot";
/// Name of the all-accepting sink added by constructions.
pub const TOP: &str = "_top";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Existential,
    Universal,
}

impl Mode {
    pub fn flip(self) -> Mode {
        match self {
            Mode::Existential => Mode::Universal,
            Mode::Universal => Mode::Existential,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    Left,
    Right,
    Epsilon,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Left, Direction::Right];

    /// Child slot for a tree move, `None` for epsilon.
    pub fn child(self) -> Option<usize> {
        match self {
            Direction::Left => Some(0),
            Direction::Right => Some(1),
            Direction::Epsilon => None,
        }
    }

    pub fn from_child(d: usize) -> Direction {
        if d == 0 {
            Direction::Left
        } else {
            Direction::Right
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Left => "0",
            Direction::Right => "1",
            Direction::Epsilon => "e",
        }
    }
}

/// Index after the even shift that brings the least rank to 0 or 1.
pub fn index_of(a: &TreeAutomaton) -> IndexPair {
    a.index()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Acceptance {
    /// Highest rank seen infinitely often is even.
    Parity,
    /// Highest rank seen at all is even.
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct State {
    pub name: String,
    pub mode: Mode,
    pub rank: Rank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub source: StateId,
    pub letter: usize,
    pub direction: Direction,
    pub target: StateId,
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_graphic() && c != '#')
}

/// An alternating parity (or weak parity) automaton on binary trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeAutomaton {
    alphabet: Vec<String>,
    states: Vec<State>,
    initial: StateId,
    transitions: Vec<Transition>,
    acceptance: Acceptance,
    // moves[q][letter] = (direction, target) in transition order
    moves: Vec<Vec<Vec<(Direction, StateId)>>>,
}

impl TreeAutomaton {
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<State>,
        initial: StateId,
        transitions: Vec<Transition>,
        acceptance: Acceptance,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::semantic("alphabet is empty"));
        }
        let mut seen = HashMap::new();
        for (i, s) in alphabet.iter().enumerate() {
            if !valid_name(s) {
                return Err(Error::semantic(format!("invalid letter `{s}`")));
            }
            if seen.insert(s.as_str(), i).is_some() {
                return Err(Error::semantic(format!("letter `{s}` declared twice")));
            }
        }
        let mut names = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if !valid_name(&s.name) {
                return Err(Error::semantic(format!("invalid state name `{}`", s.name)));
            }
            if names.insert(s.name.as_str(), i).is_some() {
                return Err(Error::semantic(format!("state `{}` declared twice", s.name)));
            }
        }
        if initial.0 >= states.len() {
            return Err(Error::semantic("initial state does not exist"));
        }
        // repeated transitions carry no meaning; keep the first of each
        let mut distinct = std::collections::HashSet::new();
        let transitions: Vec<Transition> = transitions.into_iter().filter(|t| distinct.insert(*t)).collect();
        let mut moves = vec![vec![Vec::new(); alphabet.len()]; states.len()];
        for t in &transitions {
            if t.source.0 >= states.len() || t.target.0 >= states.len() {
                return Err(Error::semantic("transition endpoint does not exist"));
            }
            if t.letter >= alphabet.len() {
                return Err(Error::semantic("transition letter is not in the alphabet"));
            }
            moves[t.source.0][t.letter].push((t.direction, t.target));
        }
        Ok(TreeAutomaton { alphabet, states, initial, transitions, acceptance, moves })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn letter_index(&self, letter: &str) -> Option<usize> {
        self.alphabet.iter().position(|l| l == letter)
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, q: StateId) -> &State {
        &self.states[q.0]
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.name == name).map(StateId)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn acceptance(&self) -> Acceptance {
        self.acceptance
    }

    pub fn moves(&self, q: StateId, letter: usize) -> &[(Direction, StateId)] {
        &self.moves[q.0][letter]
    }

    pub fn ranks(&self) -> impl Iterator<Item = Rank> + '_ {
        self.states.iter().map(|s| s.rank)
    }

    pub fn min_rank(&self) -> Rank {
        self.ranks().min().unwrap_or(0)
    }

    pub fn max_rank(&self) -> Rank {
        self.ranks().max().unwrap_or(0)
    }

    /// Index after scaling ranks down by the largest admissible even amount.
    pub fn index(&self) -> IndexPair {
        index_of_ranks(self.ranks()).expect("automata have an initial state")
    }

    /// Ranks never decrease along transitions.
    pub fn is_rank_monotone(&self) -> bool {
        self.transitions.iter().all(|t| self.states[t.source.0].rank <= self.states[t.target.0].rank)
    }

    /// All universal, no epsilon moves, strong parity, and exactly one
    /// target per (state, letter, direction).
    pub fn is_deterministic_shape(&self) -> bool {
        self.acceptance == Acceptance::Parity
            && self.states.iter().all(|s| s.mode == Mode::Universal)
            && self.moves.iter().all(|per_letter| {
                per_letter.iter().all(|mv| {
                    mv.len() == 2
                        && mv.iter().any(|(d, _)| *d == Direction::Left)
                        && mv.iter().any(|(d, _)| *d == Direction::Right)
                })
            })
    }

    /// Same automaton with a different acceptance condition.
    pub fn with_acceptance(&self, acceptance: Acceptance) -> TreeAutomaton {
        TreeAutomaton { acceptance, ..self.clone() }
    }

    /// Automaton with modes swapped and ranks raised by one; under either
    /// acceptance condition it recognizes the complement.
    pub fn dual(&self) -> TreeAutomaton {
        let states = self
            .states
            .iter()
            .map(|s| State { name: s.name.clone(), mode: s.mode.flip(), rank: s.rank + 1 })
            .collect();
        TreeAutomaton::new(
            self.alphabet.clone(),
            states,
            self.initial,
            self.transitions.clone(),
            self.acceptance,
        )
        .expect("dual of a valid automaton is valid")
    }
}

/// A deterministic parity tree automaton: every state universal, one left
/// and one right target per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetAutomaton {
    alphabet: Vec<String>,
    names: Vec<String>,
    ranks: Vec<Rank>,
    initial: StateId,
    // table[q * |alphabet| + letter] = [left, right]
    table: Vec<[StateId; 2]>,
}

impl DetAutomaton {
    /// `table[q][letter] = [left target, right target]`.
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<(String, Rank)>,
        initial: StateId,
        table: Vec<Vec<[StateId; 2]>>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::semantic("alphabet is empty"));
        }
        if table.len() != states.len() {
            return Err(Error::semantic("transition table does not cover every state"));
        }
        if initial.0 >= states.len() {
            return Err(Error::semantic("initial state does not exist"));
        }
        let n = states.len();
        let mut flat = Vec::with_capacity(n * alphabet.len());
        for (q, row) in table.into_iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::semantic(format!(
                    "state `{}` does not have one transition per letter",
                    states[q].0
                )));
            }
            for targets in row {
                if targets.iter().any(|t| t.0 >= n) {
                    return Err(Error::semantic("transition endpoint does not exist"));
                }
                flat.push(targets);
            }
        }
        let (names, ranks): (Vec<_>, Vec<_>) = states.into_iter().unzip();
        let det = DetAutomaton { alphabet, names, ranks, initial, table: flat };
        // Reuse name/letter validation.
        TreeAutomaton::try_from(&det)?;
        Ok(det)
    }

    /// Builds from names; convenient for hand-written fixtures.
    pub fn from_spec(
        alphabet: &[&str],
        states: &[(&str, Rank)],
        initial: &str,
        transitions: &[(&str, &str, &str, &str)],
    ) -> Result<Self> {
        let idx = |name: &str| {
            states
                .iter()
                .position(|(n, _)| *n == name)
                .map(StateId)
                .ok_or_else(|| Error::semantic(format!("unknown state `{name}`")))
        };
        let letter = |l: &str| {
            alphabet
                .iter()
                .position(|a| *a == l)
                .ok_or_else(|| Error::semantic(format!("unknown letter `{l}`")))
        };
        let mut table = vec![vec![None; alphabet.len()]; states.len()];
        for (src, l, left, right) in transitions {
            let slot = &mut table[idx(src)?.0][letter(l)?];
            if slot.is_some() {
                return Err(Error::semantic(format!("duplicate transition for `{src}` on `{l}`")));
            }
            *slot = Some([idx(left)?, idx(right)?]);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(q, row)| {
                row.into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::semantic(format!("state `{}` is missing a transition", states[q].0)))
            })
            .collect::<Result<Vec<_>>>()?;
        DetAutomaton::new(
            alphabet.iter().map(|s| s.to_string()).collect(),
            states.iter().map(|(n, r)| (n.to_string(), *r)).collect(),
            idx(initial)?,
            table,
        )
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.names.len()).map(StateId)
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q.0]
    }

    pub fn rank(&self, q: StateId) -> Rank {
        self.ranks[q.0]
    }

    pub fn ranks(&self) -> &[Rank] {
        &self.ranks
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name).map(StateId)
    }

    /// The designated all-rejecting sink, if present.
    pub fn sink(&self) -> Option<StateId> {
        self.state_by_name(BOT)
    }

    pub fn succ(&self, q: StateId, letter: usize) -> [StateId; 2] {
        self.table[q.0 * self.alphabet.len() + letter]
    }

    pub fn target(&self, q: StateId, letter: usize, d: usize) -> StateId {
        self.succ(q, letter)[d]
    }

    /// Every labelled edge `(source, letter, direction, target)`, in
    /// state/letter/direction order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.states().flat_map(move |q| {
            (0..self.num_letters()).flat_map(move |l| {
                let s = self.succ(q, l);
                [0, 1].into_iter().map(move |d| Edge { source: q, letter: l, dir: d, target: s[d] })
            })
        })
    }

    /// Distinct successors of `q` over all letters and directions.
    pub fn successors(&self, q: StateId) -> Vec<StateId> {
        let mut out: Vec<StateId> =
            (0..self.num_letters()).flat_map(|l| self.succ(q, l)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn index(&self) -> IndexPair {
        index_of_ranks(self.ranks.iter().copied()).expect("automata have an initial state")
    }

    /// Same transition structure, new ranks.
    pub fn with_ranks(&self, ranks: Vec<Rank>) -> DetAutomaton {
        assert_eq!(ranks.len(), self.ranks.len());
        DetAutomaton { ranks, ..self.clone() }
    }

    pub fn to_tree(&self) -> TreeAutomaton {
        TreeAutomaton::try_from(self).expect("deterministic automata are valid alternating automata")
    }

    /// Rank-monotone along every transition (weak deterministic shape).
    pub fn is_rank_monotone(&self) -> bool {
        self.edges().all(|e| self.rank(e.source) <= self.rank(e.target))
    }
}

/// One labelled edge of a deterministic automaton; `dir` is 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: StateId,
    pub letter: usize,
    pub dir: usize,
    pub target: StateId,
}

impl TryFrom<&DetAutomaton> for TreeAutomaton {
    type Error = Error;

    fn try_from(det: &DetAutomaton) -> Result<TreeAutomaton> {
        let states = det
            .names
            .iter()
            .zip(&det.ranks)
            .map(|(name, &rank)| State { name: name.clone(), mode: Mode::Universal, rank })
            .collect();
        let transitions = det
            .edges()
            .map(|e| Transition {
                source: e.source,
                letter: e.letter,
                direction: Direction::from_child(e.dir),
                target: e.target,
            })
            .collect();
        TreeAutomaton::new(det.alphabet.clone(), states, det.initial, transitions, Acceptance::Parity)
    }
}

impl TryFrom<&TreeAutomaton> for DetAutomaton {
    type Error = Error;

    fn try_from(a: &TreeAutomaton) -> Result<DetAutomaton> {
        if a.acceptance() != Acceptance::Parity {
            return Err(Error::semantic("deterministic automata use parity acceptance"));
        }
        let mut table = Vec::with_capacity(a.num_states());
        for (q, state) in a.states().iter().enumerate() {
            if state.mode != Mode::Universal {
                return Err(Error::semantic(format!("state `{}` is not universal", state.name)));
            }
            let mut row = Vec::with_capacity(a.alphabet().len());
            for (l, letter) in a.alphabet().iter().enumerate() {
                let mut slots = [None, None];
                for &(d, target) in a.moves(StateId(q), l) {
                    let Some(c) = d.child() else {
                        return Err(Error::semantic(format!(
                            "state `{}` has an epsilon transition",
                            state.name
                        )));
                    };
                    if slots[c].replace(target).is_some() {
                        return Err(Error::semantic(format!(
                            "state `{}` has two {} targets on `{letter}`",
                            state.name,
                            d.symbol()
                        )));
                    }
                }
                match slots {
                    [Some(l), Some(r)] => row.push([l, r]),
                    _ => {
                        return Err(Error::semantic(format!(
                            "transition table is not total at state `{}`, letter `{letter}`",
                            state.name
                        )))
                    }
                }
            }
            table.push(row);
        }
        DetAutomaton::new(
            a.alphabet().to_vec(),
            a.states().iter().map(|s| (s.name.clone(), s.rank)).collect(),
            a.initial(),
            table,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_a() -> DetAutomaton {
        DetAutomaton::from_spec(
            &["a", "b"],
            &[("p", 0), (BOT, 1)],
            "p",
            &[("p", "a", "p", "p"), ("p", "b", BOT, BOT), (BOT, "a", BOT, BOT), (BOT, "b", BOT, BOT)],
        )
        .unwrap()
    }

    #[test]
    fn round_trips_through_alternating_form() {
        let a = all_a();
        let t = a.to_tree();
        assert!(t.is_deterministic_shape());
        assert_eq!(DetAutomaton::try_from(&t).unwrap(), a);
        assert_eq!(a.sink(), Some(StateId(1)));
    }

    #[test]
    fn missing_transition_is_rejected() {
        let err = DetAutomaton::from_spec(&["a"], &[("p", 0)], "p", &[]).unwrap_err();
        assert!(err.to_string().contains("missing a transition"));
    }

    #[test]
    fn dual_flips_modes_and_ranks() {
        let d = all_a().to_tree().dual();
        assert!(d.states().iter().all(|s| s.mode == Mode::Existential));
        assert_eq!(d.ranks().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn edges_are_ordered() {
        let a = all_a();
        let e: Vec<_> = a.edges().collect();
        assert_eq!(e.len(), 8);
        assert!(e.windows(2).all(|w| w[0] < w[1]));
    }
}
