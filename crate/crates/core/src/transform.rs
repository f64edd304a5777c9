//! Constructions of weak alternating automata: the restricted form of a
//! weak automaton, and weakenings of deterministic automata to indices
//! (0,2), (1,3) and (1,4).

use std::collections::HashMap;
use std::fmt;

use crate::automaton::{Acceptance, DetAutomaton, Direction, Mode, Rank, State, StateId, Transition, TreeAutomaton, BOT, TOP};
use crate::classify::{classify, det_relabel, BorelClass};
use crate::error::{Error, Result};
use crate::graph::Sccs;
use crate::index::{even_shift, IndexPair};
use crate::patterns::{PatternAnalysis, Witness};

/// Sizes of what a construction produced, with the bound it promises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub construction: String,
    pub input_states: usize,
    pub output_states: usize,
    pub bound: Option<usize>,
    pub components: Vec<(String, usize)>,
    /// `(|X|, states)` per component automaton of a conjunction.
    pub parts: Vec<(usize, usize)>,
}

impl ConstructionTrace {
    fn new(construction: &str, input_states: usize, output_states: usize, bound: Option<usize>) -> Self {
        ConstructionTrace {
            construction: construction.to_string(),
            input_states,
            output_states,
            bound,
            components: Vec::new(),
            parts: Vec::new(),
        }
    }

    pub fn comments(&self) -> Vec<String> {
        let mut out = vec![
            format!("construction: {}", self.construction),
            format!("input states: {}", self.input_states),
            format!("output states: {}", self.output_states),
        ];
        if let Some(b) = self.bound {
            out.push(format!("state bound: {b}"));
        }
        out.extend(self.components.iter().map(|(name, size)| format!("component {name}: {size} states")));
        out
    }
}

impl fmt::Display for ConstructionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.comments().join("\n"))
    }
}

struct Builder {
    alphabet: Vec<String>,
    states: Vec<State>,
    transitions: Vec<Transition>,
    names: HashMap<String, StateId>,
}

impl Builder {
    fn new(alphabet: &[String]) -> Builder {
        Builder { alphabet: alphabet.to_vec(), states: Vec::new(), transitions: Vec::new(), names: HashMap::new() }
    }

    fn add(&mut self, name: String, mode: Mode, rank: Rank) -> StateId {
        assert!(!self.names.contains_key(&name), "duplicate state {name}");
        let id = StateId(self.states.len());
        self.names.insert(name.clone(), id);
        self.states.push(State { name, mode, rank });
        id
    }

    fn tr(&mut self, source: StateId, letter: usize, direction: Direction, target: StateId) {
        self.transitions.push(Transition { source, letter, direction, target });
    }

    /// Epsilon move on every letter.
    fn eps(&mut self, source: StateId, target: StateId) {
        for l in 0..self.alphabet.len() {
            self.tr(source, l, Direction::Epsilon, target);
        }
    }

    fn sink(&mut self, name: &str, rank: Rank) -> StateId {
        let s = self.add(name.to_string(), Mode::Universal, rank);
        self.eps(s, s);
        s
    }

    fn len(&self) -> usize {
        self.states.len()
    }

    fn finish(self, initial: StateId, acceptance: Acceptance) -> TreeAutomaton {
        TreeAutomaton::new(self.alphabet, self.states, initial, self.transitions, acceptance)
            .expect("constructions produce valid automata")
    }
}

/// One copy of `a` per rank; the copy number is the highest rank seen so
/// far, so ranks never decrease along transitions.
pub fn restrict(a: &TreeAutomaton) -> Result<TreeAutomaton> {
    if a.acceptance() != Acceptance::Weak {
        return Err(Error::semantic("restrict expects a weak automaton"));
    }
    let (lo, hi) = (a.min_rank(), a.max_rank());
    let mut b = Builder::new(a.alphabet());
    let n = a.num_states();
    let id = |q: StateId, i: Rank| StateId((i - lo) as usize * n + q.0);
    for i in lo..=hi {
        for s in a.states() {
            b.add(format!("{}^{i}", s.name), s.mode, i);
        }
    }
    for i in lo..=hi {
        for t in a.transitions() {
            let j = i.max(a.state(t.target).rank);
            b.tr(id(t.source, i), t.letter, t.direction, id(t.target, j));
        }
    }
    let q0 = a.initial();
    Ok(b.finish(id(q0, a.state(q0).rank), Acceptance::Parity))
}

/// Maps ranks into `{1, 2}` by an even shift, if possible.
fn ranks_12(a: &DetAutomaton) -> Result<Vec<Rank>> {
    let (lo, hi) = (a.ranks().iter().min().copied().unwrap(), a.ranks().iter().max().copied().unwrap());
    let err = Error::IndexTooHigh { expected: IndexPair::odd(2) };
    if lo == hi {
        return Ok(vec![if lo % 2 == 0 { 2 } else { 1 }; a.num_states()]);
    }
    if lo % 2 == 0 || hi > lo + 1 {
        return Err(err);
    }
    let s = even_shift(lo);
    Ok(a.ranks().iter().map(|r| r - s).collect())
}

/// Maps ranks into `{0, 1}` by an even shift, if possible.
fn ranks_01(a: &DetAutomaton) -> Result<Vec<Rank>> {
    let (lo, hi) = (a.ranks().iter().min().copied().unwrap(), a.ranks().iter().max().copied().unwrap());
    if lo == hi {
        return Ok(vec![lo % 2; a.num_states()]);
    }
    if lo % 2 == 1 || hi > lo + 1 {
        return Err(Error::IndexTooHigh { expected: IndexPair::even(1) });
    }
    Ok(a.ranks().iter().map(|r| r - lo).collect())
}

fn det_moves(b: &mut Builder, a: &DetAutomaton, from: StateId, q: StateId, to: impl Fn(StateId) -> StateId) {
    for l in 0..a.num_letters() {
        let [x, y] = a.succ(q, l);
        b.tr(from, l, Direction::Left, to(x));
        b.tr(from, l, Direction::Right, to(y));
    }
}

/// Weak (0,2)-automaton with `2n + 1` states for a deterministic
/// automaton whose ranks fit `{1, 2}`: a universal rank-0 simulation that
/// may at any node start a rank-1 check that every path reaches rank 2.
pub fn weaken_02(a: &DetAutomaton) -> Result<TreeAutomaton> {
    let ranks = ranks_12(a)?;
    let n = a.num_states();
    let mut b = Builder::new(a.alphabet());
    for q in a.states() {
        b.add(format!("{}^1", a.name(q)), Mode::Universal, 0);
    }
    for q in a.states() {
        b.add(format!("{}^2", a.name(q)), Mode::Universal, 1);
    }
    let top = b.sink(TOP, 2);
    for q in a.states() {
        det_moves(&mut b, a, q, q, |t| t);
        b.eps(q, StateId(n + q.0));
        let q2 = StateId(n + q.0);
        if ranks[q.0] == 1 {
            det_moves(&mut b, a, q2, q, |t| StateId(n + t.0));
        } else {
            b.eps(q2, top);
        }
    }
    Ok(b.finish(a.initial(), Acceptance::Weak))
}

/// Ranks after dropping every non-sink state that is not the top of one of
/// its loops to 0.
fn relevant_ranks(a: &DetAutomaton, ranks: &[Rank]) -> Vec<Rank> {
    let relabelled = a.with_ranks(ranks.to_vec());
    let an = PatternAnalysis::new(&relabelled);
    let sink = a.sink();
    a.states()
        .map(|q| {
            let r = ranks[q.0];
            if Some(q) == sink || an.loop_ranks()[q.0].contains(&r) {
                r
            } else {
                0
            }
        })
        .collect()
}

/// Weak (1,3)-automaton with `3n + 1` states for a deterministic (0,1)
/// automaton without a replicated weak (1,2)-flower: Eve decides, on every
/// path, when odd states have stopped occurring.
pub fn weaken_13(a: &DetAutomaton) -> Result<TreeAutomaton> {
    let ranks = ranks_01(a)?;
    let normal = a.with_ranks(ranks.clone());
    if let Some(w) = PatternAnalysis::new(&normal).find_replicated_flower(IndexPair::odd(2), true) {
        return Err(Error::PreconditionViolated {
            reason: "weak (1,2)-flower replicated by an accepting loop".into(),
            witness: Some(Box::new(w)),
        });
    }
    let ranks = relevant_ranks(a, &ranks);
    let n = a.num_states();
    let mut b = Builder::new(a.alphabet());
    for (copy, mode, rank) in [(1, Mode::Universal, 1), (2, Mode::Existential, 1), (3, Mode::Universal, 2)] {
        for q in a.states() {
            b.add(format!("{}^{copy}", a.name(q)), mode, rank);
        }
    }
    let bot = b.sink(BOT, 3);
    let copy = |k: usize, q: StateId| StateId(k * n + q.0);
    for q in a.states() {
        det_moves(&mut b, a, copy(0, q), q, |t| copy(1, t));
        b.eps(copy(1, q), copy(0, q));
        b.eps(copy(1, q), copy(2, q));
        if ranks[q.0] == 0 {
            det_moves(&mut b, a, copy(2, q), q, |t| copy(2, t));
        } else {
            b.eps(copy(2, q), bot);
        }
    }
    Ok(b.finish(copy(1, a.initial()), Acceptance::Weak))
}

/// Fresh universal initial state with an epsilon move to each component.
pub fn conjunction(parts: &[TreeAutomaton]) -> Result<TreeAutomaton> {
    conjunction_over(parts.first().map(|p| p.alphabet().to_vec()).unwrap_or_else(|| vec!["a".into()]), parts)
}

/// Like [`conjunction`], with the alphabet given for the empty case.
pub fn conjunction_over(alphabet: Vec<String>, parts: &[TreeAutomaton]) -> Result<TreeAutomaton> {
    for p in parts {
        if p.alphabet() != alphabet.as_slice() {
            return Err(Error::AlphabetMismatch { left: alphabet.clone(), right: p.alphabet().to_vec() });
        }
    }
    let acceptance = parts.first().map(|p| p.acceptance()).unwrap_or(Acceptance::Weak);
    if parts.iter().any(|p| p.acceptance() != acceptance) {
        return Err(Error::semantic("conjuncts use different acceptance conditions"));
    }
    let mut b = Builder::new(&alphabet);
    let rank = parts.iter().map(|p| p.min_rank()).min().unwrap_or(0);
    let init = b.add("and".into(), Mode::Universal, rank);
    for (i, p) in parts.iter().enumerate() {
        let offset = b.len();
        for s in p.states() {
            b.add(format!("X{i}.{}", s.name), s.mode, s.rank);
        }
        for t in p.transitions() {
            b.tr(StateId(offset + t.source.0), t.letter, t.direction, StateId(offset + t.target.0));
        }
        b.eps(init, StateId(offset + p.initial().0));
    }
    Ok(b.finish(init, acceptance))
}

/// Weak (1,4)-automaton for a deterministic automaton without a replicated
/// (0,1)-flower: the conjunction, over components `X` with a loop, of
/// automata checking that run paths staying in `X` are accepting.
pub fn weaken_14(a: &DetAutomaton) -> Result<(TreeAutomaton, ConstructionTrace)> {
    let an = PatternAnalysis::new(a);
    if let Some(w) = an.find_replicated_flower(IndexPair::even(1), false) {
        return Err(Error::PreconditionViolated {
            reason: "(0,1)-flower replicated by an accepting loop".into(),
            witness: Some(Box::new(w)),
        });
    }
    let n = a.num_states();
    let succ = |q: usize| a.successors(StateId(q)).into_iter().map(|s| s.0);
    let sccs = Sccs::new(n, succ, |_| true);
    let relabel = det_relabel(a, 1);
    let mut parts = Vec::new();
    let mut trace = ConstructionTrace::new("weaken_14", n, 0, None);
    let mut bound = 1;
    for (c, members) in sccs.members.iter().enumerate() {
        if !sccs.cyclic[c] {
            continue;
        }
        let in_x: Vec<bool> = (0..n).map(|q| sccs.comp[q] == Some(c)).collect();
        let part = if an.replicated_mask()[members[0]] {
            if members.iter().any(|&q| relabel[q] > 2) {
                return Err(Error::PreconditionViolated {
                    reason: "replicated component needs more than ranks 1 and 2".into(),
                    witness: None,
                });
            }
            component_replicated(a, &in_x, &relabel)
        } else {
            component_guess(a, &in_x)
        };
        let name = format!("X{} ({} states, {})", trace.components.len(), members.len(), if an.replicated_mask()[members[0]] { "replicated" } else { "not replicated" });
        trace.components.push((name, part.num_states()));
        trace.parts.push((members.len(), part.num_states()));
        bound += 2 * members.len() * members.len() + 7 * n;
        parts.push(part);
    }
    let out = conjunction_over(a.alphabet().to_vec(), &parts)?;
    trace.output_states = out.num_states();
    trace.bound = Some(bound);
    Ok((out, trace))
}

/// `X` relabelled into ranks 3 and 4 and doubled as in [`weaken_02`];
/// states reachable from `X` rank 4, all others rank 2.
fn component_replicated(a: &DetAutomaton, in_x: &[bool], relabel: &[Rank]) -> TreeAutomaton {
    let n = a.num_states();
    let succ = |q: usize| a.successors(StateId(q)).into_iter().map(|s| s.0);
    let from_x = crate::graph::reachable(n, (0..n).filter(|&q| in_x[q]), succ, |_| true);
    let mut b = Builder::new(a.alphabet());
    for q in a.states() {
        let rank = if in_x[q.0] {
            2
        } else if from_x[q.0] {
            4
        } else {
            2
        };
        b.add(format!("{}^1", a.name(q)), Mode::Universal, rank);
    }
    let xs: Vec<StateId> = a.states().filter(|q| in_x[q.0]).collect();
    let mut second = HashMap::new();
    for &q in &xs {
        second.insert(q, b.add(format!("{}^2", a.name(q)), Mode::Universal, 3));
    }
    let top = b.sink(TOP, 4);
    for q in a.states() {
        det_moves(&mut b, a, q, q, |t| t);
    }
    for &q in &xs {
        let q2 = second[&q];
        b.eps(q, q2);
        if relabel[q.0] == 1 {
            det_moves(&mut b, a, q2, q, |t| if in_x[t.0] { second[&t] } else { t });
        } else {
            b.eps(q2, top);
        }
    }
    b.finish(a.initial(), Acceptance::Weak)
}

/// Guessing component, outside checker and one checker per even rank of
/// `X`, each with its search component.
fn component_guess(a: &DetAutomaton, in_x: &[bool]) -> TreeAutomaton {
    let mut b = Builder::new(a.alphabet());
    let mut even: Vec<Rank> = a.states().filter(|q| in_x[q.0]).map(|q| a.rank(q)).filter(|r| r % 2 == 0).collect();
    even.sort_unstable();
    even.dedup();

    let guess: Vec<StateId> = a.states().map(|q| b.add(format!("{}^g", a.name(q)), Mode::Universal, 1)).collect();
    let primed: Vec<StateId> = a.states().map(|q| b.add(format!("{}'", a.name(q)), Mode::Existential, 1)).collect();
    let outside: Vec<Option<StateId>> = a
        .states()
        .map(|q| (!in_x[q.0]).then(|| b.add(format!("{}^out", a.name(q)), Mode::Universal, 2)))
        .collect();
    let bot = b.sink(BOT, 3);
    let top = b.sink(TOP, 4);
    let mut main: HashMap<(Rank, StateId), StateId> = HashMap::new();
    let mut search: HashMap<(Rank, StateId), StateId> = HashMap::new();
    for &r in &even {
        for q in a.states().filter(|q| in_x[q.0]) {
            main.insert((r, q), b.add(format!("{}^X{r}", a.name(q)), Mode::Universal, 2));
            search.insert((r, q), b.add(format!("{}^find{r}", a.name(q)), Mode::Existential, 3));
        }
    }

    for q in a.states() {
        det_moves(&mut b, a, guess[q.0], q, |t| primed[t.0]);
        b.eps(primed[q.0], guess[q.0]);
        match outside[q.0] {
            Some(o) => {
                b.eps(primed[q.0], o);
                det_moves(&mut b, a, o, q, |t| outside[t.0].unwrap_or(bot));
            }
            None => {
                for &r in &even {
                    b.eps(primed[q.0], main[&(r, q)]);
                }
            }
        }
    }
    for &r in &even {
        for q in a.states().filter(|q| in_x[q.0]) {
            let m = main[&(r, q)];
            for l in 0..a.num_letters() {
                let [x, y] = a.succ(q, l);
                let too_high = |t: StateId| in_x[t.0] && a.rank(t) > r;
                match (in_x[x.0], in_x[y.0]) {
                    _ if too_high(x) || too_high(y) => b.tr(m, l, Direction::Epsilon, bot),
                    (true, false) | (false, true) => {
                        let (d, t) = if in_x[x.0] { (Direction::Left, x) } else { (Direction::Right, y) };
                        b.tr(m, l, d, main[&(r, t)]);
                        b.tr(m, l, d, search[&(r, t)]);
                    }
                    _ => b.tr(m, l, Direction::Epsilon, bot),
                }
            }
            let s = search[&(r, q)];
            if a.rank(q) == r {
                b.eps(s, top);
            } else {
                for l in 0..a.num_letters() {
                    for (k, t) in a.succ(q, l).into_iter().enumerate() {
                        if in_x[t.0] {
                            b.tr(s, l, Direction::from_child(k), search[&(r, t)]);
                        }
                    }
                }
            }
        }
    }
    b.finish(primed[a.initial().0], Acceptance::Weak)
}

/// Minimal-index weak automaton for any deterministic automaton whose
/// language is weakly recognizable with a supported construction.
pub fn weaken(a: &DetAutomaton) -> Result<(TreeAutomaton, ConstructionTrace)> {
    let report = classify(a)?;
    let t = &report.trimmed;
    let n = t.num_states();
    let one_state = |rank: Rank, name: &str| {
        let mut b = Builder::new(a.alphabet());
        let s = b.sink(name, rank);
        b.finish(s, Acceptance::Weak)
    };
    let evidence = |claim: &str| -> Box<Witness> {
        Box::new(
            report
                .witnesses
                .iter()
                .find(|e| e.claim == claim)
                .map(|e| e.witness.clone())
                .expect("negative ladder claims carry witnesses"),
        )
    };
    let (out, mut trace) = match report.borel {
        BorelClass::Sigma0 => (one_state(1, BOT), ConstructionTrace::new("empty language", a.num_states(), 1, Some(1))),
        BorelClass::Pi0 => (one_state(0, TOP), ConstructionTrace::new("universal language", a.num_states(), 1, Some(1))),
        BorelClass::Delta1 | BorelClass::Sigma1 | BorelClass::Pi1 => {
            let w = report.weak_det_automaton.clone().expect("first-level languages have a weak deterministic index");
            let out = w.to_tree().with_acceptance(Acceptance::Weak);
            (out, ConstructionTrace::new("weak deterministic relabelling", n, n, Some(n)))
        }
        BorelClass::Pi2 | BorelClass::Delta2 => {
            let relabelled = t.with_ranks(det_relabel(t, 1));
            (weaken_02(&relabelled)?, ConstructionTrace::new("weaken_02", n, 2 * n + 1, Some(2 * n + 1)))
        }
        BorelClass::Sigma2 => {
            let relabelled = t.with_ranks(det_relabel(t, 0));
            (weaken_13(&relabelled)?, ConstructionTrace::new("weaken_13", n, 3 * n + 1, Some(3 * n + 1)))
        }
        BorelClass::Delta3 => weaken_14(t)?,
        BorelClass::Pi3 => {
            return Err(Error::UnsupportedGapConstruction {
                attainable: IndexPair::even(3),
                witness: evidence("not Sigma^0_3"),
            })
        }
        BorelClass::NonBorel => return Err(Error::NonWeaklyRecognizable { witness: evidence("not Pi^0_3") }),
    };
    trace.output_states = out.num_states();
    trace.components.insert(0, (format!("target index {}", out.index()), out.num_states()));
    Ok((out, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::classify::det_index;
    use crate::semantics::{bounded_equiv, SamplerParams};

    fn params() -> SamplerParams {
        SamplerParams::new(42, 6, &["a".into(), "b".into()], 200).unwrap()
    }

    #[test]
    fn weaken_02_on_inf_b_left() {
        let (_, a) = det_index(&catalog::inf_b_left());
        let b = weaken_02(&a).unwrap();
        assert_eq!(b.num_states(), 7);
        assert_eq!(b.index(), IndexPair::even(2));
        assert!(bounded_equiv(&a, &b, &params()).unwrap().is_pass());
    }

    #[test]
    fn weaken_02_one_state() {
        let a = DetAutomaton::from_spec(&["a"], &[("q", 2)], "q", &[("q", "a", "q", "q")]).unwrap();
        let b = weaken_02(&a).unwrap();
        assert_eq!(b.num_states(), 3);
        let p = SamplerParams::new(1, 3, &["a".into()], 20).unwrap();
        assert!(bounded_equiv(&a, &b, &p).unwrap().is_pass());
        assert!(matches!(weaken_02(&catalog::fin_b_left()), Err(Error::IndexTooHigh { .. })));
    }

    #[test]
    fn weaken_13_on_fin_b_left() {
        let a = catalog::fin_b_left();
        let b = weaken_13(&a).unwrap();
        assert_eq!(b.num_states(), 10);
        assert_eq!(b.index(), IndexPair::odd(3));
        assert!(bounded_equiv(&a, &b, &params()).unwrap().is_pass());
        let one = DetAutomaton::from_spec(&["a"], &[("q", 0)], "q", &[("q", "a", "q", "q")]).unwrap();
        assert_eq!(weaken_13(&one).unwrap().num_states(), 4);
        assert!(matches!(weaken_13(&catalog::spine_fin_b()), Err(Error::PreconditionViolated { .. })));
    }

    #[test]
    fn weaken_14_on_catalog() {
        for name in ["fin_b_left", "all_a", "inf_b_left", "ex_b_left"] {
            let a = catalog::by_name(name).unwrap();
            let (b, trace) = weaken_14(&a).unwrap();
            assert!(b.num_states() <= trace.bound.unwrap(), "{name}");
            assert!(b.index().is_below(IndexPair::odd(4)) || b.index() == IndexPair::odd(4), "{name}");
            assert!(bounded_equiv(&a, &b, &params()).unwrap().is_pass(), "{name}");
        }
        assert!(matches!(weaken_14(&catalog::spine_fin_b()), Err(Error::PreconditionViolated { .. })));
    }

    #[test]
    fn restrict_multiplies_states() {
        let a = crate::semantics::skurczynski(crate::semantics::SkurczynskiSpec::new(IndexPair::even(2)).unwrap());
        let r = restrict(&a).unwrap();
        assert_eq!(r.num_states(), 3 * a.num_states());
        assert!(r.is_rank_monotone());
        assert!(bounded_equiv(&a, &r, &params()).unwrap().is_pass());
    }

    #[test]
    fn conjunction_cases() {
        let a = catalog::all_a().to_tree().with_acceptance(Acceptance::Weak);
        let c = conjunction(std::slice::from_ref(&a)).unwrap();
        assert_eq!(c.num_states(), a.num_states() + 1);
        assert!(bounded_equiv(&a, &c, &params()).unwrap().is_pass());
        let empty = conjunction(&[]).unwrap();
        assert!(crate::semantics::alt_accepts(&empty, &crate::tree::RegularTree::constant(2, "a")).unwrap());
    }

    #[test]
    fn dispatch() {
        let (b, _) = weaken(&catalog::all_a()).unwrap();
        assert_eq!((b.num_states(), b.index()), (2, IndexPair::even(1)));
        let (b, _) = weaken(&catalog::inf_b_left()).unwrap();
        assert_eq!((b.num_states(), b.index()), (7, IndexPair::even(2)));
        let (b, _) = weaken(&catalog::fin_b_left()).unwrap();
        assert_eq!(b.index(), IndexPair::odd(3));
        assert!(matches!(weaken(&catalog::split_min()), Err(Error::NonWeaklyRecognizable { .. })));
        match weaken(&catalog::spine_fin_b()) {
            Err(Error::UnsupportedGapConstruction { attainable, .. }) => assert_eq!(attainable, IndexPair::even(3)),
            other => panic!("{other:?}"),
        }
    }
}
