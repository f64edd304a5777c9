//! Borel class, deterministic index, weak deterministic index and weak
//! alternating index of deterministic automata.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::automaton::{DetAutomaton, Rank, StateId};
use crate::error::Result;
use crate::graph::Sccs;
use crate::index::IndexPair;
use crate::patterns::{PatternAnalysis, Witness};
use crate::productivity::{is_empty, is_universal, productive_states, trim_with};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BorelClass {
    Sigma0,
    Pi0,
    Delta1,
    Sigma1,
    Pi1,
    Delta2,
    Sigma2,
    Pi2,
    Delta3,
    Pi3,
    NonBorel,
}

impl BorelClass {
    pub const ALL: [BorelClass; 11] = [
        BorelClass::Sigma0,
        BorelClass::Pi0,
        BorelClass::Delta1,
        BorelClass::Sigma1,
        BorelClass::Pi1,
        BorelClass::Delta2,
        BorelClass::Sigma2,
        BorelClass::Pi2,
        BorelClass::Delta3,
        BorelClass::Pi3,
        BorelClass::NonBorel,
    ];

    /// Finite level, with `Delta3` standing for `Σ⁰₃`.
    pub fn level(self) -> Option<u32> {
        use BorelClass::*;
        match self {
            Sigma0 | Pi0 => Some(0),
            Delta1 | Sigma1 | Pi1 => Some(1),
            Delta2 | Sigma2 | Pi2 => Some(2),
            Delta3 | Pi3 => Some(3),
            NonBorel => None,
        }
    }

    /// Weak alternating indices attained, one per side of the level.
    pub fn weak_alt_index(self) -> WeakAltIndex {
        use BorelClass::*;
        let level = match self.level() {
            Some(n) => n,
            None => return WeakAltIndex::NonWeaklyRecognizable,
        };
        let pi = IndexPair::even(level);
        let sigma = IndexPair::odd(level + 1);
        WeakAltIndex::Indices(match self {
            Sigma0 => vec![IndexPair::odd(1)],
            Pi0 => vec![IndexPair::even(0)],
            Pi1 | Pi2 | Pi3 => vec![pi],
            Sigma1 | Sigma2 => vec![sigma],
            Delta1 | Delta2 | Delta3 => vec![pi, sigma],
            NonBorel => unreachable!(),
        })
    }

    pub fn name(self) -> &'static str {
        use BorelClass::*;
        match self {
            Sigma0 => "Sigma^0_0",
            Pi0 => "Pi^0_0",
            Delta1 => "Delta^0_1",
            Sigma1 => "Sigma^0_1",
            Pi1 => "Pi^0_1",
            Delta2 => "Delta^0_2",
            Sigma2 => "Sigma^0_2",
            Pi2 => "Pi^0_2",
            Delta3 => "Delta^0_3",
            Pi3 => "Pi^0_3",
            NonBorel => "non-Borel",
        }
    }
}

impl fmt::Display for BorelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WeakAltIndex {
    Indices(Vec<IndexPair>),
    NonWeaklyRecognizable,
}

impl fmt::Display for WeakAltIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeakAltIndex::Indices(v) => {
                let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
                f.write_str(&parts.join(" "))
            }
            WeakAltIndex::NonWeaklyRecognizable => f.write_str("not weakly recognizable"),
        }
    }
}

/// Class memberships read off the six patterns, for a trimmed automaton
/// whose language is neither empty nor universal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LadderBits {
    /// No weak (1,2)-flower.
    pub pi1: bool,
    /// No weak (0,1)-flower.
    pub sigma1: bool,
    /// No (0,1)-flower.
    pub pi2: bool,
    /// No (1,2)-flower and no replicated weak (1,2)-flower.
    pub sigma2: bool,
    /// No replicated (0,1)-flower.
    pub sigma3: bool,
    /// No split.
    pub pi3: bool,
}

impl LadderBits {
    pub fn class(self) -> BorelClass {
        use BorelClass::*;
        match self {
            b if b.pi1 && b.sigma1 => Delta1,
            b if b.pi1 => Pi1,
            b if b.sigma1 => Sigma1,
            b if b.pi2 && b.sigma2 => Delta2,
            b if b.pi2 => Pi2,
            b if b.sigma2 => Sigma2,
            b if b.sigma3 => Delta3,
            b if b.pi3 => Pi3,
            _ => NonBorel,
        }
    }

    /// Each class is contained in the classes above it.
    pub fn is_antitone(self) -> bool {
        let imp = |a: bool, b: bool| !a || b;
        imp(self.pi1, self.pi2 && self.sigma2)
            && imp(self.sigma1, self.pi2 && self.sigma2)
            && imp(self.pi2, self.sigma3)
            && imp(self.sigma2, self.sigma3)
            && imp(self.sigma3, self.pi3)
    }
}

/// A present pattern and the class membership it rules out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub claim: String,
    pub witness: Witness,
}

pub fn ladder(an: &PatternAnalysis) -> (LadderBits, Vec<Evidence>) {
    let mut ev = Vec::new();
    let mut absent = |claim: &str, w: Option<Witness>| match w {
        Some(witness) => {
            ev.push(Evidence { claim: claim.to_string(), witness });
            false
        }
        None => true,
    };
    let (e1, o2) = (IndexPair::even(1), IndexPair::odd(2));
    let pi1 = absent("not Pi^0_1", an.find_weak_flower(o2).map(Witness::Flower));
    let sigma1 = absent("not Sigma^0_1", an.find_weak_flower(e1).map(Witness::Flower));
    let pi2 = absent("not Pi^0_2", an.find_flower(e1).map(Witness::Flower));
    let sigma2 = absent("not Sigma^0_2", an.find_flower(o2).map(Witness::Flower))
        & absent("not Sigma^0_2", an.find_replicated_flower(o2, true));
    let sigma3 = absent("not Sigma^0_3", an.find_replicated_flower(e1, false));
    let pi3 = absent("not Pi^0_3", an.find_split().map(Witness::Split));
    (LadderBits { pi1, sigma1, pi2, sigma2, sigma3, pi3 }, ev)
}

/// Borel class of a trimmed automaton (empty and universal languages are
/// recognised first).
pub fn borel_rank(a: &DetAutomaton) -> BorelClass {
    if is_empty(a) {
        return BorelClass::Sigma0;
    }
    if is_universal(a) {
        return BorelClass::Pi0;
    }
    ladder(&PatternAnalysis::new(a)).0.class()
}

pub fn weak_alt_index(a: &DetAutomaton) -> WeakAltIndex {
    borel_rank(a).weak_alt_index()
}

/// Minimal deterministic index of a trimmed automaton with an equivalent
/// relabelling; at equal width `(0,k)` is preferred.
pub fn det_index(a: &DetAutomaton) -> (IndexPair, DetAutomaton) {
    det_index_with(&PatternAnalysis::new(a))
}

pub fn det_index_with(an: &PatternAnalysis) -> (IndexPair, DetAutomaton) {
    let a = an.automaton();
    let i = min_index(a.num_states() as u32 + 1, |i| an.find_flower(i.dual()).is_none())
        .expect("an automaton with n states has no flower of width n");
    let ranks = det_relabel(a, i.iota());
    debug_assert!(ranks.iter().all(|&r| i.contains(r)));
    (i, a.with_ranks(ranks))
}

/// Minimal weak deterministic index with a rank-monotone relabelling, or
/// none when some component carries loops of both parities.
pub fn weak_det_index(a: &DetAutomaton) -> Option<(IndexPair, DetAutomaton)> {
    weak_det_index_with(&PatternAnalysis::new(a))
}

pub fn weak_det_index_with(an: &PatternAnalysis) -> Option<(IndexPair, DetAutomaton)> {
    let a = an.automaton();
    let sccs = scc_kinds(a, an.loop_ranks());
    if sccs.1.iter().any(|k| k[0] && k[1]) {
        return None;
    }
    let i = min_index(sccs.0.len() as u32 + 1, |i| an.find_weak_flower(i.dual()).is_none())?;
    let ranks = weak_relabel(a, &sccs.0, &sccs.1, i);
    debug_assert!(ranks.iter().all(|&r| i.contains(r)));
    Some((i, a.with_ranks(ranks)))
}

fn min_index(max_width: u32, admissible: impl Fn(IndexPair) -> bool) -> Option<IndexPair> {
    (0..=max_width).flat_map(IndexPair::level).find(|&i| admissible(i))
}

fn scc_kinds(a: &DetAutomaton, loop_ranks: &[std::collections::BTreeSet<Rank>]) -> (Sccs, Vec<[bool; 2]>) {
    let succ = |q: usize| a.successors(StateId(q)).into_iter().map(|s| s.0);
    let sccs = Sccs::new(a.num_states(), succ, |_| true);
    let mut kinds = vec![[false; 2]; sccs.len()];
    for q in a.states() {
        for r in &loop_ranks[q.0] {
            kinds[sccs.comp[q.0].unwrap()][(r % 2) as usize] = true;
        }
    }
    (sccs, kinds)
}

/// Peels each component by its top rank: the top-rank states get the least
/// value of the right parity above everything beneath them.
pub fn det_relabel(a: &DetAutomaton, iota: Rank) -> Vec<Rank> {
    let n = a.num_states();
    let mut out = vec![iota; n];
    let mut stack: Vec<Vec<usize>> = vec![(0..n).collect()];
    // post-order: a component's value needs its sub-components first
    let mut order: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    while let Some(set) = stack.pop() {
        let mut inside = vec![false; n];
        for &q in &set {
            inside[q] = true;
        }
        let succ = |q: usize| a.successors(StateId(q)).into_iter().map(|s| s.0);
        let sccs = Sccs::new(n, succ, |q| inside[q]);
        for (c, members) in sccs.members.iter().enumerate() {
            if !sccs.cyclic[c] {
                continue;
            }
            let d = members.iter().map(|&q| a.rank(StateId(q))).max().unwrap();
            let (top, rest): (Vec<usize>, Vec<usize>) =
                members.iter().partition(|&&q| a.rank(StateId(q)) == d);
            order.push((top, members.clone()));
            if !rest.is_empty() {
                stack.push(rest);
            }
        }
    }
    for (top, members) in order.into_iter().rev() {
        let d = a.rank(StateId(top[0]));
        let below = members
            .iter()
            .filter(|q| !top.contains(q))
            .map(|&q| out[q])
            .max()
            .unwrap_or(iota)
            .max(iota);
        let v = if below % 2 == d % 2 { below } else { below + 1 };
        for q in top {
            out[q] = v;
        }
    }
    out
}

/// Values decrease from the sinks of the component DAG towards the initial
/// state; a cyclic component takes the largest value of its loop parity not
/// above any successor value.
fn weak_relabel(a: &DetAutomaton, sccs: &Sccs, kinds: &[[bool; 2]], i: IndexPair) -> Vec<Rank> {
    let mut value = vec![i.kappa(); sccs.len()];
    for c in 0..sccs.len() {
        let cap = sccs.members[c]
            .iter()
            .flat_map(|&q| a.successors(StateId(q)))
            .filter_map(|t| sccs.comp[t.0].filter(|&d| d != c))
            .map(|d| value[d])
            .min()
            .unwrap_or(i.kappa());
        value[c] = match kinds[c] {
            [true, false] if cap % 2 == 1 => cap - 1,
            [false, true] if cap % 2 == 0 => cap.saturating_sub(1),
            _ => cap,
        };
    }
    a.states().map(|q| value[sccs.comp[q.0].unwrap()]).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub borel: BorelClass,
    pub ladder: Option<LadderBits>,
    pub det_index: IndexPair,
    #[serde(skip)]
    pub det_automaton: DetAutomaton,
    pub weak_det_index: Option<IndexPair>,
    #[serde(skip)]
    pub weak_det_automaton: Option<DetAutomaton>,
    pub weak_alt_index: WeakAltIndex,
    pub witnesses: Vec<Evidence>,
    #[serde(skip)]
    pub trimmed: DetAutomaton,
    #[serde(skip)]
    pub trim_time: Duration,
    #[serde(skip)]
    pub analysis_time: Duration,
}

impl ClassificationReport {
    pub fn render(&self, with_witnesses: bool) -> String {
        let mut s = format!("borel: {}\n", self.borel);
        s.push_str(&format!("det_index: {}\n", self.det_index));
        match self.weak_det_index {
            Some(i) => s.push_str(&format!("weak_det_index: {i}\n")),
            None => s.push_str("weak_det_index: none\n"),
        }
        s.push_str(&format!("weak_alt_index: {}\n", self.weak_alt_index));
        if with_witnesses {
            for e in &self.witnesses {
                s.push_str(&format!("{}: {}\n", e.claim, e.witness.render(&self.trimmed)));
            }
        }
        s
    }
}

fn constant(a: &DetAutomaton, rank: Rank) -> DetAutomaton {
    let name = if rank % 2 == 1 { crate::automaton::BOT } else { crate::automaton::TOP };
    DetAutomaton::new(
        a.alphabet().to_vec(),
        vec![(name.to_string(), rank)],
        StateId(0),
        vec![vec![[StateId(0); 2]; a.num_letters()]],
    )
    .expect("one-state automata are valid")
}

/// Trims, then runs every classification; the emptiness game time is kept
/// apart from the pattern analysis time.
pub fn classify(a: &DetAutomaton) -> Result<ClassificationReport> {
    let start = Instant::now();
    let info = productive_states(a);
    let empty = !info.nonempty[a.initial().0];
    let trimmed = if empty { constant(a, 1) } else { trim_with(a, &info)? };
    let trim_time = start.elapsed();
    let start = Instant::now();
    let report = if empty || is_universal(&trimmed) {
        let (borel, rank) = if empty { (BorelClass::Sigma0, 1) } else { (BorelClass::Pi0, 0) };
        let one = constant(a, rank);
        let i = one.index();
        ClassificationReport {
            borel,
            ladder: None,
            det_index: i,
            det_automaton: one.clone(),
            weak_det_index: Some(i),
            weak_det_automaton: Some(one),
            weak_alt_index: borel.weak_alt_index(),
            witnesses: Vec::new(),
            trimmed,
            trim_time,
            analysis_time: Duration::ZERO,
        }
    } else {
        let an = PatternAnalysis::new(&trimmed);
        let (bits, mut witnesses) = ladder(&an);
        let borel = bits.class();
        let (det_index, det_automaton) = det_index_with(&an);
        for alt in IndexPair::level(det_index.width()).into_iter().filter(|&j| j != det_index) {
            if let Some(w) = an.find_flower(alt.dual()) {
                witnesses.push(Evidence { claim: format!("det index not {alt}"), witness: Witness::Flower(w) });
            }
        }
        if let Some(below) = det_index.width().checked_sub(1) {
            for alt in IndexPair::level(below) {
                if let Some(w) = an.find_flower(alt.dual()) {
                    witnesses.push(Evidence { claim: format!("det index not {alt}"), witness: Witness::Flower(w) });
                }
            }
        }
        let weak = weak_det_index_with(&an);
        ClassificationReport {
            borel,
            ladder: Some(bits),
            det_index,
            det_automaton,
            weak_det_index: weak.as_ref().map(|w| w.0),
            weak_det_automaton: weak.map(|w| w.1),
            weak_alt_index: borel.weak_alt_index(),
            witnesses,
            trimmed,
            trim_time,
            analysis_time: Duration::ZERO,
        }
    };
    Ok(ClassificationReport { analysis_time: start.elapsed(), ..report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::patterns::find_flower;

    #[test]
    fn catalog_classes() {
        let expect = [
            ("all_a", BorelClass::Pi1),
            ("ex_b_left", BorelClass::Sigma1),
            ("inf_b_left", BorelClass::Pi2),
            ("fin_b_left", BorelClass::Sigma2),
            ("spine_fin_b", BorelClass::Pi3),
            ("split_min", BorelClass::NonBorel),
        ];
        for (name, class) in expect {
            assert_eq!(borel_rank(&catalog::by_name(name).unwrap()), class, "{name}");
        }
    }

    #[test]
    fn fig4_images() {
        use BorelClass::*;
        let idx = |v: &[(u32, u32)]| {
            WeakAltIndex::Indices(v.iter().map(|&(i, k)| IndexPair::new(i, k).unwrap()).collect())
        };
        assert_eq!(Pi2.weak_alt_index(), idx(&[(0, 2)]));
        assert_eq!(Sigma2.weak_alt_index(), idx(&[(1, 3)]));
        assert_eq!(Delta3.weak_alt_index(), idx(&[(0, 3), (1, 4)]));
        assert_eq!(Sigma0.weak_alt_index(), idx(&[(1, 1)]));
        assert_eq!(Pi0.weak_alt_index(), idx(&[(0, 0)]));
        assert_eq!(NonBorel.weak_alt_index(), WeakAltIndex::NonWeaklyRecognizable);
    }

    #[test]
    fn det_indices() {
        let cases = [("all_a", (0, 1)), ("inf_b_left", (1, 2)), ("fin_b_left", (0, 1))];
        for (name, (i, k)) in cases {
            let a = catalog::by_name(name).unwrap();
            let (idx, b) = det_index(&a);
            assert_eq!(idx, IndexPair::new(i, k).unwrap(), "{name}");
            assert!(b.index().is_below(idx) || b.index() == idx, "{name}");
            assert!(find_flower(&b, idx.dual()).is_none(), "{name}");
        }
    }

    #[test]
    fn weak_det_indices() {
        let (i, b) = weak_det_index(&catalog::all_a()).unwrap();
        assert_eq!(i, IndexPair::even(1));
        assert!(b.is_rank_monotone());
        assert_eq!(b.num_states(), 2);
        assert_eq!(weak_det_index(&catalog::ex_b_left()).unwrap().0, IndexPair::odd(2));
        assert!(weak_det_index(&catalog::inf_b_left()).is_none());
    }

    #[test]
    fn trivial_languages() {
        let empty = DetAutomaton::from_spec(&["a"], &[("q", 1)], "q", &[("q", "a", "q", "q")]).unwrap();
        let r = classify(&empty).unwrap();
        assert_eq!((r.borel, r.det_index), (BorelClass::Sigma0, IndexPair::odd(1)));
        let univ = DetAutomaton::from_spec(&["a"], &[("q", 2)], "q", &[("q", "a", "q", "q")]).unwrap();
        let r = classify(&univ).unwrap();
        assert_eq!((r.borel, r.det_index), (BorelClass::Pi0, IndexPair::even(0)));
    }

    #[test]
    fn report_rendering() {
        let r = classify(&catalog::all_a()).unwrap();
        let text = r.render(true);
        assert!(text.starts_with("borel: Pi^0_1\n"));
        assert!(text.contains("weak_alt_index: (0,1)"));
        assert!(text.contains("not Sigma^0_1: weak (0,1)-flower"));
    }
}
