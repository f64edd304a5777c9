//! Loops, flowers, weak flowers, splits and replication on deterministic
//! automata, each reported with a replayable witness.
//!
//! Detection works on rank-restricted strongly connected components: a loop
//! through `p` with top rank exactly `r` exists iff the component of `p` in
//! the subgraph of states of rank at most `r` is cyclic and holds a state of
//! rank `r`.

pub mod brute;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::automaton::{DetAutomaton, Edge, Rank, StateId};
use crate::graph::Sccs;
use crate::index::IndexPair;

/// Indexed by chain length, then SCC, then the parity of the first loop.
type ChainTable = Vec<Vec<[bool; 2]>>;

/// A closed walk; `edges[0].source` is where it starts and ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Loop {
    pub edges: Vec<Edge>,
}

impl Loop {
    pub fn start(&self) -> StateId {
        self.edges[0].source
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.edges.iter().map(|e| e.source)
    }

    pub fn top_rank(&self, a: &DetAutomaton) -> Rank {
        self.states().map(|q| a.rank(q)).max().unwrap_or(0)
    }

    pub fn is_accepting(&self, a: &DetAutomaton) -> bool {
        self.top_rank(a).is_multiple_of(2)
    }

    pub fn is_valid(&self, a: &DetAutomaton) -> bool {
        !self.edges.is_empty()
            && is_walk(a, &self.edges)
            && self.edges.last().map(|e| e.target) == Some(self.start())
    }
}

fn is_walk(a: &DetAutomaton, edges: &[Edge]) -> bool {
    edges.iter().all(|e| {
        e.source.0 < a.num_states()
            && e.letter < a.num_letters()
            && e.dir < 2
            && a.target(e.source, e.letter, e.dir) == e.target
    }) && edges.windows(2).all(|w| w[0].target == w[1].source)
}

fn is_path(a: &DetAutomaton, from: StateId, to: StateId, edges: &[Edge]) -> bool {
    match (edges.first(), edges.last()) {
        (None, None) => from == to,
        (Some(f), Some(l)) => f.source == from && l.target == to && is_walk(a, edges),
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlowerKind {
    Strong,
    Weak,
}

/// Loops `λ_ι … λ_κ`. Strong flowers share the pivot as the start of every
/// loop; weak flowers carry `links[j]`, a path from the start of loop `j`
/// to the start of loop `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowerWitness {
    pub kind: FlowerKind,
    pub index: IndexPair,
    pub pivot: Option<StateId>,
    pub loops: Vec<Loop>,
    pub links: Vec<Vec<Edge>>,
}

impl FlowerWitness {
    pub fn states(&self) -> BTreeSet<StateId> {
        self.loops.iter().flat_map(|l| l.states()).collect()
    }

    pub fn is_valid(&self, a: &DetAutomaton) -> bool {
        let len = (self.index.width() + 1) as usize;
        if self.loops.len() != len || !self.loops.iter().all(|l| l.is_valid(a)) {
            return false;
        }
        let parities_ok = self
            .loops
            .iter()
            .zip(self.index.iota()..)
            .all(|(l, i)| l.top_rank(a) % 2 == i % 2);
        if !parities_ok {
            return false;
        }
        match self.kind {
            FlowerKind::Strong => {
                let Some(p) = self.pivot else { return false };
                self.loops.iter().all(|l| l.start() == p)
                    && self.loops.windows(2).all(|w| w[0].top_rank(a) < w[1].top_rank(a))
            }
            FlowerKind::Weak => {
                self.links.len() + 1 == len
                    && self.links.iter().enumerate().all(|(j, path)| {
                        is_path(a, self.loops[j].start(), self.loops[j + 1].start(), path)
                    })
            }
        }
    }
}

/// Two loops leaving `state` on `letter`, one in each direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitWitness {
    pub state: StateId,
    pub letter: usize,
    pub loops: [Loop; 2],
    pub tops: [Rank; 2],
}

impl SplitWitness {
    pub fn is_valid(&self, a: &DetAutomaton) -> bool {
        let [l0, l1] = &self.loops;
        let first = |l: &Loop, d: usize| {
            l.edges.first().is_some_and(|e| e.source == self.state && e.letter == self.letter && e.dir == d)
        };
        let tops = [l0.top_rank(a), l1.top_rank(a)];
        l0.is_valid(a)
            && l1.is_valid(a)
            && first(l0, 0)
            && first(l1, 1)
            && tops == self.tops
            && tops[0] % 2 != tops[1] % 2
            && tops[0].max(tops[1]) % 2 == 1
    }
}

/// `replicated` is reached by `branch`, which leaves the start of the
/// accepting `cycle` on the same letter in the other direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplicationWitness {
    pub cycle: Loop,
    pub branch: Vec<Edge>,
    pub replicated: StateId,
}

impl ReplicationWitness {
    pub fn is_valid(&self, a: &DetAutomaton) -> bool {
        let (Some(c), Some(b)) = (self.cycle.edges.first(), self.branch.first()) else {
            return false;
        };
        self.cycle.is_valid(a)
            && self.cycle.is_accepting(a)
            && c.source == b.source
            && c.letter == b.letter
            && c.dir != b.dir
            && is_path(a, b.source, self.replicated, &self.branch)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Flower(FlowerWitness),
    Split(SplitWitness),
    Replication(ReplicationWitness),
    ReplicatedFlower { flower: FlowerWitness, replication: ReplicationWitness },
}

impl Witness {
    pub fn is_valid(&self, a: &DetAutomaton) -> bool {
        match self {
            Witness::Flower(f) => f.is_valid(a),
            Witness::Split(s) => s.is_valid(a),
            Witness::Replication(r) => r.is_valid(a),
            Witness::ReplicatedFlower { flower, replication } => {
                flower.is_valid(a)
                    && replication.is_valid(a)
                    && flower.states().contains(&replication.replicated)
            }
        }
    }

    pub fn title(&self) -> String {
        match self {
            Witness::Flower(f) => flower_title(f),
            Witness::Split(_) => "split".into(),
            Witness::Replication(_) => "replication by an accepting loop".into(),
            Witness::ReplicatedFlower { flower, .. } => {
                format!("{} replicated by an accepting loop", flower_title(flower))
            }
        }
    }

    /// Labelled transition sequences making up the witness.
    pub fn sections(&self) -> Vec<(String, Vec<Edge>)> {
        let mut out = Vec::new();
        match self {
            Witness::Flower(f) => flower_sections(f, &mut out),
            Witness::Split(s) => {
                for (d, l) in s.loops.iter().enumerate() {
                    out.push((format!("loop dir {d} top {}", s.tops[d]), l.edges.clone()));
                }
            }
            Witness::Replication(r) => replication_sections(r, &mut out),
            Witness::ReplicatedFlower { flower, replication } => {
                flower_sections(flower, &mut out);
                replication_sections(replication, &mut out);
            }
        }
        out
    }

    /// Human-readable rendering with state and letter names.
    pub fn render(&self, a: &DetAutomaton) -> String {
        let mut s = match self {
            Witness::Split(w) => format!("split at {} on {}", a.name(w.state), a.alphabet()[w.letter]),
            Witness::Replication(r) => format!("{} replicated by an accepting loop", a.name(r.replicated)),
            _ => self.title(),
        };
        for (label, edges) in self.sections() {
            s.push_str(&format!("\n  {label}: {}", render_edges(a, &edges)));
        }
        s
    }
}

fn flower_title(f: &FlowerWitness) -> String {
    match f.kind {
        FlowerKind::Strong => format!("{}-flower", f.index),
        FlowerKind::Weak => format!("weak {}-flower", f.index),
    }
}

fn flower_sections(f: &FlowerWitness, out: &mut Vec<(String, Vec<Edge>)>) {
    for (j, l) in f.loops.iter().enumerate() {
        let i = f.index.iota() as usize + j;
        out.push((format!("loop {i}"), l.edges.clone()));
        if let Some(p) = f.links.get(j) {
            out.push((format!("path {i}->{}", i + 1), p.clone()));
        }
    }
}

fn replication_sections(r: &ReplicationWitness, out: &mut Vec<(String, Vec<Edge>)>) {
    out.push(("accepting loop".into(), r.cycle.edges.clone()));
    out.push(("branch".into(), r.branch.clone()));
}

pub fn render_edges(a: &DetAutomaton, edges: &[Edge]) -> String {
    if edges.is_empty() {
        return "(empty)".into();
    }
    let mut s = a.name(edges[0].source).to_string();
    for e in edges {
        s.push_str(&format!(" -{},{}-> {}", a.alphabet()[e.letter], e.dir, a.name(e.target)));
    }
    s
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.title())
    }
}

/// Rank-restricted SCC decompositions, one per rank occurring in `a`.
#[derive(Clone, Debug)]
struct Layers {
    ranks: Vec<Rank>,
    sccs: Vec<Sccs>,
    /// `top[i][c]`: component `c` of layer `i` holds a state of rank
    /// `ranks[i]` and a cycle.
    top: Vec<Vec<bool>>,
}

impl Layers {
    fn new(a: &DetAutomaton) -> Layers {
        let mut ranks: Vec<Rank> = a.ranks().to_vec();
        ranks.sort_unstable();
        ranks.dedup();
        let mut sccs = Vec::with_capacity(ranks.len());
        let mut top = Vec::with_capacity(ranks.len());
        let succ = |q: usize| a.successors(StateId(q)).into_iter().map(|s| s.0);
        for &r in &ranks {
            let s = Sccs::new(a.num_states(), succ, |q| a.rank(StateId(q)) <= r);
            top.push(
                (0..s.len())
                    .map(|c| s.cyclic[c] && s.members[c].iter().any(|&q| a.rank(StateId(q)) == r))
                    .collect(),
            );
            sccs.push(s);
        }
        Layers { ranks, sccs, top }
    }

    fn loop_at(&self, layer: usize, p: StateId) -> bool {
        self.sccs[layer].comp[p.0].is_some_and(|c| self.top[layer][c])
    }

    /// A loop starting with the edge `p -> t` with top rank `ranks[layer]`.
    fn edge_at(&self, layer: usize, p: StateId, t: StateId) -> bool {
        self.sccs[layer].same(p.0, t.0) && self.loop_at(layer, p)
    }
}

/// Everything the detectors share: rank layers, loop ranks, the full SCC
/// decomposition and the set reachable by branching off accepting loops.
#[derive(Clone, Debug)]
pub struct PatternAnalysis<'a> {
    a: &'a DetAutomaton,
    layers: Layers,
    loop_ranks: Vec<BTreeSet<Rank>>,
    sccs: Sccs,
    /// Per SCC: (has accepting loop, has rejecting loop).
    kinds: Vec<[bool; 2]>,
    /// Distinct successor components, self excluded.
    dag: Vec<Vec<usize>>,
    replicated: Vec<bool>,
    /// Per replicated state: the accepting edge whose branch reaches it and
    /// the predecessor on the branch.
    replication_parent: Vec<Option<(Edge, Option<Edge>)>>,
}

impl<'a> PatternAnalysis<'a> {
    pub fn new(a: &'a DetAutomaton) -> PatternAnalysis<'a> {
        let layers = Layers::new(a);
        let n = a.num_states();
        let loop_ranks: Vec<BTreeSet<Rank>> = a
            .states()
            .map(|p| {
                (0..layers.ranks.len()).filter(|&i| layers.loop_at(i, p)).map(|i| layers.ranks[i]).collect()
            })
            .collect();
        let succ = |q: usize| a.successors(StateId(q)).into_iter().map(|s| s.0);
        let sccs = Sccs::new(n, succ, |_| true);
        let mut kinds = vec![[false; 2]; sccs.len()];
        for q in a.states() {
            let c = sccs.comp[q.0].expect("all states kept");
            for r in &loop_ranks[q.0] {
                kinds[c][(r % 2) as usize] = true;
            }
        }
        let mut dag = vec![Vec::new(); sccs.len()];
        for q in a.states() {
            let c = sccs.comp[q.0].unwrap();
            for t in a.successors(q) {
                let d = sccs.comp[t.0].unwrap();
                if d != c {
                    dag[c].push(d);
                }
            }
        }
        for succs in &mut dag {
            succs.sort_unstable();
            succs.dedup();
        }
        let mut analysis = PatternAnalysis {
            a,
            layers,
            loop_ranks,
            sccs,
            kinds,
            dag,
            replicated: Vec::new(),
            replication_parent: Vec::new(),
        };
        analysis.compute_replication();
        analysis
    }

    pub fn automaton(&self) -> &DetAutomaton {
        self.a
    }

    pub fn loop_ranks(&self) -> &[BTreeSet<Rank>] {
        &self.loop_ranks
    }

    fn layer_of(&self, r: Rank) -> usize {
        self.layers.ranks.binary_search(&r).expect("rank occurs in the automaton")
    }

    /// Top ranks of loops whose first edge is `e`.
    fn edge_ranks(&self, e: Edge) -> impl Iterator<Item = Rank> + '_ {
        (0..self.layers.ranks.len())
            .filter(move |&i| self.layers.edge_at(i, e.source, e.target))
            .map(|i| self.layers.ranks[i])
    }

    fn compute_replication(&mut self) {
        let a = self.a;
        let n = a.num_states();
        let mut parent: Vec<Option<(Edge, Option<Edge>)>> = vec![None; n];
        let mut queue = VecDeque::new();
        for e in a.edges() {
            if !self.edge_ranks(e).any(|r| r % 2 == 0) {
                continue;
            }
            let b = a.target(e.source, e.letter, 1 - e.dir);
            if parent[b.0].is_none() {
                parent[b.0] = Some((e, None));
                queue.push_back(b);
            }
        }
        while let Some(q) = queue.pop_front() {
            let origin = parent[q.0].unwrap().0;
            for l in 0..a.num_letters() {
                for (d, t) in a.succ(q, l).into_iter().enumerate() {
                    if parent[t.0].is_none() {
                        parent[t.0] = Some((origin, Some(Edge { source: q, letter: l, dir: d, target: t })));
                        queue.push_back(t);
                    }
                }
            }
        }
        self.replicated = parent.iter().map(Option::is_some).collect();
        self.replication_parent = parent;
    }

    /// Replication set including non-productive states such as the sink.
    pub fn replicated_mask(&self) -> &[bool] {
        &self.replicated
    }

    pub fn replicated_states(&self) -> BTreeSet<StateId> {
        let sink = self.a.sink();
        self.a.states().filter(|&q| self.replicated[q.0] && Some(q) != sink).collect()
    }

    pub fn replication_witness(&self, q: StateId) -> Option<ReplicationWitness> {
        let (origin, _) = self.replication_parent[q.0]?;
        let mut branch = Vec::new();
        let mut cur = q;
        while let Some((_, Some(e))) = self.replication_parent[cur.0] {
            branch.push(e);
            cur = e.source;
        }
        branch.push(Edge {
            source: origin.source,
            letter: origin.letter,
            dir: 1 - origin.dir,
            target: cur,
        });
        branch.reverse();
        let r = self.edge_ranks(origin).find(|r| r % 2 == 0)?;
        let cycle = self.cycle_through_edge(origin, r)?;
        Some(ReplicationWitness { cycle, branch, replicated: q })
    }

    /// Shortest closed walk starting with `e` whose top rank is `r`.
    fn cycle_through_edge(&self, e: Edge, r: Rank) -> Option<Loop> {
        let layer = self.layer_of(r);
        let s = &self.layers.sccs[layer];
        let c = s.comp[e.source.0]?;
        if s.comp[e.target.0] != Some(c) {
            return None;
        }
        let inside = |q: StateId| s.comp[q.0] == Some(c);
        let a = self.a;
        let from_t = bfs(a, e.target, inside);
        let to_p = bfs_reverse(a, e.source, inside);
        let best = s.members[c]
            .iter()
            .map(|&q| StateId(q))
            .filter(|&q| a.rank(q) == r && from_t[q.0].is_some() && to_p[q.0].is_some())
            .min_by_key(|q| (from_t[q.0].as_ref().unwrap().len() + to_p[q.0].as_ref().unwrap().len(), q.0))?;
        let mut edges = vec![e];
        edges.extend(from_t[best.0].clone().unwrap());
        edges.extend(to_p[best.0].clone().unwrap());
        Some(Loop { edges })
    }

    /// Shortest closed walk starting at `p` whose top rank is `r`.
    fn cycle_through_state(&self, p: StateId, r: Rank) -> Option<Loop> {
        let a = self.a;
        (0..a.num_letters())
            .flat_map(|l| {
                let succ = a.succ(p, l);
                (0..2).map(move |d| Edge { source: p, letter: l, dir: d, target: succ[d] })
            })
            .filter_map(|e| self.cycle_through_edge(e, r))
            .min_by_key(|l| l.edges.len())
    }

    pub fn find_flower(&self, i: IndexPair) -> Option<FlowerWitness> {
        self.a.states().find_map(|p| self.flower_at(p, i))
    }

    fn flower_tops(&self, p: StateId, i: IndexPair) -> Option<Vec<Rank>> {
        let len = (i.width() + 1) as usize;
        let mut tops = Vec::with_capacity(len);
        let mut want = i.iota() % 2;
        for &r in &self.loop_ranks[p.0] {
            if tops.len() == len {
                break;
            }
            if r % 2 == want {
                tops.push(r);
                want ^= 1;
            }
        }
        (tops.len() == len).then_some(tops)
    }

    fn flower_at(&self, p: StateId, i: IndexPair) -> Option<FlowerWitness> {
        let tops = self.flower_tops(p, i)?;
        let loops = tops.iter().map(|&r| self.cycle_through_state(p, r)).collect::<Option<Vec<_>>>()?;
        Some(FlowerWitness { kind: FlowerKind::Strong, index: i, pivot: Some(p), loops, links: Vec::new() })
    }

    pub fn find_weak_flower(&self, i: IndexPair) -> Option<FlowerWitness> {
        self.weak_flower(i, false)
    }

    /// `ok[len][c][x]`: a chain of `len` alternating loops exists whose first
    /// loop lies in `c` with parity `x`. `any` closes `ok` under reachability.
    fn weak_tables(&self, len: usize) -> (ChainTable, ChainTable) {
        let m = self.sccs.len();
        let mut ok = vec![vec![[false; 2]; m]; len + 1];
        let mut any = vec![vec![[false; 2]; m]; len + 1];
        for k in 1..=len {
            // successors have smaller component indices
            for c in 0..m {
                for x in 0..2 {
                    let here = self.kinds[c][x] && (k == 1 || any[k - 1][c][1 - x]);
                    ok[k][c][x] = here;
                    any[k][c][x] = here || self.dag[c].iter().any(|&d| any[k][d][x]);
                }
            }
        }
        (ok, any)
    }

    /// With `replicated_start`, the first loop must contain a replicated
    /// state; the replication set is closed under successors, so then every
    /// loop of the chain does.
    fn weak_flower(&self, i: IndexPair, replicated_start: bool) -> Option<FlowerWitness> {
        let len = (i.width() + 1) as usize;
        let (ok, any) = self.weak_tables(len);
        let x0 = (i.iota() % 2) as usize;
        let mut c = (0..self.sccs.len())
            .find(|&c| ok[len][c][x0] && (!replicated_start || self.replicated[self.sccs.members[c][0]]))?;
        let mut loops = Vec::with_capacity(len);
        let mut x = x0;
        for k in (1..=len).rev() {
            loops.push(self.loop_in_scc(c, x)?);
            if k > 1 {
                c = self.next_component(c, &ok[k - 1], &any[k - 1], 1 - x)?;
                x = 1 - x;
            }
        }
        let links = loops
            .windows(2)
            .map(|w| {
                let d = bfs(self.a, w[0].start(), |_| true);
                d[w[1].start().0].clone()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(FlowerWitness { kind: FlowerKind::Weak, index: i, pivot: None, loops, links })
    }

    fn next_component(&self, from: usize, ok: &[[bool; 2]], any: &[[bool; 2]], x: usize) -> Option<usize> {
        let mut c = from;
        loop {
            if ok[c][x] {
                return Some(c);
            }
            c = *self.dag[c].iter().find(|&&d| any[d][x])?;
        }
    }

    fn loop_in_scc(&self, c: usize, x: usize) -> Option<Loop> {
        self.sccs.members[c].iter().find_map(|&q| {
            let r = *self.loop_ranks[q].iter().find(|r| (*r % 2) as usize == x)?;
            self.cycle_through_state(StateId(q), r)
        })
    }

    pub fn find_split(&self) -> Option<SplitWitness> {
        let a = self.a;
        for p in a.states() {
            for l in 0..a.num_letters() {
                let succ = a.succ(p, l);
                let es = [0, 1].map(|d| Edge { source: p, letter: l, dir: d, target: succ[d] });
                let tops = es.map(|e| self.edge_ranks(e).collect::<Vec<_>>());
                let found = tops[0]
                    .iter()
                    .flat_map(|&r0| tops[1].iter().map(move |&r1| [r0, r1]))
                    .find(|[r0, r1]| r0 % 2 != r1 % 2 && r0.max(r1) % 2 == 1);
                if let Some(t) = found {
                    let loops = [self.cycle_through_edge(es[0], t[0])?, self.cycle_through_edge(es[1], t[1])?];
                    return Some(SplitWitness { state: p, letter: l, loops, tops: t });
                }
            }
        }
        None
    }

    pub fn find_replicated_flower(&self, i: IndexPair, weak: bool) -> Option<Witness> {
        let flower = if weak {
            self.weak_flower(i, true)?
        } else {
            self.a.states().filter(|p| self.replicated[p.0]).find_map(|p| self.flower_at(p, i))?
        };
        let q = flower.loops[0].start();
        let replication = self.replication_witness(q)?;
        Some(Witness::ReplicatedFlower { flower, replication })
    }
}

/// Shortest paths from `start` through states allowed by `keep`.
fn bfs(a: &DetAutomaton, start: StateId, keep: impl Fn(StateId) -> bool) -> Vec<Option<Vec<Edge>>> {
    let mut paths: Vec<Option<Vec<Edge>>> = vec![None; a.num_states()];
    paths[start.0] = Some(Vec::new());
    let mut queue = VecDeque::from([start]);
    while let Some(q) = queue.pop_front() {
        for l in 0..a.num_letters() {
            for (d, t) in a.succ(q, l).into_iter().enumerate() {
                if keep(t) && paths[t.0].is_none() {
                    let mut p = paths[q.0].clone().unwrap();
                    p.push(Edge { source: q, letter: l, dir: d, target: t });
                    paths[t.0] = Some(p);
                    queue.push_back(t);
                }
            }
        }
    }
    paths
}

/// Shortest paths from every state to `goal` through states allowed by `keep`.
fn bfs_reverse(a: &DetAutomaton, goal: StateId, keep: impl Fn(StateId) -> bool) -> Vec<Option<Vec<Edge>>> {
    let mut preds: Vec<Vec<Edge>> = vec![Vec::new(); a.num_states()];
    for e in a.edges() {
        if keep(e.source) && keep(e.target) {
            preds[e.target.0].push(e);
        }
    }
    let mut paths: Vec<Option<Vec<Edge>>> = vec![None; a.num_states()];
    paths[goal.0] = Some(Vec::new());
    let mut queue = VecDeque::from([goal]);
    while let Some(q) = queue.pop_front() {
        for &e in &preds[q.0] {
            if paths[e.source.0].is_none() {
                let mut p = vec![e];
                p.extend(paths[q.0].clone().unwrap());
                paths[e.source.0] = Some(p);
                queue.push_back(e.source);
            }
        }
    }
    paths
}

/// `result[q]` holds every `r` such that some loop through `q` has top rank
/// exactly `r`.
pub fn loop_ranks(a: &DetAutomaton) -> Vec<BTreeSet<Rank>> {
    PatternAnalysis::new(a).loop_ranks
}

pub fn find_flower(a: &DetAutomaton, i: IndexPair) -> Option<FlowerWitness> {
    PatternAnalysis::new(a).find_flower(i)
}

pub fn find_weak_flower(a: &DetAutomaton, i: IndexPair) -> Option<FlowerWitness> {
    PatternAnalysis::new(a).find_weak_flower(i)
}

pub fn find_split(a: &DetAutomaton) -> Option<SplitWitness> {
    PatternAnalysis::new(a).find_split()
}

/// Productive states replicated by an accepting loop; the all-rejecting
/// sink is left out.
pub fn replicated_by_accepting(a: &DetAutomaton) -> BTreeSet<StateId> {
    PatternAnalysis::new(a).replicated_states()
}

pub fn find_replicated_flower(a: &DetAutomaton, i: IndexPair, weak: bool) -> Option<Witness> {
    PatternAnalysis::new(a).find_replicated_flower(i, weak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn set(xs: &[Rank]) -> BTreeSet<Rank> {
        xs.iter().copied().collect()
    }

    fn id(a: &DetAutomaton, name: &str) -> StateId {
        a.state_by_name(name).unwrap()
    }

    #[test]
    fn loop_ranks_on_catalog() {
        let a = catalog::all_a();
        assert_eq!(loop_ranks(&a), vec![set(&[0]), set(&[1])]);
        let a = catalog::inf_b_left();
        let lr = loop_ranks(&a);
        assert_eq!(lr[id(&a, "q1").0], set(&[1, 2]));
        assert_eq!(lr[id(&a, "q2").0], set(&[2]));
        assert_eq!(lr[id(&a, "T").0], set(&[0]));
        let a = catalog::fin_b_left();
        assert_eq!(loop_ranks(&a)[id(&a, "s0").0], set(&[0, 1]));
    }

    #[test]
    fn flowers_on_catalog() {
        let a = catalog::inf_b_left();
        let w = find_flower(&a, IndexPair::odd(2)).unwrap();
        assert_eq!(w.pivot, Some(id(&a, "q1")));
        assert!(w.is_valid(&a));
        assert!(find_flower(&a, IndexPair::even(1)).is_none());
        assert!(find_flower(&catalog::all_a(), IndexPair::even(1)).is_none());
    }

    #[test]
    fn weak_flowers_on_catalog() {
        let a = catalog::all_a();
        let w = find_weak_flower(&a, IndexPair::even(1)).unwrap();
        assert!(w.is_valid(&a));
        assert_eq!(w.loops[0].start(), id(&a, "p"));
        assert_eq!(w.loops[1].start(), id(&a, "_bot"));
        assert!(find_weak_flower(&a, IndexPair::odd(2)).is_none());
        let b = catalog::inf_b_left();
        let w = find_weak_flower(&b, IndexPair::even(3)).unwrap();
        assert!(w.is_valid(&b));
    }

    #[test]
    fn splits_on_catalog() {
        let a = catalog::split_min();
        let w = find_split(&a).unwrap();
        assert!(w.is_valid(&a));
        assert_eq!((w.state, w.letter), (id(&a, "p"), 0));
        assert!(find_split(&catalog::all_a()).is_none());
        assert!(find_split(&catalog::inf_b_left()).is_none());
    }

    #[test]
    fn replication_on_catalog() {
        let a = catalog::all_a();
        assert_eq!(replicated_by_accepting(&a), BTreeSet::from([id(&a, "p")]));
        let w = PatternAnalysis::new(&a).replication_witness(id(&a, "p")).unwrap();
        assert!(w.is_valid(&a));
        let b = catalog::fin_b_left();
        assert_eq!(replicated_by_accepting(&b), BTreeSet::from([id(&b, "T")]));
        let c = catalog::spine_fin_b();
        let r = replicated_by_accepting(&c);
        assert!(r.contains(&id(&c, "s0")) && r.contains(&id(&c, "s1")));
    }

    #[test]
    fn replicated_flowers_on_catalog() {
        let c = catalog::spine_fin_b();
        let w = find_replicated_flower(&c, IndexPair::even(1), false).unwrap();
        assert!(w.is_valid(&c));
        assert!(find_replicated_flower(&catalog::fin_b_left(), IndexPair::even(1), false).is_none());
        assert!(find_replicated_flower(&catalog::all_a(), IndexPair::odd(2), true).is_none());
    }

    #[test]
    fn rendering_uses_names() {
        let a = catalog::all_a();
        let w = Witness::Flower(find_weak_flower(&a, IndexPair::even(1)).unwrap());
        let text = w.render(&a);
        assert!(text.starts_with("weak (0,1)-flower"));
        assert!(text.contains("p -a,0-> p"));
    }
}
