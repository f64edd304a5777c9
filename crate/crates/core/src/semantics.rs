//! Membership of regular trees, the reduction of weak automata to weak game
//! trees, the Skurczyński languages, tree sampling and bounded equivalence.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::automaton::{Acceptance, DetAutomaton, Direction, Mode, Rank, State, StateId, Transition, TreeAutomaton};
use crate::error::{Error, Result};
use crate::game::{solve, solve_parity, solve_weak, Condition, Game, Player, PosId};
use crate::index::{even_shift, IndexPair};
use crate::tree::{Node, NodeId, RegularTree, WTreeLabel};

/// The acceptance game of an automaton on a regular tree, restricted to
/// positions reachable from `(initial, root)`.
#[derive(Clone, Debug)]
pub struct ProductGame {
    pub game: Game,
    pub positions: Vec<(StateId, NodeId)>,
}

fn letter_map(alphabet: &[String], t: &RegularTree) -> Result<Vec<usize>> {
    t.nodes()
        .iter()
        .map(|n| {
            alphabet.iter().position(|l| *l == n.label).ok_or_else(|| Error::LabelOutsideAlphabet(n.label.clone()))
        })
        .collect()
}

fn check_binary(t: &RegularTree) -> Result<()> {
    if t.arity() != 2 {
        return Err(Error::semantic(format!("input trees are binary, got arity {}", t.arity())));
    }
    Ok(())
}

/// Explores `(state, node)` pairs breadth-first; `moves` lists successor
/// pairs of a pair.
fn explore(
    start: (StateId, NodeId),
    mut moves: impl FnMut((StateId, NodeId)) -> Vec<(StateId, NodeId)>,
) -> (Vec<(StateId, NodeId)>, Vec<Vec<usize>>) {
    let mut ids: HashMap<(StateId, NodeId), usize> = HashMap::from([(start, 0)]);
    let mut positions = vec![start];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < positions.len() {
        let mut out = Vec::new();
        for m in moves(positions[i]) {
            let id = *ids.entry(m).or_insert_with(|| {
                positions.push(m);
                positions.len() - 1
            });
            out.push(id);
        }
        edges.push(out);
        i += 1;
    }
    (positions, edges)
}

pub fn product_game(a: &TreeAutomaton, t: &RegularTree) -> Result<ProductGame> {
    check_binary(t)?;
    let letters = letter_map(a.alphabet(), t)?;
    let (positions, edges) = explore((a.initial(), t.root()), |(q, v)| {
        a.moves(q, letters[v.0])
            .iter()
            .map(|&(d, q2)| match d.child() {
                Some(k) => (q2, t.child(v, k)),
                None => (q2, v),
            })
            .collect()
    });
    let condition = match a.acceptance() {
        Acceptance::Parity => Condition::Parity,
        Acceptance::Weak => Condition::Weak,
    };
    let mut game = Game::new(condition);
    for &(q, _) in &positions {
        let s = a.state(q);
        let owner = match s.mode {
            Mode::Existential => Player::Eve,
            Mode::Universal => Player::Adam,
        };
        game.add_position(owner, s.rank);
    }
    for (v, out) in edges.iter().enumerate() {
        for &w in out {
            game.add_edge(PosId(v), PosId(w));
        }
    }
    game.set_initial(PosId(0));
    Ok(ProductGame { game, positions })
}

pub fn alt_accepts(a: &TreeAutomaton, t: &RegularTree) -> Result<bool> {
    let pg = product_game(a, t)?;
    Ok(solve(&pg.game).winner(PosId(0)) == Player::Eve)
}

/// The unique run on `t` is accepting iff no reachable cycle of the run
/// graph has an odd top rank; decided as a one-player parity game.
pub fn det_accepts(a: &DetAutomaton, t: &RegularTree) -> Result<bool> {
    check_binary(t)?;
    let letters = letter_map(a.alphabet(), t)?;
    let (positions, edges) = explore((a.initial(), t.root()), |(q, v)| {
        let [l, r] = a.succ(q, letters[v.0]);
        vec![(l, t.child(v, 0)), (r, t.child(v, 1))]
    });
    let mut game = Game::new(Condition::Parity);
    for &(q, _) in &positions {
        game.add_position(Player::Adam, a.rank(q));
    }
    for (v, out) in edges.iter().enumerate() {
        for &w in out {
            game.add_edge(PosId(v), PosId(w));
        }
    }
    game.set_initial(PosId(0));
    Ok(solve_parity(&game).winner(PosId(0)) == Player::Eve)
}

/// A weak game tree together with the rank band it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WInstance {
    pub tree: RegularTree,
    pub band: IndexPair,
}

/// Folds the acceptance game of a weak automaton on `t` into a regular
/// N-ary tree labelled `owner:rank`, with ranks scaled into the automaton's
/// index. Positions with fewer than N moves repeat their last move; a dead
/// end moves to a self-looping node whose rank is the least rank at or
/// above the band top with the parity losing for the stuck owner.
pub fn run_reduction(a: &TreeAutomaton, t: &RegularTree) -> Result<WInstance> {
    if a.acceptance() != Acceptance::Weak {
        return Err(Error::semantic("run reduction needs a weak automaton"));
    }
    let pg = product_game(a, t)?;
    let g = &pg.game;
    let shift = even_shift(a.min_rank());
    let index = a.index();
    let arity = g.positions().map(|v| g.successors(v).len()).max().unwrap_or(0).max(2);
    let losing = |owner: Player| {
        let bad = match owner {
            Player::Eve => 1,
            Player::Adam => 0,
        };
        if index.kappa() % 2 == bad {
            index.kappa()
        } else {
            index.kappa() + 1
        }
    };
    let mut nodes: Vec<Node> = g
        .positions()
        .map(|v| Node {
            name: format!("v{}", v.0),
            label: WTreeLabel { owner: g.owner(v), rank: g.rank(v) - shift }.to_string(),
            children: Vec::new(),
        })
        .collect();
    let mut traps: HashMap<Rank, NodeId> = HashMap::new();
    let mut band_top = index.kappa();
    for v in g.positions() {
        let succ = g.successors(v);
        let children = if succ.is_empty() {
            let r = losing(g.owner(v));
            band_top = band_top.max(r);
            let id = *traps.entry(r).or_insert_with(|| {
                let id = NodeId(nodes.len());
                nodes.push(Node {
                    name: format!("trap{r}"),
                    label: WTreeLabel { owner: Player::Eve, rank: r }.to_string(),
                    children: vec![id; arity],
                });
                id
            });
            vec![id; arity]
        } else {
            (0..arity).map(|k| NodeId(succ[k.min(succ.len() - 1)].0)).collect()
        };
        nodes[v.0].children = children;
    }
    let band = IndexPair::new(index.iota(), band_top)?;
    Ok(WInstance { tree: RegularTree::new(arity, nodes, NodeId(0))?, band })
}

/// Eve wins the weak parity game read off the tree graph.
pub fn w_member(t: &RegularTree, band: IndexPair) -> Result<bool> {
    let labels = t.w_labels()?;
    let mut g = Game::new(Condition::Weak);
    for l in &labels {
        l.check_band(band)?;
        g.add_position(l.owner, l.rank);
    }
    for (v, n) in t.nodes().iter().enumerate() {
        for c in &n.children {
            g.add_edge(PosId(v), PosId(c.0));
        }
    }
    g.set_initial(PosId(t.root().0));
    Ok(solve_weak(&g).winner(PosId(t.root().0)) == Player::Eve)
}

/// An index `(0,n)` or `(1,n+1)` with `n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkurczynskiSpec {
    index: IndexPair,
}

impl SkurczynskiSpec {
    pub fn new(index: IndexPair) -> Result<Self> {
        let n = index.kappa() - index.iota();
        if index.iota() == 0 && n >= 1 || index.iota() == 1 && n >= 1 {
            Ok(SkurczynskiSpec { index })
        } else {
            Err(Error::semantic(format!("{index} is not of the form (0,n) or (1,n+1) with n ≥ 1")))
        }
    }

    pub fn index(self) -> IndexPair {
        self.index
    }

    /// The `n` of `(0,n)` or `(1,n+1)`.
    pub fn level(self) -> u32 {
        self.index.kappa() - self.index.iota()
    }
}

/// Weak automaton over `{a, b}` with index exactly `spec.index()`.
pub fn skurczynski(spec: SkurczynskiSpec) -> TreeAutomaton {
    let n = spec.level();
    let base = skurczynski_pi(n);
    if spec.index.iota() == 0 {
        base
    } else {
        base.dual()
    }
}

fn skurczynski_pi(n: u32) -> TreeAutomaton {
    let ab = vec!["a".to_string(), "b".to_string()];
    let tr = |source: usize, letter: usize, direction: Direction, target: usize| Transition {
        source: StateId(source),
        letter,
        direction,
        target: StateId(target),
    };
    if n == 1 {
        let states = vec![
            State { name: "c".into(), mode: Mode::Universal, rank: 0 },
            State { name: "sink".into(), mode: Mode::Universal, rank: 1 },
        ];
        let transitions = vec![
            tr(0, 0, Direction::Left, 0),
            tr(0, 0, Direction::Right, 0),
            tr(0, 1, Direction::Epsilon, 1),
            tr(1, 0, Direction::Epsilon, 1),
            tr(1, 1, Direction::Epsilon, 1),
        ];
        return TreeAutomaton::new(ab, states, StateId(0), transitions, Acceptance::Weak)
            .expect("fixture is well formed");
    }
    let sub = skurczynski_pi(n - 1).dual();
    let mut states = vec![State { name: format!("w{n}"), mode: Mode::Universal, rank: 0 }];
    states.extend(sub.states().iter().cloned());
    let mut transitions = Vec::new();
    for letter in 0..2 {
        transitions.push(tr(0, letter, Direction::Left, 0));
        transitions.push(tr(0, letter, Direction::Right, sub.initial().0 + 1));
    }
    transitions.extend(sub.transitions().iter().map(|t| Transition {
        source: StateId(t.source.0 + 1),
        target: StateId(t.target.0 + 1),
        ..*t
    }));
    TreeAutomaton::new(ab, states, StateId(0), transitions, Acceptance::Weak).expect("fixture is well formed")
}

/// Direct evaluation of the recursive definition. On a regular tree the
/// leftmost path revisits a node, so only finitely many subtrees `t.0^k1`
/// occur.
pub fn skurczynski_member_oracle(spec: SkurczynskiSpec, t: &RegularTree) -> Result<bool> {
    check_binary(t)?;
    for n in t.nodes() {
        if n.label != "a" && n.label != "b" {
            return Err(Error::LabelOutsideAlphabet(n.label.clone()));
        }
    }
    let pi = in_pi(spec.level(), t, t.root());
    Ok(if spec.index.iota() == 0 { pi } else { !pi })
}

fn in_pi(n: u32, t: &RegularTree, v: NodeId) -> bool {
    if n == 1 {
        let mut seen = vec![false; t.len()];
        let mut queue = VecDeque::from([v]);
        seen[v.0] = true;
        while let Some(u) = queue.pop_front() {
            if t.label(u) == "b" {
                return false;
            }
            for &c in &t.node(u).children {
                if !seen[c.0] {
                    seen[c.0] = true;
                    queue.push_back(c);
                }
            }
        }
        return true;
    }
    let mut spine = vec![false; t.len()];
    let mut u = v;
    while !spine[u.0] {
        spine[u.0] = true;
        if in_pi(n - 1, t, t.child(u, 1)) {
            return false;
        }
        u = t.child(u, 0);
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerParams {
    pub seed: u64,
    pub max_nodes: usize,
    pub alphabet: Vec<String>,
    pub count: usize,
}

impl SamplerParams {
    pub fn new(seed: u64, max_nodes: usize, alphabet: &[String], count: usize) -> Result<Self> {
        if max_nodes == 0 || count == 0 || alphabet.is_empty() {
            return Err(Error::semantic("sampler needs max_nodes ≥ 1, count ≥ 1 and a letter"));
        }
        Ok(SamplerParams { seed, max_nodes, alphabet: alphabet.to_vec(), count })
    }
}

/// Binary regular trees from one splitmix64 stream: node count uniform in
/// `[1, max_nodes]`, labels and children uniform; unreachable nodes pruned.
pub fn sample_regular_trees(p: &SamplerParams) -> Vec<RegularTree> {
    let mut rng = SplitMix64::seed_from_u64(p.seed);
    (0..p.count).map(|_| sample_one(&mut rng, p)).collect()
}

fn sample_one(rng: &mut SplitMix64, p: &SamplerParams) -> RegularTree {
    let k = rng.random_range(1..=p.max_nodes as u64);
    let letters = p.alphabet.len() as u64;
    let nodes = (0..k)
        .map(|i| {
            let label = p.alphabet[rng.random_range(0..letters) as usize].clone();
            let children = (0..2).map(|_| NodeId(rng.random_range(0..k) as usize)).collect();
            Node { name: format!("n{i}"), label, children }
        })
        .collect();
    RegularTree::pruned(2, nodes, NodeId(0)).expect("sampled trees are well formed")
}

/// Fixed trees probing every letter: constant trees, and each constant tree
/// with one other letter planted at the root, at the root's left or right
/// child, or periodically along the leftmost path.
pub fn battery(alphabet: &[String]) -> Vec<RegularTree> {
    let mut out: Vec<RegularTree> = alphabet.iter().map(|x| RegularTree::constant(2, x)).collect();
    let node = |name: &str, label: &str, children: [usize; 2]| Node {
        name: name.into(),
        label: label.into(),
        children: children.iter().map(|&c| NodeId(c)).collect(),
    };
    for x in alphabet {
        for y in alphabet.iter().filter(|y| *y != x) {
            // n0 = constant x
            let shapes: [Vec<Node>; 4] = [
                vec![node("n0", x, [0, 0]), node("r", y, [0, 0])],
                vec![node("n0", x, [0, 0]), node("m", y, [0, 0]), node("r", x, [1, 0])],
                vec![node("n0", x, [0, 0]), node("m", y, [0, 0]), node("r", x, [0, 1])],
                vec![node("n0", x, [0, 0]), node("m", y, [2, 0]), node("r", x, [1, 0])],
            ];
            for nodes in shapes {
                let root = NodeId(nodes.len() - 1);
                out.push(RegularTree::pruned(2, nodes, root).expect("battery trees are well formed"));
            }
        }
    }
    out
}

/// Anything with a membership test on binary regular trees.
pub trait Acceptor {
    fn alphabet(&self) -> &[String];
    fn accepts(&self, t: &RegularTree) -> Result<bool>;
}

impl Acceptor for DetAutomaton {
    fn alphabet(&self) -> &[String] {
        DetAutomaton::alphabet(self)
    }

    fn accepts(&self, t: &RegularTree) -> Result<bool> {
        det_accepts(self, t)
    }
}

impl Acceptor for TreeAutomaton {
    fn alphabet(&self) -> &[String] {
        TreeAutomaton::alphabet(self)
    }

    fn accepts(&self, t: &RegularTree) -> Result<bool> {
        alt_accepts(self, t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivOutcome {
    Pass { checked: usize },
    Counterexample(RegularTree),
}

impl EquivOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, EquivOutcome::Pass { .. })
    }
}

/// Compares memberships on the battery and on the sampled trees (drawn over
/// the left automaton's alphabet), stopping at the first disagreement.
pub fn bounded_equiv<A: Acceptor + ?Sized, B: Acceptor + ?Sized>(
    a: &A,
    b: &B,
    p: &SamplerParams,
) -> Result<EquivOutcome> {
    let mut la = a.alphabet().to_vec();
    let mut lb = b.alphabet().to_vec();
    la.sort();
    lb.sort();
    if la != lb {
        return Err(Error::AlphabetMismatch { left: a.alphabet().to_vec(), right: b.alphabet().to_vec() });
    }
    let params = SamplerParams { alphabet: a.alphabet().to_vec(), ..p.clone() };
    let trees = battery(a.alphabet()).into_iter().chain(sample_regular_trees(&params));
    let mut checked = 0;
    for t in trees {
        if a.accepts(&t)? != b.accepts(&t)? {
            return Ok(EquivOutcome::Counterexample(t));
        }
        checked += 1;
    }
    Ok(EquivOutcome::Pass { checked })
}
