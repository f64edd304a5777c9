//! Emptiness, productive states, and the normal form in which every state
//! except one all-rejecting sink is used by some accepting run.

use crate::automaton::{DetAutomaton, StateId, BOT};
use crate::error::{Error, Result};
use crate::game::{solve_parity, Condition, Game, Player, PosId};
use crate::graph::{reachable, Sccs};

/// Eve picks the letter at each node, Adam picks the direction.
pub fn emptiness_game(a: &DetAutomaton) -> Game {
    let n = a.num_states();
    let letters = a.num_letters();
    let mut g = Game::new(Condition::Parity);
    for q in a.states() {
        g.add_position(Player::Eve, a.rank(q));
    }
    for _ in 0..n * letters {
        g.add_position(Player::Adam, 0);
    }
    for q in a.states() {
        for l in 0..letters {
            let choice = PosId(n + q.0 * letters + l);
            g.add_edge(PosId(q.0), choice);
            for t in a.succ(q, l) {
                g.add_edge(choice, PosId(t.0));
            }
        }
    }
    g.set_initial(PosId(a.initial().0));
    g
}

/// `result[q]` iff some tree is accepted from `q`.
pub fn nonempty_states(a: &DetAutomaton) -> Vec<bool> {
    let sol = solve_parity(&emptiness_game(a));
    a.states().map(|q| sol.winner(PosId(q.0)) == Player::Eve).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductivityInfo {
    pub nonempty: Vec<bool>,
    pub productive: Vec<bool>,
}

impl ProductivityInfo {
    pub fn nonempty_set(&self) -> Vec<StateId> {
        collect(&self.nonempty)
    }

    pub fn productive_set(&self) -> Vec<StateId> {
        collect(&self.productive)
    }
}

fn collect(mask: &[bool]) -> Vec<StateId> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| StateId(i)).collect()
}

/// Least fixpoint: the initial state if non-empty, then both targets of any
/// transition from a productive state whose targets are both non-empty.
pub fn productive_states(a: &DetAutomaton) -> ProductivityInfo {
    let nonempty = nonempty_states(a);
    let productive = productive_from(a, &nonempty);
    ProductivityInfo { nonempty, productive }
}

fn productive_from(a: &DetAutomaton, nonempty: &[bool]) -> Vec<bool> {
    let n = a.num_states();
    if !nonempty[a.initial().0] {
        return vec![false; n];
    }
    reachable(
        n,
        [a.initial().0],
        |q| {
            (0..a.num_letters())
                .map(move |l| a.succ(StateId(q), l))
                .filter(|[x, y]| nonempty[x.0] && nonempty[y.0])
                .flat_map(|[x, y]| [x.0, y.0])
        },
        |_| true,
    )
}

/// Merges every non-productive state into `_bot` (rank 1, self-loops) and
/// sends every transition with an empty child to `_bot` on both sides.
pub fn trim(a: &DetAutomaton) -> Result<DetAutomaton> {
    trim_with(a, &productive_states(a))
}

pub fn trim_with(a: &DetAutomaton, info: &ProductivityInfo) -> Result<DetAutomaton> {
    if !info.nonempty[a.initial().0] {
        return Err(Error::EmptyLanguage);
    }
    let keep: Vec<StateId> = info.productive_set();
    if let Some(q) = keep.iter().find(|q| a.name(**q) == BOT) {
        return Err(Error::semantic(format!("productive state uses the reserved name `{}`", a.name(*q))));
    }
    let mut remap = vec![None; a.num_states()];
    for (i, q) in keep.iter().enumerate() {
        remap[q.0] = Some(StateId(i));
    }
    let bot = StateId(keep.len());
    let mut uses_bot = false;
    let mut table = Vec::with_capacity(keep.len() + 1);
    for &q in &keep {
        let row = (0..a.num_letters())
            .map(|l| match a.succ(q, l).map(|t| remap[t.0]) {
                [Some(x), Some(y)] => [x, y],
                _ => {
                    uses_bot = true;
                    [bot, bot]
                }
            })
            .collect::<Vec<_>>();
        table.push(row);
    }
    let mut states: Vec<(String, u32)> = keep.iter().map(|&q| (a.name(q).to_string(), a.rank(q))).collect();
    if uses_bot {
        states.push((BOT.to_string(), 1));
        table.push(vec![[bot, bot]; a.num_letters()]);
    }
    DetAutomaton::new(a.alphabet().to_vec(), states, remap[a.initial().0].expect("the initial state is productive"), table)
}

/// Trimmed automata: every transition has two productive targets, or sends
/// both children to `_bot`.
pub fn is_trimmed(a: &DetAutomaton) -> bool {
    let info = productive_states(a);
    let sink = a.sink();
    a.states().all(|q| {
        if Some(q) == sink {
            return !info.nonempty[q.0] && (0..a.num_letters()).all(|l| a.succ(q, l) == [q, q]);
        }
        info.productive[q.0]
            && (0..a.num_letters()).all(|l| {
                let [x, y] = a.succ(q, l);
                (info.productive[x.0] && info.productive[y.0]) || (Some(x) == sink && x == y)
            })
    })
}

pub fn is_empty(a: &DetAutomaton) -> bool {
    !nonempty_states(a)[a.initial().0]
}

/// Adam picks letters and directions and cannot reach a cycle whose top
/// rank is odd.
pub fn is_universal(a: &DetAutomaton) -> bool {
    let n = a.num_states();
    let succ = |q: usize| a.successors(StateId(q)).into_iter().map(|s| s.0);
    let live = reachable(n, [a.initial().0], succ, |_| true);
    let mut odd_ranks: Vec<u32> =
        a.states().filter(|q| live[q.0]).map(|q| a.rank(q)).filter(|r| r % 2 == 1).collect();
    odd_ranks.sort_unstable();
    odd_ranks.dedup();
    !odd_ranks.into_iter().any(|r| {
        let keep = |q: usize| live[q] && a.rank(StateId(q)) <= r;
        let sccs = Sccs::new(n, succ, keep);
        (0..sccs.len()).any(|c| {
            sccs.cyclic[c] && sccs.members[c].iter().any(|&q| a.rank(StateId(q)) == r)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn all_a_productivity() {
        let a = catalog::all_a();
        let info = productive_states(&a);
        assert_eq!(info.nonempty, vec![true, false]);
        assert_eq!(info.productive, vec![true, false]);
        assert_eq!(trim(&a).unwrap(), a);
        assert!(is_trimmed(&a));
        assert!(!is_empty(&a));
        assert!(!is_universal(&a));
    }

    #[test]
    fn odd_cycles_only_means_empty() {
        let a = DetAutomaton::from_spec(
            &["a"],
            &[("p", 1), ("q", 3)],
            "p",
            &[("p", "a", "q", "p"), ("q", "a", "p", "q")],
        )
        .unwrap();
        assert!(nonempty_states(&a).iter().all(|&x| !x));
        assert!(is_empty(&a));
        assert!(matches!(trim(&a), Err(Error::EmptyLanguage)));
        assert_eq!(productive_states(&a).productive, vec![false, false]);
    }

    #[test]
    fn one_state_cases() {
        let acc = DetAutomaton::from_spec(&["a"], &[("q", 0)], "q", &[("q", "a", "q", "q")]).unwrap();
        assert!(is_universal(&acc) && !is_empty(&acc));
        let rej = DetAutomaton::from_spec(&["a"], &[("q", 1)], "q", &[("q", "a", "q", "q")]).unwrap();
        assert!(is_empty(&rej) && !is_universal(&rej));
    }

    #[test]
    fn distinct_sinks_merge() {
        let a = DetAutomaton::from_spec(
            &["a", "b", "c"],
            &[("p", 0), ("s1", 1), ("s2", 3)],
            "p",
            &[
                ("p", "a", "p", "p"),
                ("p", "b", "s1", "p"),
                ("p", "c", "p", "s2"),
                ("s1", "a", "s1", "s1"),
                ("s1", "b", "s1", "s1"),
                ("s1", "c", "s1", "s1"),
                ("s2", "a", "s2", "s2"),
                ("s2", "b", "s2", "s2"),
                ("s2", "c", "s2", "s2"),
            ],
        )
        .unwrap();
        let t = trim(&a).unwrap();
        assert_eq!(t.num_states(), 2);
        let bot = t.sink().unwrap();
        assert_eq!(t.rank(bot), 1);
        assert_eq!(t.succ(StateId(0), 1), [bot, bot]);
        assert_eq!(t.succ(StateId(0), 2), [bot, bot]);
        assert!(is_trimmed(&t));
        assert_eq!(trim(&t).unwrap(), t);
    }

    #[test]
    fn empty_sibling_blocks_productivity() {
        // p on a goes to (q, dead): q is non-empty but never productive.
        let a = DetAutomaton::from_spec(
            &["a", "b"],
            &[("p", 0), ("q", 0), ("dead", 1)],
            "p",
            &[
                ("p", "a", "q", "dead"),
                ("p", "b", "p", "p"),
                ("q", "a", "q", "q"),
                ("q", "b", "q", "q"),
                ("dead", "a", "dead", "dead"),
                ("dead", "b", "dead", "dead"),
            ],
        )
        .unwrap();
        let info = productive_states(&a);
        assert_eq!(info.nonempty, vec![true, true, false]);
        assert_eq!(info.productive, vec![true, false, false]);
    }
}
