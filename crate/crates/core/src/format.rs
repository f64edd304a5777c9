//! Line-oriented text formats for automata, regular trees and games.
//!
//! ```text
//! # automaton
//! alphabet a b
//! start p
//! state p mode A rank 0
//! trans p a 0 p
//! acceptance parity
//! deterministic
//! ```
//!
//! Regular trees use `arity N`, `root id` and `node id label child…`;
//! games use `pos id E|A rank`, `edge id id`, `init id` and
//! `condition parity|weak`. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::{
    Acceptance, DetAutomaton, Direction, Mode, State, StateId, Transition, TreeAutomaton,
};
use crate::error::{Error, Result};
use crate::game::{Condition, Game, Player, PosId};
use crate::tree::{Node, NodeId, RegularTree};

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, what: &str) -> Result<()> {
    if slot.is_some() {
        return Err(Error::syntax(line, format!("`{what}` given twice")));
    }
    *slot = Some(value);
    Ok(())
}

fn number(word: &str, line: usize) -> Result<u32> {
    word.parse().map_err(|_| Error::syntax(line, format!("expected a number, found `{word}`")))
}

pub fn parse_automaton(text: &str) -> Result<TreeAutomaton> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut start: Option<(usize, String)> = None;
    let mut acceptance: Option<Acceptance> = None;
    let mut deterministic = false;
    let mut states: Vec<(usize, State)> = Vec::new();
    let mut trans: Vec<(usize, [&str; 4])> = Vec::new();

    for (ln, words) in lines(text) {
        match words[0] {
            "alphabet" => {
                let letters = words[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>();
                if letters.is_empty() {
                    return Err(Error::syntax(ln, "empty alphabet"));
                }
                set_once(&mut alphabet, letters, ln, "alphabet")?;
            }
            "start" => {
                let [_, q] = words[..] else {
                    return Err(Error::syntax(ln, "expected `start <state>`"));
                };
                set_once(&mut start, (ln, q.to_string()), ln, "start")?;
            }
            "state" => {
                let ["state", name, "mode", mode, "rank", rank] = words[..] else {
                    return Err(Error::syntax(ln, "expected `state <id> mode <E|A> rank <n>`"));
                };
                let mode = match mode {
                    "E" => Mode::Existential,
                    "A" => Mode::Universal,
                    other => return Err(Error::syntax(ln, format!("unknown mode `{other}`"))),
                };
                states.push((ln, State { name: name.to_string(), mode, rank: number(rank, ln)? }));
            }
            "trans" => {
                let [_, p, sym, d, q] = words[..] else {
                    return Err(Error::syntax(ln, "expected `trans <id> <sym> <0|1|e> <id>`"));
                };
                trans.push((ln, [p, sym, d, q]));
            }
            "acceptance" => {
                let acc = match words.get(1..) {
                    Some(["parity"]) => Acceptance::Parity,
                    Some(["weak"]) => Acceptance::Weak,
                    _ => return Err(Error::syntax(ln, "expected `acceptance parity|weak`")),
                };
                set_once(&mut acceptance, acc, ln, "acceptance")?;
            }
            "deterministic" => {
                if words.len() != 1 {
                    return Err(Error::syntax(ln, "`deterministic` takes no arguments"));
                }
                deterministic = true;
            }
            other => return Err(Error::syntax(ln, format!("unknown keyword `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let alphabet = alphabet.ok_or_else(|| Error::syntax(last, "missing `alphabet` section"))?;
    let (start_line, start) = start.ok_or_else(|| Error::syntax(last, "missing `start` section"))?;
    let acceptance = acceptance.ok_or_else(|| Error::syntax(last, "missing `acceptance` section"))?;

    let mut ids = HashMap::new();
    for (i, (ln, s)) in states.iter().enumerate() {
        if ids.insert(s.name.clone(), StateId(i)).is_some() {
            return Err(Error::semantic_at(*ln, format!("state `{}` declared twice", s.name)));
        }
    }
    let letters: HashMap<&str, usize> =
        alphabet.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let lookup = |name: &str, ln: usize| {
        ids.get(name).copied().ok_or_else(|| Error::semantic_at(ln, format!("unknown state `{name}`")))
    };
    let initial = lookup(&start, start_line)?;
    let mut transitions = Vec::with_capacity(trans.len());
    for (ln, [p, sym, d, q]) in trans {
        let direction = match d {
            "0" => Direction::Left,
            "1" => Direction::Right,
            "e" => Direction::Epsilon,
            other => return Err(Error::syntax(ln, format!("unknown direction `{other}`"))),
        };
        let letter = *letters
            .get(sym)
            .ok_or_else(|| Error::semantic_at(ln, format!("unknown letter `{sym}`")))?;
        transitions.push(Transition { source: lookup(p, ln)?, letter, direction, target: lookup(q, ln)? });
    }
    let automaton = TreeAutomaton::new(
        alphabet,
        states.into_iter().map(|(_, s)| s).collect(),
        initial,
        transitions,
        acceptance,
    )?;
    if deterministic {
        DetAutomaton::try_from(&automaton)?;
    }
    Ok(automaton)
}

/// Parses and insists on the deterministic shape.
pub fn parse_det_automaton(text: &str) -> Result<DetAutomaton> {
    DetAutomaton::try_from(&parse_automaton(text)?)
}

/// Canonical text: states sorted by name, transitions sorted by
/// (source, letter, direction, target).
pub fn serialize_automaton(a: &TreeAutomaton) -> String {
    serialize_automaton_with_comments(a, &[])
}

pub fn serialize_automaton_with_comments(a: &TreeAutomaton, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "alphabet {}", a.alphabet().join(" "));
    let acc = match a.acceptance() {
        Acceptance::Parity => "parity",
        Acceptance::Weak => "weak",
    };
    let _ = writeln!(out, "acceptance {acc}");
    if a.is_deterministic_shape() {
        let _ = writeln!(out, "deterministic");
    }
    let _ = writeln!(out, "start {}", a.state(a.initial()).name);
    let mut states: Vec<&State> = a.states().iter().collect();
    states.sort_by(|x, y| x.name.cmp(&y.name));
    for s in states {
        let mode = match s.mode {
            Mode::Existential => "E",
            Mode::Universal => "A",
        };
        let _ = writeln!(out, "state {} mode {mode} rank {}", s.name, s.rank);
    }
    let mut trans: Vec<[&str; 4]> = a
        .transitions()
        .iter()
        .map(|t| {
            [
                a.state(t.source).name.as_str(),
                a.alphabet()[t.letter].as_str(),
                t.direction.symbol(),
                a.state(t.target).name.as_str(),
            ]
        })
        .collect();
    trans.sort();
    trans.dedup();
    for [p, sym, d, q] in trans {
        let _ = writeln!(out, "trans {p} {sym} {d} {q}");
    }
    out
}

pub fn serialize_det_automaton(a: &DetAutomaton) -> String {
    serialize_automaton(&a.to_tree())
}

pub fn parse_regular_tree(text: &str) -> Result<RegularTree> {
    let mut arity: Option<usize> = None;
    let mut root: Option<(usize, String)> = None;
    let mut raw: Vec<(usize, Vec<&str>)> = Vec::new();
    for (ln, words) in lines(text) {
        match words[0] {
            "arity" => {
                let [_, n] = words[..] else {
                    return Err(Error::syntax(ln, "expected `arity <N>`"));
                };
                set_once(&mut arity, number(n, ln)? as usize, ln, "arity")?;
            }
            "root" => {
                let [_, r] = words[..] else {
                    return Err(Error::syntax(ln, "expected `root <id>`"));
                };
                set_once(&mut root, (ln, r.to_string()), ln, "root")?;
            }
            "node" => {
                if words.len() < 3 {
                    return Err(Error::syntax(ln, "expected `node <id> <label> <child>…`"));
                }
                raw.push((ln, words));
            }
            other => return Err(Error::syntax(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let arity = arity.ok_or_else(|| Error::syntax(last, "missing `arity` section"))?;
    let (root_line, root) = root.ok_or_else(|| Error::syntax(last, "missing `root` section"))?;
    let mut ids = HashMap::new();
    for (i, (ln, words)) in raw.iter().enumerate() {
        if ids.insert(words[1], NodeId(i)).is_some() {
            return Err(Error::semantic_at(*ln, format!("node `{}` declared twice", words[1])));
        }
    }
    let mut nodes = Vec::with_capacity(raw.len());
    for (ln, words) in &raw {
        let children = &words[3..];
        if children.len() != arity {
            return Err(Error::semantic_at(
                *ln,
                format!("node `{}` has {} children, arity is {arity}", words[1], children.len()),
            ));
        }
        let children = children
            .iter()
            .map(|c| {
                ids.get(c)
                    .copied()
                    .ok_or_else(|| Error::semantic_at(*ln, format!("undeclared node `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        nodes.push(Node { name: words[1].to_string(), label: words[2].to_string(), children });
    }
    let root = *ids
        .get(root.as_str())
        .ok_or_else(|| Error::semantic_at(root_line, format!("undeclared root `{root}`")))?;
    RegularTree::new(arity, nodes, root)
}

/// Root first, then the remaining nodes in storage order.
pub fn serialize_regular_tree(t: &RegularTree) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "arity {}", t.arity());
    let _ = writeln!(out, "root {}", t.node(t.root()).name);
    let order = std::iter::once(t.root().0).chain((0..t.len()).filter(|&i| i != t.root().0));
    for i in order {
        let n = &t.nodes()[i];
        let children: Vec<&str> = n.children.iter().map(|c| t.node(*c).name.as_str()).collect();
        let _ = writeln!(out, "node {} {} {}", n.name, n.label, children.join(" "));
    }
    out
}

pub fn parse_game(text: &str) -> Result<Game> {
    let mut positions: Vec<(String, Player, u32)> = Vec::new();
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    let mut init: Option<(usize, String)> = None;
    let mut condition: Option<Condition> = None;
    for (ln, words) in lines(text) {
        match words[..] {
            ["pos", id, owner, rank] => {
                let owner = match owner {
                    "E" => Player::Eve,
                    "A" => Player::Adam,
                    other => return Err(Error::syntax(ln, format!("unknown owner `{other}`"))),
                };
                positions.push((id.to_string(), owner, number(rank, ln)?));
            }
            ["edge", from, to] => edges.push((ln, from.to_string(), to.to_string())),
            ["init", id] => set_once(&mut init, (ln, id.to_string()), ln, "init")?,
            ["condition", "parity"] => set_once(&mut condition, Condition::Parity, ln, "condition")?,
            ["condition", "weak"] => set_once(&mut condition, Condition::Weak, ln, "condition")?,
            _ => return Err(Error::syntax(ln, format!("cannot parse `{}`", words.join(" ")))),
        }
    }
    let last = text.lines().count().max(1);
    let (init_line, init) = init.ok_or_else(|| Error::syntax(last, "missing `init` section"))?;
    let condition = condition.ok_or_else(|| Error::syntax(last, "missing `condition` section"))?;
    let mut ids = HashMap::new();
    for (i, (name, _, _)) in positions.iter().enumerate() {
        if ids.insert(name.clone(), PosId(i)).is_some() {
            return Err(Error::semantic(format!("position `{name}` declared twice")));
        }
    }
    let lookup = |name: &str, ln: usize| {
        ids.get(name).copied().ok_or_else(|| Error::semantic_at(ln, format!("unknown position `{name}`")))
    };
    let mut game = Game::new(condition);
    for (_, owner, rank) in &positions {
        game.add_position(*owner, *rank);
    }
    for (ln, from, to) in &edges {
        game.add_edge(lookup(from, *ln)?, lookup(to, *ln)?);
    }
    game.set_initial(lookup(&init, init_line)?);
    Ok(game)
}
