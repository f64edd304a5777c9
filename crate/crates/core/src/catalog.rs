//! Small named deterministic automata over `{a, b}` used as fixtures.

use crate::automaton::DetAutomaton;

pub const NAMES: [&str; 7] =
    ["all_a", "ex_b_left", "inf_b_left", "fin_b_left", "split_min", "spine_fin_b", "inf_or_fin_b_left"];

const AB: [&str; 2] = ["a", "b"];

pub fn by_name(name: &str) -> Option<DetAutomaton> {
    Some(match name {
        "all_a" => all_a(),
        "ex_b_left" => ex_b_left(),
        "inf_b_left" => inf_b_left(),
        "fin_b_left" => fin_b_left(),
        "split_min" => split_min(),
        "spine_fin_b" => spine_fin_b(),
        "inf_or_fin_b_left" => inf_or_fin_b_left(),
        _ => return None,
    })
}

pub fn all() -> Vec<(&'static str, DetAutomaton)> {
    NAMES.iter().map(|n| (*n, by_name(n).unwrap())).collect()
}

fn build(states: &[(&str, u32)], initial: &str, table: &[(&str, &str, &str, &str)]) -> DetAutomaton {
    DetAutomaton::from_spec(&AB, states, initial, table).expect("catalog automata are well formed")
}

/// The tree with no `b`.
pub fn all_a() -> DetAutomaton {
    build(
        &[("p", 0), ("_bot", 1)],
        "p",
        &[
            ("p", "a", "p", "p"),
            ("p", "b", "_bot", "_bot"),
            ("_bot", "a", "_bot", "_bot"),
            ("_bot", "b", "_bot", "_bot"),
        ],
    )
}

/// Some `b` on the leftmost path.
pub fn ex_b_left() -> DetAutomaton {
    build(
        &[("p", 1), ("T", 0)],
        "p",
        &[("p", "a", "p", "T"), ("p", "b", "T", "T"), ("T", "a", "T", "T"), ("T", "b", "T", "T")],
    )
}

/// Infinitely many `b` on the leftmost path.
pub fn inf_b_left() -> DetAutomaton {
    build(
        &[("q1", 1), ("q2", 2), ("T", 0)],
        "q1",
        &[
            ("q1", "a", "q1", "T"),
            ("q1", "b", "q2", "T"),
            ("q2", "a", "q1", "T"),
            ("q2", "b", "q2", "T"),
            ("T", "a", "T", "T"),
            ("T", "b", "T", "T"),
        ],
    )
}

/// Finitely many `b` on the leftmost path.
pub fn fin_b_left() -> DetAutomaton {
    build(
        &[("s0", 0), ("s1", 1), ("T", 0)],
        "s0",
        &[
            ("s0", "a", "s0", "T"),
            ("s0", "b", "s1", "T"),
            ("s1", "a", "s0", "T"),
            ("s1", "b", "s1", "T"),
            ("T", "a", "T", "T"),
            ("T", "b", "T", "T"),
        ],
    )
}

/// On `a`, `p` sends its left child through a rank-3 state and its right
/// child through a rank-2 state, both straight back to `p`.
pub fn split_min() -> DetAutomaton {
    build(
        &[("p", 1), ("o", 3), ("e", 2), ("T", 0)],
        "p",
        &[
            ("p", "a", "o", "e"),
            ("p", "b", "T", "T"),
            ("o", "a", "p", "p"),
            ("o", "b", "p", "p"),
            ("e", "a", "p", "p"),
            ("e", "b", "p", "p"),
            ("T", "a", "T", "T"),
            ("T", "b", "T", "T"),
        ],
    )
}

/// Every right child of the leftmost path is in the language of
/// [`fin_b_left`].
pub fn spine_fin_b() -> DetAutomaton {
    build(
        &[("s", 0), ("s0", 0), ("s1", 1), ("T", 0)],
        "s",
        &[
            ("s", "a", "s", "s0"),
            ("s", "b", "s", "s0"),
            ("s0", "a", "s0", "T"),
            ("s0", "b", "s1", "T"),
            ("s1", "a", "s0", "T"),
            ("s1", "b", "s1", "T"),
            ("T", "a", "T", "T"),
            ("T", "b", "T", "T"),
        ],
    )
}

/// The root label picks the condition on the leftmost path below the
/// left child: infinitely many `b` after an `a`, finitely many after a `b`.
pub fn inf_or_fin_b_left() -> DetAutomaton {
    build(
        &[("r", 1), ("q1", 1), ("q2", 2), ("s0", 0), ("s1", 1), ("T", 0)],
        "r",
        &[
            ("r", "a", "q1", "T"),
            ("r", "b", "s0", "T"),
            ("q1", "a", "q1", "T"),
            ("q1", "b", "q2", "T"),
            ("q2", "a", "q1", "T"),
            ("q2", "b", "q2", "T"),
            ("s0", "a", "s0", "T"),
            ("s0", "b", "s1", "T"),
            ("s1", "a", "s0", "T"),
            ("s1", "b", "s1", "T"),
            ("T", "a", "T", "T"),
            ("T", "b", "T", "T"),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::productivity::{is_trimmed, trim};

    #[test]
    fn catalog_is_trimmed() {
        for (name, a) in all() {
            assert!(is_trimmed(&a), "{name}");
            assert_eq!(trim(&a).unwrap(), a, "{name}");
        }
        assert!(by_name("nope").is_none());
    }
}
