//! Graphviz export.

use std::fmt::Write;

use crate::automaton::{Mode, TreeAutomaton};
use crate::tree::RegularTree;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per state (diamond for existential, box for universal), one
/// edge per transition labelled `letter,direction`; epsilon edges dashed.
pub fn automaton_to_dot(a: &TreeAutomaton) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n");
    for s in a.states() {
        let shape = match s.mode {
            Mode::Existential => "diamond",
            Mode::Universal => "box",
        };
        let label = format!("{}:{}", s.name, s.rank);
        writeln!(out, "  {} [shape={shape}, label={}];", quote(&s.name), quote(&label)).unwrap();
    }
    writeln!(out, "  __start -> {};", quote(&a.state(a.initial()).name)).unwrap();
    let mut edges: Vec<_> = a.transitions().to_vec();
    edges.sort_by_key(|t| (t.source, t.letter, t.direction.symbol(), t.target));
    edges.dedup();
    for t in edges {
        let label = format!("{},{}", a.alphabet()[t.letter], t.direction.symbol());
        let style = if t.direction.child().is_none() { ", style=dashed" } else { "" };
        writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            quote(&a.state(t.source).name),
            quote(&a.state(t.target).name),
            quote(&label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// One node per tree node labelled with its letter, edges labelled with
/// the child slot; the root is drawn doubled.
pub fn tree_to_dot(t: &RegularTree) -> String {
    let mut out = String::from("digraph tree {\n");
    for (i, n) in t.nodes().iter().enumerate() {
        let peripheries = if i == t.root().0 { ", peripheries=2" } else { "" };
        writeln!(out, "  {} [label={}{peripheries}];", quote(&n.name), quote(&n.label)).unwrap();
    }
    for n in t.nodes() {
        for (k, c) in n.children.iter().enumerate() {
            writeln!(out, "  {} -> {} [label=\"{k}\"];", quote(&n.name), quote(&t.node(*c).name)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

pub trait ToDot {
    fn to_dot(&self) -> String;
}

impl ToDot for TreeAutomaton {
    fn to_dot(&self) -> String {
        automaton_to_dot(self)
    }
}

impl ToDot for RegularTree {
    fn to_dot(&self) -> String {
        tree_to_dot(self)
    }
}

pub fn to_dot(x: &impl ToDot) -> String {
    x.to_dot()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::format::parse_regular_tree;

    #[test]
    fn all_a_has_two_state_nodes() {
        let dot = to_dot(&catalog::all_a().to_tree());
        assert_eq!(dot.matches("shape=box").count(), 2);
        assert!(dot.contains("\"p\" -> \"_bot\" [label=\"b,0\"]"));
        assert!(dot.contains("label=\"p:0\""));
    }

    #[test]
    fn epsilon_edges_are_dashed() {
        let a = crate::transform::weaken_02(&crate::classify::det_index(&catalog::inf_b_left()).1).unwrap();
        let dot = to_dot(&a);
        assert!(dot.lines().filter(|l| l.contains(",e\"")).all(|l| l.contains("dashed")));
        assert!(dot.contains("dashed"));
    }

    #[test]
    fn tree_export() {
        let t = parse_regular_tree("arity 2\nroot n\nnode n a n m\nnode m b m m\n").unwrap();
        let dot = to_dot(&t);
        assert!(dot.contains("\"n\" [label=\"a\", peripheries=2]"));
        assert!(dot.contains("\"n\" -> \"m\" [label=\"1\"]"));
        assert_eq!(dot, to_dot(&t));
    }
}
