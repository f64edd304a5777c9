//! Regular trees: finite rooted graphs whose unravelling is an infinite
//! N-ary tree.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::{valid_name, Rank};
use crate::error::{Error, Result};
use crate::game::Player;
use crate::index::IndexPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub label: String,
    pub children: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularTree {
    arity: usize,
    nodes: Vec<Node>,
    root: NodeId,
}

impl RegularTree {
    /// Validates child references and arity, and rejects nodes unreachable
    /// from the root.
    pub fn new(arity: usize, nodes: Vec<Node>, root: NodeId) -> Result<Self> {
        let tree = RegularTree { arity, nodes, root };
        tree.validate()?;
        if let Some(unreachable) = tree.unreachable().first() {
            return Err(Error::semantic(format!(
                "node `{}` is unreachable from the root",
                tree.nodes[*unreachable].name
            )));
        }
        Ok(tree)
    }

    /// Like [`RegularTree::new`] but silently drops unreachable nodes.
    pub fn pruned(arity: usize, nodes: Vec<Node>, root: NodeId) -> Result<Self> {
        let tree = RegularTree { arity, nodes, root };
        tree.validate()?;
        Ok(tree.reroot(tree.root))
    }

    fn validate(&self) -> Result<()> {
        if self.arity < 2 {
            return Err(Error::semantic("arity must be at least 2"));
        }
        if self.root.0 >= self.nodes.len() {
            return Err(Error::semantic("root does not exist"));
        }
        let mut names = HashMap::new();
        for n in &self.nodes {
            if !valid_name(&n.name) || !valid_name(&n.label) {
                return Err(Error::semantic(format!("invalid node `{}`", n.name)));
            }
            if names.insert(n.name.as_str(), ()).is_some() {
                return Err(Error::semantic(format!("node `{}` declared twice", n.name)));
            }
            if n.children.len() != self.arity {
                return Err(Error::semantic(format!(
                    "node `{}` has {} children, arity is {}",
                    n.name,
                    n.children.len(),
                    self.arity
                )));
            }
            if n.children.iter().any(|c| c.0 >= self.nodes.len()) {
                return Err(Error::semantic(format!("node `{}` has a dangling child", n.name)));
            }
        }
        Ok(())
    }

    fn reachable_from(&self, start: NodeId) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([start]);
        seen[start.0] = true;
        while let Some(v) = queue.pop_front() {
            for &c in &self.nodes[v.0].children {
                if !seen[c.0] {
                    seen[c.0] = true;
                    queue.push_back(c);
                }
            }
        }
        seen
    }

    fn unreachable(&self) -> Vec<usize> {
        let seen = self.reachable_from(self.root);
        (0..self.nodes.len()).filter(|&i| !seen[i]).collect()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[v.0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.nodes[v.0].label
    }

    pub fn child(&self, v: NodeId, k: usize) -> NodeId {
        self.nodes[v.0].children[k]
    }

    /// The subtree `t.v`, restricted to nodes reachable from `v`.
    pub fn reroot(&self, v: NodeId) -> RegularTree {
        let seen = self.reachable_from(v);
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut kept = 0;
        for (i, &s) in seen.iter().enumerate() {
            if s {
                remap[i] = kept;
                kept += 1;
            }
        }
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| seen[*i])
            .map(|(_, n)| Node {
                name: n.name.clone(),
                label: n.label.clone(),
                children: n.children.iter().map(|c| NodeId(remap[c.0])).collect(),
            })
            .collect();
        RegularTree { arity: self.arity, nodes, root: NodeId(remap[v.0]) }
    }

    /// A single node labelled `label` whose children are itself.
    pub fn constant(arity: usize, label: &str) -> RegularTree {
        RegularTree::new(
            arity,
            vec![Node { name: "n".into(), label: label.into(), children: vec![NodeId(0); arity] }],
            NodeId(0),
        )
        .expect("constant trees are valid")
    }

    /// Parses every label as a W-tree label.
    pub fn w_labels(&self) -> Result<Vec<WTreeLabel>> {
        self.nodes.iter().map(|n| n.label.parse()).collect()
    }
}

/// Label of a node in a weak game tree: who moves, and the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WTreeLabel {
    pub owner: Player,
    pub rank: Rank,
}

impl WTreeLabel {
    pub fn check_band(self, band: IndexPair) -> Result<()> {
        if band.contains(self.rank) {
            Ok(())
        } else {
            Err(Error::RankOutsideBand { rank: self.rank, band })
        }
    }
}

impl fmt::Display for WTreeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = match self.owner {
            Player::Eve => "E",
            Player::Adam => "A",
        };
        write!(f, "{o}:{}", self.rank)
    }
}

impl FromStr for WTreeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::semantic(format!("`{s}` is not an owner:rank label"));
        let (owner, rank) = s.split_once(':').ok_or_else(bad)?;
        let owner = match owner {
            "E" => Player::Eve,
            "A" => Player::Adam,
            _ => return Err(bad()),
        };
        let rank = rank.parse().map_err(|_| bad())?;
        Ok(WTreeLabel { owner, rank })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(name: &str, label: &str, children: &[usize]) -> Node {
        Node {
            name: name.into(),
            label: label.into(),
            children: children.iter().map(|&c| NodeId(c)).collect(),
        }
    }

    #[test]
    fn rejects_unreachable_nodes() {
        let err = RegularTree::new(2, vec![node("r", "a", &[0, 0]), node("x", "b", &[1, 1])], NodeId(0))
            .unwrap_err();
        assert!(err.to_string().contains("unreachable"));
    }

    #[test]
    fn rejects_arity_mismatch() {
        assert!(RegularTree::new(2, vec![node("r", "a", &[0])], NodeId(0)).is_err());
        assert!(RegularTree::new(2, vec![node("r", "a", &[0, 5])], NodeId(0)).is_err());
    }

    #[test]
    fn reroot_prunes() {
        let t = RegularTree::new(2, vec![node("r", "a", &[1, 0]), node("x", "b", &[1, 1])], NodeId(0)).unwrap();
        let s = t.reroot(NodeId(1));
        assert_eq!(s.len(), 1);
        assert_eq!(s.label(s.root()), "b");
    }

    #[test]
    fn w_label_syntax() {
        let l: WTreeLabel = "E:3".parse().unwrap();
        assert_eq!(l, WTreeLabel { owner: Player::Eve, rank: 3 });
        assert_eq!(l.to_string(), "E:3");
        assert!("X:1".parse::<WTreeLabel>().is_err());
        assert!(l.check_band(IndexPair::even(2)).is_err());
    }
}
