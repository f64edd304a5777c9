//! Strongly connected components of induced subgraphs and shortest paths.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// SCC decomposition of the subgraph induced by a node subset.
#[derive(Clone, Debug)]
pub struct Sccs {
    /// Component of each kept node.
    pub comp: Vec<Option<usize>>,
    /// Members of each component; components are in reverse topological
    /// order, so every edge goes from a later component to an earlier one
    /// (or stays inside).
    pub members: Vec<Vec<usize>>,
    /// The component carries a cycle (more than one node, or a self-loop).
    pub cyclic: Vec<bool>,
}

impl Sccs {
    pub fn new<I>(n: usize, succ: impl Fn(usize) -> I, keep: impl Fn(usize) -> bool) -> Sccs
    where
        I: IntoIterator<Item = usize>,
    {
        let mut g = DiGraph::<(), ()>::with_capacity(n, n * 2);
        for _ in 0..n {
            g.add_node(());
        }
        let mut self_loop = vec![false; n];
        for u in (0..n).filter(|&u| keep(u)) {
            for v in succ(u) {
                if keep(v) {
                    if u == v {
                        self_loop[u] = true;
                    }
                    g.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
                }
            }
        }
        let mut comp = vec![None; n];
        let mut members = Vec::new();
        let mut cyclic = Vec::new();
        for scc in tarjan_scc(&g) {
            let nodes: Vec<usize> = scc.iter().map(|x| x.index()).filter(|&u| keep(u)).collect();
            if nodes.is_empty() {
                continue;
            }
            let id = members.len();
            for &u in &nodes {
                comp[u] = Some(id);
            }
            cyclic.push(nodes.len() > 1 || self_loop[nodes[0]]);
            members.push(nodes);
        }
        Sccs { comp, members, cyclic }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn same(&self, u: usize, v: usize) -> bool {
        matches!((self.comp[u], self.comp[v]), (Some(a), Some(b)) if a == b)
    }
}

/// Nodes reachable from `starts` (inclusive) through nodes allowed by `keep`.
pub fn reachable<I>(
    n: usize,
    starts: impl IntoIterator<Item = usize>,
    succ: impl Fn(usize) -> I,
    keep: impl Fn(usize) -> bool,
) -> Vec<bool>
where
    I: IntoIterator<Item = usize>,
{
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for s in starts {
        if keep(s) && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for v in succ(u) {
            if keep(v) && !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// BFS predecessor tree from `start` restricted to `keep`; `parent[v]` is
/// the edge used to reach `v`, as an opaque edge value.
pub fn bfs_tree<E: Copy, I>(
    n: usize,
    start: usize,
    out_edges: impl Fn(usize) -> I,
    keep: impl Fn(usize) -> bool,
) -> Vec<Option<(usize, E)>>
where
    I: IntoIterator<Item = (E, usize)>,
{
    let mut parent: Vec<Option<(usize, E)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for (e, v) in out_edges(u) {
            if keep(v) && !seen[v] {
                seen[v] = true;
                parent[v] = Some((u, e));
                queue.push_back(v);
            }
        }
    }
    parent
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_in_reverse_topological_order() {
        // 0 -> 1 <-> 2 -> 3, 3 has a self-loop
        let adj = [vec![1], vec![2], vec![1, 3], vec![3]];
        let s = Sccs::new(4, |u| adj[u].clone(), |_| true);
        assert_eq!(s.len(), 3);
        assert!(s.same(1, 2));
        assert!(s.cyclic[s.comp[3].unwrap()]);
        assert!(!s.cyclic[s.comp[0].unwrap()]);
        assert!(s.comp[3].unwrap() < s.comp[1].unwrap());
        assert!(s.comp[1].unwrap() < s.comp[0].unwrap());
    }

    #[test]
    fn restriction_drops_nodes() {
        let adj = [vec![1], vec![0]];
        let s = Sccs::new(2, |u| adj[u].clone(), |u| u == 0);
        assert_eq!(s.len(), 1);
        assert!(!s.cyclic[0]);
        assert_eq!(s.comp[1], None);
    }
}
