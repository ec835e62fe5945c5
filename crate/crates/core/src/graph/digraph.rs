//! Plain successor-list digraphs and longest-path bookkeeping on their
//! condensation.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Condensation of a digraph given by successor lists.
pub(crate) struct Condensed {
    /// Component of each node.
    pub comp: Vec<usize>,
    /// Components in reverse topological order (sinks first).
    pub comps: Vec<Vec<usize>>,
    /// Whether each component contains a cycle.
    pub cyclic: Vec<bool>,
}

pub(crate) fn condense(succ: &[Vec<usize>]) -> Condensed {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(succ.len(), 0);
    for _ in 0..succ.len() {
        g.add_node(());
    }
    for (u, vs) in succ.iter().enumerate() {
        for &v in vs {
            g.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
        }
    }
    let sccs = tarjan_scc(&g);
    let mut comp = vec![0; succ.len()];
    let mut comps = Vec::with_capacity(sccs.len());
    for (c, scc) in sccs.iter().enumerate() {
        let nodes: Vec<usize> = scc.iter().map(|n| n.index()).collect();
        for &n in &nodes {
            comp[n] = c;
        }
        comps.push(nodes);
    }
    let cyclic = comps
        .iter()
        .map(|nodes| nodes.len() > 1 || succ[nodes[0]].contains(&nodes[0]))
        .collect();
    Condensed { comp, comps, cyclic }
}

/// Length (in edges) of the longest path leaving each node, or `None` when a
/// cycle is reachable from the node.
pub(crate) fn longest_paths(succ: &[Vec<usize>]) -> Vec<Option<usize>> {
    let c = condense(succ);
    let mut h: Vec<Option<usize>> = vec![Some(0); succ.len()];
    for (ci, nodes) in c.comps.iter().enumerate() {
        if c.cyclic[ci] {
            for &n in nodes {
                h[n] = None;
            }
            continue;
        }
        let n = nodes[0];
        let mut best = Some(0);
        for &v in &succ[n] {
            best = match (best, h[v]) {
                (Some(b), Some(hv)) => Some(b.max(hv + 1)),
                _ => None,
            };
        }
        h[n] = best;
    }
    h
}

/// A shortest path from any of `starts` to a node on a cycle, followed by
/// that cycle. Returns `(stem, cycle)` as node sequences; the stem ends at
/// the first cycle node and the cycle returns to it.
pub(crate) fn reachable_cycle(succ: &[Vec<usize>], starts: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let c = condense(succ);
    let on_cycle = |n: usize| c.cyclic[c.comp[n]];
    let parent = bfs_parents(succ, starts);
    let target = (0..succ.len())
        .filter(|&n| parent[n].is_some() && on_cycle(n))
        .min_by_key(|&n| depth(&parent, n))?;
    let stem = path_to(&parent, target);
    // Shortest cycle through `target` inside its component.
    let comp = c.comp[target];
    let mut back: Vec<Option<usize>> = vec![None; succ.len()];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(target);
    let mut closing = None;
    'bfs: while let Some(u) = queue.pop_front() {
        for &v in &succ[u] {
            if c.comp[v] != comp {
                continue;
            }
            if v == target {
                closing = Some(u);
                break 'bfs;
            }
            if back[v].is_none() {
                back[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    let mut cycle = vec![target];
    let mut u = closing?;
    let mut rev = Vec::new();
    while u != target {
        rev.push(u);
        u = back[u]?;
    }
    rev.reverse();
    cycle.extend(rev);
    cycle.push(target);
    Some((stem, cycle))
}

/// BFS parent pointers; starts point to themselves.
pub(crate) fn bfs_parents(succ: &[Vec<usize>], starts: &[usize]) -> Vec<Option<usize>> {
    let mut parent = vec![None; succ.len()];
    let mut queue = std::collections::VecDeque::new();
    for &s in starts {
        if parent[s].is_none() {
            parent[s] = Some(s);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in &succ[u] {
            if parent[v].is_none() {
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    parent
}

fn depth(parent: &[Option<usize>], mut n: usize) -> usize {
    let mut d = 0;
    while let Some(p) = parent[n] {
        if p == n {
            break;
        }
        n = p;
        d += 1;
    }
    d
}

pub(crate) fn path_to(parent: &[Option<usize>], mut n: usize) -> Vec<usize> {
    let mut path = vec![n];
    while let Some(p) = parent[n] {
        if p == n {
            break;
        }
        path.push(p);
        n = p;
    }
    path.reverse();
    path
}
