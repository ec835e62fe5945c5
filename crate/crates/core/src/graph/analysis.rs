use super::digraph::condense;
use super::pairs::PairGraph;
use super::{LabeledGraph, StateId};
use crate::error::{Error, Result};

pub fn is_deterministic(g: &LabeledGraph) -> bool {
    (0..g.num_states()).all(|u| g.out_edges(u).windows(2).all(|w| w[0].label != w[1].label))
}

/// An irreducible component with its induced edges.
#[derive(Clone, Debug)]
pub struct Component {
    /// States of the component, in the parent's declaration order.
    pub states: Vec<StateId>,
    pub graph: LabeledGraph,
    /// No edge leaves the component.
    pub is_sink: bool,
}

/// Strongly connected components, ordered by their smallest state.
pub fn irreducible_components(g: &LabeledGraph) -> Vec<Component> {
    let succ = state_successors(g);
    let c = condense(&succ);
    let mut out: Vec<Component> = c
        .comps
        .iter()
        .enumerate()
        .map(|(ci, nodes)| {
            let mut states = nodes.clone();
            states.sort_unstable();
            let is_sink = states.iter().all(|&u| succ[u].iter().all(|&v| c.comp[v] == ci));
            Component {
                graph: g.induced_subgraph(&states),
                states,
                is_sink,
            }
        })
        .collect();
    out.sort_by_key(|c| c.states[0]);
    out
}

/// Greatest common divisor of cycle lengths of an irreducible graph.
pub fn period(g: &LabeledGraph) -> Result<usize> {
    let comps = irreducible_components(g);
    if comps.len() != 1 || g.num_edges() == 0 {
        return Err(Error::NotIrreducible);
    }
    let n = g.num_states();
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for e in g.out_edges(u) {
            if level[e.to] == usize::MAX {
                level[e.to] = level[u] + 1;
                queue.push_back(e.to);
            }
        }
    }
    let mut d = 0;
    for e in g.edges() {
        d = gcd(d, (level[e.from] + 1).abs_diff(level[e.to]));
    }
    Ok(d)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Memory {
    Finite(usize),
    Infinite,
    Unknown(usize),
}

/// Smallest μ such that equal-word paths of length μ share their terminal
/// state.
pub fn memory(g: &LabeledGraph, mu_max: usize) -> Memory {
    let pg = PairGraph::new(g);
    let succ = pg.successors();
    let c = condense(&succ);
    // reach[n]: longest path from n ending at an off-diagonal node;
    // i64::MIN when none, None when unbounded.
    const NONE: i64 = i64::MIN;
    let mut reach: Vec<Option<i64>> = vec![Some(NONE); succ.len()];
    for (ci, nodes) in c.comps.iter().enumerate() {
        let mut best = NONE;
        let mut unbounded = false;
        for &n in nodes {
            if !pg.is_diagonal(n) {
                best = best.max(0);
            }
            for &v in &succ[n] {
                if c.comp[v] == ci {
                    continue;
                }
                match reach[v] {
                    None => unbounded = true,
                    Some(r) if r != NONE => best = best.max(r + 1),
                    _ => {}
                }
            }
        }
        let val = if unbounded || (c.cyclic[ci] && best != NONE) {
            None
        } else {
            Some(best)
        };
        for &n in nodes {
            reach[n] = val;
        }
    }
    let mut longest = NONE;
    for r in &reach {
        match r {
            None => return Memory::Infinite,
            Some(r) => longest = longest.max(*r),
        }
    }
    let mu = if longest == NONE { 0 } else { longest as usize + 1 };
    if mu > mu_max {
        Memory::Unknown(mu_max)
    } else {
        Memory::Finite(mu)
    }
}

pub(crate) fn state_successors(g: &LabeledGraph) -> Vec<Vec<usize>> {
    (0..g.num_states())
        .map(|u| {
            let mut v: Vec<usize> = g.out_edges(u).iter().map(|e| e.to).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect()
}
