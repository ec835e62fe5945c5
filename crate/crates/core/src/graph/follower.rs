//! Follower-set reasoning: simulation, subset construction, state merging.

use std::collections::{HashMap, VecDeque};

use super::{analysis::is_deterministic, Edge, LabeledGraph, StateId, SymbolId};
use crate::error::{Error, Result};

/// `rel[z][u]` is true iff every word generated from `z` in `h` is also
/// generated from `u` in `g`. Both graphs must be deterministic; labels are
/// matched by symbol text.
pub fn simulation(h: &LabeledGraph, g: &LabeledGraph) -> Vec<Vec<bool>> {
    let label_map: Vec<Option<SymbolId>> = h.alphabet().iter().map(|s| g.symbol_id(s.as_str())).collect();
    let mut rel = vec![vec![true; g.num_states()]; h.num_states()];
    loop {
        let mut changed = false;
        for z in 0..h.num_states() {
            for u in 0..g.num_states() {
                if !rel[z][u] {
                    continue;
                }
                let ok = h.out_edges(z).iter().all(|e| {
                    label_map[e.label]
                        .and_then(|a| g.successor(u, a))
                        .is_some_and(|v| rel[e.to][v])
                });
                if !ok {
                    rel[z][u] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Result of the subset construction.
#[derive(Clone, Debug)]
pub struct Determinized {
    pub graph: LabeledGraph,
    /// Input states making up each output state, ascending.
    pub members: Vec<Vec<StateId>>,
}

/// Subset construction started from every singleton. Output states are the
/// distinct nonempty sets of states reachable by some word from one state.
pub fn determinize(g: &LabeledGraph) -> Determinized {
    let mut index: HashMap<Vec<StateId>, usize> = HashMap::new();
    let mut members: Vec<Vec<StateId>> = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..g.num_states() {
        index.insert(vec![s], members.len());
        members.push(vec![s]);
        queue.push_back(s);
    }
    let mut edges = Vec::new();
    while let Some(z) = queue.pop_front() {
        let mut by_label: Vec<(SymbolId, StateId)> = members[z]
            .iter()
            .flat_map(|&u| g.out_edges(u).iter().map(|e| (e.label, e.to)))
            .collect();
        by_label.sort_unstable();
        by_label.dedup();
        let mut i = 0;
        while i < by_label.len() {
            let a = by_label[i].0;
            let mut target = Vec::new();
            while i < by_label.len() && by_label[i].0 == a {
                target.push(by_label[i].1);
                i += 1;
            }
            let t = match index.get(&target) {
                Some(&t) => t,
                None => {
                    let t = members.len();
                    index.insert(target.clone(), t);
                    members.push(target);
                    queue.push_back(t);
                    t
                }
            };
            edges.push(Edge {
                from: z,
                label: a,
                to: t,
            });
        }
    }
    let names = members
        .iter()
        .map(|m| {
            let parts: Vec<&str> = m.iter().map(|&s| g.state_name(s)).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    Determinized {
        graph: g.with_edges(names, edges),
        members,
    }
}

/// Result of state merging.
#[derive(Clone, Debug)]
pub struct Merged {
    pub graph: LabeledGraph,
    /// Original index of each surviving state.
    pub kept: Vec<StateId>,
    /// Surviving representative (index into `kept`) of each original state;
    /// `None` for deleted states.
    pub representative: Vec<Option<usize>>,
}

impl Merged {
    /// Restriction of a per-state vector to the surviving states.
    pub fn restrict<T: Copy>(&self, v: &[T]) -> Vec<T> {
        self.kept.iter().map(|&s| v[s]).collect()
    }
}

/// Merges states of a deterministic graph by follower-set containment.
///
/// State `u` is absorbed into `v` when `F(v) ⊆ F(u)` (and, when weights are
/// given, both carry the same weight); redirecting edges from `u` to `v`
/// keeps every generated word inside the original constraint. Each state
/// goes to a minimal such `v`, lowest index first. Zero-weight states and
/// states left without out-edges are deleted.
pub fn merge_states(g: &LabeledGraph, weights: Option<&[u64]>) -> Result<Merged> {
    if !is_deterministic(g) {
        return Err(Error::NotDeterministic);
    }
    let n = g.num_states();
    let mut alive: Vec<bool> = (0..n).map(|u| weights.is_none_or(|w| w[u] > 0)).collect();
    loop {
        let mut changed = false;
        for u in 0..n {
            if alive[u] && !g.out_edges(u).iter().any(|e| alive[e.to]) {
                alive[u] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let live: Vec<StateId> = (0..n).filter(|&u| alive[u]).collect();
    let sub = g.induced_subgraph(&live);
    let sim = simulation(&sub, &sub);
    let weight = |i: usize| weights.map(|w| w[live[i]]);
    let m = live.len();
    let mut rep = vec![0; m];
    for u in 0..m {
        let cands: Vec<usize> = (0..m).filter(|&v| sim[v][u] && weight(v) == weight(u)).collect();
        let minimal = cands
            .iter()
            .copied()
            .filter(|&v| !cands.iter().any(|&w| sim[w][v] && !sim[v][w]))
            .min()
            .unwrap_or(u);
        rep[u] = minimal;
    }
    let mut kept_local: Vec<usize> = (0..m).filter(|&u| rep[u] == u).collect();
    kept_local.sort_unstable();
    let mut pos = vec![usize::MAX; m];
    for (i, &u) in kept_local.iter().enumerate() {
        pos[u] = i;
    }
    let mut edges = Vec::new();
    for (i, &u) in kept_local.iter().enumerate() {
        for e in sub.out_edges(u) {
            edges.push(Edge {
                from: i,
                label: e.label,
                to: pos[rep[e.to]],
            });
        }
    }
    let names = kept_local.iter().map(|&u| sub.state_name(u).to_string()).collect();
    let mut representative = vec![None; n];
    for (i, &s) in live.iter().enumerate() {
        representative[s] = Some(pos[rep[i]]);
    }
    Ok(Merged {
        graph: g.with_edges(names, edges),
        kept: kept_local.iter().map(|&u| live[u]).collect(),
        representative,
    })
}
