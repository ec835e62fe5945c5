//! Deterministic extraction and (punctured) stethering.

use std::collections::BTreeMap;

use super::delta::{build_delta, cover_consistent_partition, stether_partition, DeltaPartition};
use super::{descendant_name, StateMeta, Tag, TaggedEncoder};
use crate::error::{Error, Result};
use crate::graph::{is_deterministic, Edge, LabeledGraph};
use crate::spectra::ApproxEigenvector;

fn check_vector(g: &LabeledGraph, x: &[u64], n0: u64, n1: u64) -> Result<()> {
    ApproxEigenvector::new(&g.adjacency_pair(), x.to_vec(), n0, n1).map(|_| ())
}

/// A subgraph with exactly `n_b` class-`b` edges per state, from a 0-1
/// joint approximate eigenvector. `g` must be deterministic, otherwise the
/// subgraph can be lossy.
pub fn extract_deterministic(g: &LabeledGraph, x: &[u64], n0: u64, n1: u64) -> Result<TaggedEncoder> {
    if !is_deterministic(g) {
        return Err(Error::NotDeterministic);
    }
    if x.iter().any(|&v| v > 1) {
        return Err(Error::InfeasibleVector(format!("{x:?} is not a 0-1 vector")));
    }
    check_vector(g, x, n0, n1)?;
    build(g, x, n0, n1)
}

/// Stethering encoder: states `(u, i)` for `i < x_u`; the edge labeled `a`
/// from `u` to `v` yields edges `(u, i) -> (v, j)` where `i` is the group of
/// `(a, j)` in the interval partition of `Δ_b(u)`.
pub fn stether(g: &LabeledGraph, x: &[u64], n0: u64, n1: u64) -> Result<TaggedEncoder> {
    if !is_deterministic(g) {
        return Err(Error::NotDeterministic);
    }
    check_vector(g, x, n0, n1)?;
    build(g, x, n0, n1)
}

/// Stethering at `(n0+1, n1+1)` followed by removal of the edges tagged
/// with the top slot of each class.
pub fn stether_punctured(g: &LabeledGraph, x_plus: &[u64], n0: u64, n1: u64) -> Result<TaggedEncoder> {
    let full = stether(g, x_plus, n0 + 1, n1 + 1)?;
    full.without(
        |t| (t.class == 0 && t.slot == n0) || (t.class == 1 && t.slot == n1),
        n0,
        n1,
    )
}

fn build(g: &LabeledGraph, x: &[u64], n0: u64, n1: u64) -> Result<TaggedEncoder> {
    let dropped: Vec<&str> = (0..g.num_states())
        .filter(|&u| x[u] == 0)
        .map(|u| g.state_name(u))
        .collect();
    if !dropped.is_empty() {
        log::warn!("removing zero-weight states: {}", dropped.join(" "));
    }
    // First descendant index of each state.
    let mut base = vec![0usize; g.num_states() + 1];
    for u in 0..g.num_states() {
        base[u + 1] = base[u] + x[u] as usize;
    }
    let mut names = Vec::with_capacity(base[g.num_states()]);
    let mut meta = Vec::with_capacity(names.capacity());
    for u in 0..g.num_states() {
        for i in 0..x[u] {
            names.push(descendant_name(g.state_name(u), i));
            meta.push(Some(StateMeta {
                parent: g.state_name(u).to_string(),
                index: i,
            }));
        }
    }
    let strict = g.is_strict();
    let mut edges: BTreeMap<Edge, Tag> = BTreeMap::new();
    for u in 0..g.num_states() {
        if x[u] == 0 {
            continue;
        }
        let parts: [DeltaPartition; 2] = if strict || n0 == n1 {
            let p0 = stether_partition(&build_delta(g, x, u, 0), x[u], n0);
            let p1 = stether_partition(&build_delta(g, x, u, 1), x[u], n1);
            [p0.map_err(|e| named(g, e))?, p1.map_err(|e| named(g, e))?]
        } else {
            let (p0, p1) = cover_consistent_partition(g, x, u, n0, n1)?;
            [p0, p1]
        };
        for part in &parts {
            for (i, grp) in part.groups.iter().enumerate() {
                for (slot, el) in grp.iter().enumerate() {
                    let target = g.edges()[el.edge].to;
                    let edge = Edge {
                        from: base[u] + i,
                        label: el.symbol,
                        to: base[target] + el.j as usize,
                    };
                    // A shared element keeps the tag of the first class.
                    edges.entry(edge).or_insert(Tag {
                        class: part.class,
                        slot: slot as u64,
                    });
                }
            }
        }
    }
    TaggedEncoder::from_tagged_edges(g, names, edges.into_iter().collect(), n0, n1, meta)
}

fn named(g: &LabeledGraph, e: Error) -> Error {
    match e {
        Error::InsufficientWeight { state, class } => Error::InsufficientWeight {
            state: state
                .parse::<usize>()
                .map(|u| g.state_name(u).to_string())
                .unwrap_or(state),
            class,
        },
        e => e,
    }
}
