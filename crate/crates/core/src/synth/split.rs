//! One round of x-consistent state splitting and the merge of two split
//! parity subgraphs.

use std::collections::{BTreeMap, HashSet};

use super::{descendant_name, StateMeta, Tag, TaggedEncoder};
use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, StateId};
use crate::spectra::satisfies;

/// A split graph: state `k` descends from source state `parent[k].0` with
/// descendant index `parent[k].1`. Every state has the same out-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitGraph {
    pub graph: LabeledGraph,
    pub parent: Vec<(StateId, u64)>,
    pub out_degree: u64,
}

/// A descendant `(state name, index)`.
pub type Descendant<'a> = (&'a str, u64);

impl SplitGraph {
    /// Builds a split graph from explicit descendants and edges given as
    /// `((u, i), symbol, (v, j))` over the states of `g`.
    pub fn from_descendant_edges(
        g: &LabeledGraph,
        x: &[u64],
        edges: &[(Descendant<'_>, &str, Descendant<'_>)],
    ) -> Result<SplitGraph> {
        let (names, parent, index) = descendants(g, x);
        let lookup = |(s, i): (&str, u64)| -> Result<usize> {
            let u = g.state_index(s).ok_or_else(|| Error::InvalidState(s.to_string()))?;
            index
                .get(&(u, i))
                .copied()
                .ok_or_else(|| Error::InvalidState(descendant_name(s, i)))
        };
        let mut es = Vec::with_capacity(edges.len());
        for &(from, a, to) in edges {
            let label = g.symbol_id(a).ok_or_else(|| Error::UnknownTag(a.to_string()))?;
            es.push(Edge {
                from: lookup(from)?,
                label,
                to: lookup(to)?,
            });
        }
        let graph = g.with_edges(names, es);
        let deg = graph.out_edges(0).len() as u64;
        if (0..graph.num_states()).any(|u| graph.out_edges(u).len() as u64 != deg) {
            return Err(Error::PreconditionFailed("split graph out-degrees differ".into()));
        }
        Ok(SplitGraph {
            graph,
            parent,
            out_degree: deg,
        })
    }
}

type Descendants = (Vec<String>, Vec<(StateId, u64)>, BTreeMap<(StateId, u64), usize>);

fn descendants(g: &LabeledGraph, x: &[u64]) -> Descendants {
    let mut names = Vec::new();
    let mut parent = Vec::new();
    let mut index = BTreeMap::new();
    for u in 0..g.num_states() {
        for i in 0..x[u] {
            index.insert((u, i), names.len());
            names.push(descendant_name(g.state_name(u), i));
            parent.push((u, i));
        }
    }
    (names, parent, index)
}

/// Splits every state `u` of `g_b` into `x_u` descendants whose out-edge
/// bundles each carry terminal weight at least `n`, then prunes every
/// descendant to exactly `n` out-edges.
pub fn split_one_round(g_b: &LabeledGraph, x: &[u64], n: u64) -> Result<SplitGraph> {
    if x.len() != g_b.num_states() {
        return Err(Error::DimensionMismatch {
            expected: g_b.num_states(),
            got: x.len(),
        });
    }
    if x.iter().all(|&v| v == 0) || !satisfies(&g_b.adjacency(), x, n) {
        return Err(Error::InfeasibleVector(format!(
            "{x:?} is not an approximate eigenvector for {n}"
        )));
    }
    let (names, parent, index) = descendants(g_b, x);
    let mut edges = Vec::new();
    for u in 0..g_b.num_states() {
        if x[u] == 0 {
            continue;
        }
        let items: Vec<usize> = g_b.out_range(u).filter(|&i| x[g_b.edges()[i].to] > 0).collect();
        let weights: Vec<u64> = items.iter().map(|&i| x[g_b.edges()[i].to]).collect();
        let bins = cover_bins(&weights, x[u] as usize, n).ok_or_else(|| Error::SplitInfeasible {
            state: g_b.state_name(u).to_string(),
        })?;
        for (i, bin) in bins.iter().enumerate() {
            let from = index[&(u, i as u64)];
            let mut out = Vec::new();
            for &k in bin {
                let e = g_b.edges()[items[k]];
                for j in 0..x[e.to] {
                    out.push(Edge {
                        from,
                        label: e.label,
                        to: index[&(e.to, j)],
                    });
                }
            }
            out.truncate(n as usize);
            edges.extend(out);
        }
    }
    Ok(SplitGraph {
        graph: g_b.with_edges(names, edges),
        parent,
        out_degree: n,
    })
}

/// Assigns items to `k` bins so that each bin weighs at least `n`.
/// Exhaustive: heavier items first, each goes to an unfilled bin or is left
/// over; bins with equal fill are interchangeable, and failed
/// `(item, fills)` states are remembered. Leftovers join the last bin.
/// Bins are returned sorted by their smallest item.
fn cover_bins(weights: &[u64], k: usize, n: u64) -> Option<Vec<Vec<usize>>> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(weights[i]), i));
    let w: Vec<u64> = order.iter().map(|&i| weights[i]).collect();
    let mut suffix = vec![0u64; w.len() + 1];
    for i in (0..w.len()).rev() {
        suffix[i] = suffix[i + 1] + w[i];
    }
    let mut assign = vec![usize::MAX; w.len()];
    let mut fills = vec![0u64; k];
    let mut failed = HashSet::new();
    if !search(0, &w, &suffix, n, &mut fills, &mut assign, &mut failed) {
        return None;
    }
    let mut bins: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut leftovers = Vec::new();
    for (pos, &b) in assign.iter().enumerate() {
        if b == usize::MAX {
            leftovers.push(order[pos]);
        } else {
            bins[b].push(order[pos]);
        }
    }
    for b in &mut bins {
        b.sort_unstable();
    }
    bins.sort_by_key(|b| b.first().copied().unwrap_or(usize::MAX));
    if let Some(last) = bins.last_mut() {
        last.extend(leftovers);
        last.sort_unstable();
    }
    Some(bins)
}

fn search(
    idx: usize,
    w: &[u64],
    suffix: &[u64],
    n: u64,
    fills: &mut [u64],
    assign: &mut [usize],
    failed: &mut HashSet<(usize, Vec<u64>)>,
) -> bool {
    let deficit: u64 = fills.iter().map(|&f| n.saturating_sub(f)).sum();
    if deficit == 0 {
        return true;
    }
    if idx == w.len() || suffix[idx] < deficit {
        return false;
    }
    let mut key_fills = fills.to_vec();
    key_fills.sort_unstable();
    let key = (idx, key_fills);
    if failed.contains(&key) {
        return false;
    }
    let mut tried = Vec::new();
    for b in 0..fills.len() {
        if fills[b] >= n || tried.contains(&fills[b]) {
            continue;
        }
        tried.push(fills[b]);
        let before = fills[b];
        fills[b] = (before + w[idx]).min(n);
        assign[idx] = b;
        if search(idx + 1, w, suffix, n, fills, assign, failed) {
            return true;
        }
        fills[b] = before;
        assign[idx] = usize::MAX;
    }
    if search(idx + 1, w, suffix, n, fills, assign, failed) {
        return true;
    }
    failed.insert(key);
    false
}

/// Union of two split parity subgraphs on the common states `(u, i)`.
/// `perm`, when given, maps each descendant index of the class-1 split
/// graph to a descendant index of the class-0 one, per source state.
pub fn merge_split_pair(e0: &SplitGraph, e1: &SplitGraph, perm: Option<&[Vec<u64>]>) -> Result<TaggedEncoder> {
    let mut key0 = e0.parent.clone();
    let mut key1 = e1.parent.clone();
    key0.sort_unstable();
    key1.sort_unstable();
    if key0 != key1 {
        return Err(Error::PreconditionFailed(
            "split graphs have different descendants".into(),
        ));
    }
    let index: BTreeMap<(StateId, u64), usize> = e0.parent.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let map1 = |k: usize| -> usize {
        let (u, i) = e1.parent[k];
        let i = perm.map_or(i, |p| p[u][i as usize]);
        index[&(u, i)]
    };
    let mut edges: BTreeMap<Edge, Tag> = BTreeMap::new();
    for (class, sg) in [(0u8, e0), (1u8, e1)] {
        for k in 0..sg.graph.num_states() {
            for (slot, e) in sg.graph.out_edges(k).iter().enumerate() {
                let (from, to) = if class == 0 { (k, e.to) } else { (map1(k), map1(e.to)) };
                edges
                    .entry(Edge {
                        from,
                        label: e.label,
                        to,
                    })
                    .or_insert(Tag {
                        class,
                        slot: slot as u64,
                    });
            }
        }
    }
    let base = &e0.graph;
    let names = base.states().to_vec();
    let meta = names
        .iter()
        .zip(&e0.parent)
        .map(|(name, &(_, i))| {
            Some(StateMeta {
                parent: name.rsplit_once(':').map_or(name.as_str(), |p| p.0).to_string(),
                index: i,
            })
        })
        .collect();
    TaggedEncoder::from_tagged_edges(
        base,
        names,
        edges.into_iter().collect(),
        e0.out_degree,
        e1.out_degree,
        meta,
    )
}
