//! Encoder construction.

mod delta;
mod pipeline;
mod split;
mod stether;

pub use delta::{build_delta, cover_consistent_partition, stether_partition, DeltaElem, DeltaPartition, DeltaSet};
pub use pipeline::{synthesize, Method};
pub use split::{merge_split_pair, split_one_round, SplitGraph};
pub use stether::{extract_deterministic, stether, stether_punctured};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, StateId};

/// Input tag of an encoder edge: the parity class it serves and its slot
/// among that class's edges at the source state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tag {
    pub class: u8,
    pub slot: u64,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.class, self.slot)
    }
}

impl FromStr for Tag {
    type Err = Error;

    /// Parses `class/slot`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownTag(s.to_string());
        let (c, slot) = s.split_once('/').ok_or_else(bad)?;
        let class = match c {
            "0" => 0,
            "1" => 1,
            _ => return Err(bad()),
        };
        Ok(Tag {
            class,
            slot: slot.parse().map_err(|_| bad())?,
        })
    }
}

/// Where an encoder state came from: a state of the source graph and a
/// descendant index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateMeta {
    pub parent: String,
    pub index: u64,
}

/// An encoder graph whose edges carry input tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedEncoder {
    pub graph: LabeledGraph,
    /// One tag per edge of `graph`, in edge order.
    pub tags: Vec<Tag>,
    pub n0: u64,
    pub n1: u64,
    pub state_meta: Vec<Option<StateMeta>>,
}

impl TaggedEncoder {
    /// Builds an encoder from edges given with their tags. Checks that tags
    /// are in range, unique per state and class, and that each tag's class
    /// is one of its label's classes.
    pub fn from_tagged_edges(
        base: &LabeledGraph,
        states: Vec<String>,
        edges: Vec<(Edge, Tag)>,
        n0: u64,
        n1: u64,
        state_meta: Vec<Option<StateMeta>>,
    ) -> Result<TaggedEncoder> {
        let lookup: HashMap<Edge, Tag> = edges.iter().copied().collect();
        if lookup.len() != edges.len() {
            return Err(Error::PreconditionFailed("duplicate encoder edge".into()));
        }
        let graph = base.with_edges(states, edges.iter().map(|(e, _)| *e).collect());
        let tags = graph.edges().iter().map(|e| lookup[e]).collect();
        let enc = TaggedEncoder {
            graph,
            tags,
            n0,
            n1,
            state_meta,
        };
        enc.check_tags()?;
        Ok(enc)
    }

    fn check_tags(&self) -> Result<()> {
        let mut seen = HashMap::new();
        for (e, t) in self.graph.edges().iter().zip(&self.tags) {
            let n = self.n(t.class);
            if t.class > 1 || t.slot >= n {
                return Err(Error::UnknownTag(format!(
                    "{t} at state {}",
                    self.graph.state_name(e.from)
                )));
            }
            if !self.graph.in_class(e.label, t.class) {
                return Err(Error::PreconditionFailed(format!(
                    "tag {t} on label {} of the other class",
                    self.graph.symbol(e.label)
                )));
            }
            if seen.insert((e.from, *t), ()).is_some() {
                return Err(Error::PreconditionFailed(format!(
                    "tag {t} used twice at state {}",
                    self.graph.state_name(e.from)
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self, class: u8) -> u64 {
        if class == 0 {
            self.n0
        } else {
            self.n1
        }
    }

    /// Index of the edge leaving `u` with tag `tag`.
    pub fn edge_for(&self, u: StateId, tag: Tag) -> Option<usize> {
        self.graph.out_range(u).find(|&i| self.tags[i] == tag)
    }

    /// The encoder with every edge whose tag satisfies `drop` removed.
    pub(crate) fn without(&self, drop: impl Fn(Tag) -> bool, n0: u64, n1: u64) -> Result<TaggedEncoder> {
        let edges = self
            .graph
            .edges()
            .iter()
            .zip(&self.tags)
            .filter(|(_, t)| !drop(**t))
            .map(|(e, t)| (*e, *t))
            .collect();
        Self::from_tagged_edges(
            &self.graph,
            self.graph.states().to_vec(),
            edges,
            n0,
            n1,
            self.state_meta.clone(),
        )
    }
}

/// Mapping from `p`-bit input blocks to encoder edges at each state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTags {
    pub p: u32,
    /// `table[state][block]` is an edge index.
    pub table: Vec<Vec<usize>>,
    /// Block value of each edge, in edge order.
    pub block_of_edge: Vec<u64>,
}

/// Maps even-parity blocks (ascending) to class-0 edges by slot and
/// odd-parity blocks to class-1 edges, so each block's parity matches the
/// parity of its codeword.
pub fn assign_block_tags(e: &TaggedEncoder, p: u32) -> Result<BlockTags> {
    let half = if p == 0 || p > 32 { 0 } else { 1u64 << (p - 1) };
    if p == 0 || e.n0 != half || e.n1 != half {
        return Err(Error::ArityMismatch {
            n0: e.n0 as usize,
            n1: e.n1 as usize,
        });
    }
    let blocks: [Vec<u64>; 2] = [0u32, 1].map(|b| (0..1u64 << p).filter(|v| v.count_ones() % 2 == b).collect());
    let mut table = Vec::with_capacity(e.graph.num_states());
    let mut block_of_edge = vec![u64::MAX; e.graph.num_edges()];
    for u in 0..e.graph.num_states() {
        let mut row = vec![usize::MAX; 1 << p];
        for b in 0..2u8 {
            for (slot, &blk) in blocks[b as usize].iter().enumerate() {
                let tag = Tag {
                    class: b,
                    slot: slot as u64,
                };
                let i = e
                    .edge_for(u, tag)
                    .ok_or_else(|| Error::UnknownTag(format!("{tag} missing at state {}", e.graph.state_name(u))))?;
                row[blk as usize] = i;
                block_of_edge[i] = blk;
            }
        }
        table.push(row);
    }
    Ok(BlockTags {
        p,
        table,
        block_of_edge,
    })
}

/// Smallest `p` with `n0 = n1 = 2^(p-1)`, if any.
pub fn block_width(e: &TaggedEncoder) -> Option<u32> {
    (e.n0 == e.n1 && e.n0.is_power_of_two()).then(|| e.n0.trailing_zeros() + 1)
}

pub(crate) fn descendant_name(parent: &str, i: u64) -> String {
    format!("{parent}:{i}")
}
