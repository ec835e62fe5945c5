//! Stream encoding with NRZI precoding and block decoding.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, StateId, SymbolId, ODD};
use crate::synth::{BlockTags, Tag, TaggedEncoder};

use super::{anticipation, Anticipation};

/// How the reserved least significant bit of each input block is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    /// Blocks are used as given.
    AsTagged,
    /// The reserved bit makes every block even.
    FixedParity,
    /// The reserved bit minimizes the running digital sum after the
    /// codeword; ties go to 0.
    RdsMin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodeOutput {
    pub word: Vec<SymbolId>,
    pub end_state: StateId,
    /// Running digital sum before the first codeword and after each one.
    pub rds_trace: Vec<i64>,
    pub edges: Vec<usize>,
    /// Blocks after the policy set the reserved bit; empty for tag input.
    pub blocks_used: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutput {
    pub edges: Vec<usize>,
    pub tags: Vec<Tag>,
    /// Decisions made with less lookahead than the anticipation.
    pub provisional: Vec<bool>,
}

/// Channel bits of a codeword: the symbol text if it is made of `0`/`1`
/// (ignoring `.` separators), otherwise one bit equal to its parity class.
pub fn symbol_bits(g: &LabeledGraph, a: SymbolId) -> Vec<u8> {
    let text: String = g.symbol(a).as_str().chars().filter(|&c| c != '.').collect();
    if !text.is_empty() && text.chars().all(|c| c == '0' || c == '1') {
        text.bytes().map(|c| c - b'0').collect()
    } else {
        vec![u8::from(g.class_mask(a) == ODD)]
    }
}

/// NRZI: a 1 bit toggles polarity; every bit emits the current polarity.
fn precode(bits: &[u8], polarity: &mut i64) -> i64 {
    bits.iter()
        .map(|&b| {
            if b == 1 {
                *polarity = -*polarity;
            }
            *polarity
        })
        .sum()
}

/// Largest absolute disparity of a single codeword of `g`.
pub fn max_block_disparity(g: &LabeledGraph) -> i64 {
    (0..g.alphabet().len())
        .map(|a| precode(&symbol_bits(g, a), &mut 1).abs())
        .max()
        .unwrap_or(0)
}

pub fn encode_stream(
    e: &TaggedEncoder,
    bt: &BlockTags,
    blocks: &[u64],
    start: StateId,
    policy: Policy,
) -> Result<EncodeOutput> {
    check_state(&e.graph, start)?;
    let g = &e.graph;
    let mask = (1u64 << bt.p) - 1;
    let mut out = Output::new(start);
    for &blk in blocks {
        if blk > mask {
            return Err(Error::UnknownTag(format!("block {blk} exceeds {} bits", bt.p)));
        }
        let used = match policy {
            Policy::AsTagged => blk,
            Policy::FixedParity => {
                let b = blk & !1;
                b | u64::from(b.count_ones() % 2)
            }
            Policy::RdsMin => {
                let cost = |b: u64| {
                    let mut pol = out.polarity;
                    let i = bt.table[out.state][b as usize];
                    (out.rds + precode(&symbol_bits(g, g.edges()[i].label), &mut pol)).abs()
                };
                let (lo, hi) = (blk & !1, blk | 1);
                if cost(hi) < cost(lo) {
                    hi
                } else {
                    lo
                }
            }
        };
        out.step(g, bt.table[out.state][used as usize]);
        out.blocks.push(used);
    }
    Ok(out.finish())
}

/// Encodes a sequence of tags directly, for encoders whose class sizes are
/// not powers of two. The slot carries the data; under `FixedParity` the
/// class is forced to 0 and under `RdsMin` it is chosen among the classes
/// offering that slot.
pub fn encode_tags(e: &TaggedEncoder, tags: &[Tag], start: StateId, policy: Policy) -> Result<EncodeOutput> {
    check_state(&e.graph, start)?;
    let g = &e.graph;
    let mut out = Output::new(start);
    for &t in tags {
        let pick = |class: u8| e.edge_for(out.state, Tag { class, slot: t.slot });
        let i = match policy {
            Policy::AsTagged => e.edge_for(out.state, t),
            Policy::FixedParity => pick(0),
            Policy::RdsMin => {
                let cost = |i: usize| {
                    let mut pol = out.polarity;
                    (out.rds + precode(&symbol_bits(g, g.edges()[i].label), &mut pol)).abs()
                };
                match (pick(0), pick(1)) {
                    (Some(a), Some(b)) => Some(if cost(b) < cost(a) { b } else { a }),
                    (a, b) => a.or(b),
                }
            }
        }
        .ok_or_else(|| Error::UnknownTag(format!("{t} at state {}", g.state_name(out.state))))?;
        out.step(g, i);
    }
    Ok(out.finish())
}

struct Output {
    state: StateId,
    polarity: i64,
    rds: i64,
    word: Vec<SymbolId>,
    trace: Vec<i64>,
    edges: Vec<usize>,
    blocks: Vec<u64>,
}

impl Output {
    fn new(start: StateId) -> Self {
        Output {
            state: start,
            polarity: 1,
            rds: 0,
            word: Vec::new(),
            trace: vec![0],
            edges: Vec::new(),
            blocks: Vec::new(),
        }
    }

    fn step(&mut self, g: &LabeledGraph, i: usize) {
        let edge = g.edges()[i];
        self.rds += precode(&symbol_bits(g, edge.label), &mut self.polarity);
        self.trace.push(self.rds);
        self.word.push(edge.label);
        self.edges.push(i);
        self.state = edge.to;
    }

    fn finish(self) -> EncodeOutput {
        EncodeOutput {
            word: self.word,
            end_state: self.state,
            rds_trace: self.trace,
            edges: self.edges,
            blocks_used: self.blocks,
        }
    }
}

fn check_state(g: &LabeledGraph, s: StateId) -> Result<()> {
    if s < g.num_states() {
        Ok(())
    } else {
        Err(Error::InvalidState(s.to_string()))
    }
}

fn step_set(g: &LabeledGraph, set: &[bool], a: SymbolId) -> Vec<bool> {
    let mut next = vec![false; set.len()];
    for (u, _) in set.iter().enumerate().filter(|(_, &on)| on) {
        for e in g.out_edges(u).iter().filter(|e| e.label == a) {
            next[e.to] = true;
        }
    }
    next
}

fn generable(g: &LabeledGraph, from: StateId, word: &[SymbolId]) -> bool {
    let mut set = vec![false; g.num_states()];
    set[from] = true;
    for &a in word {
        set = step_set(g, &set, a);
        if !set.iter().any(|&b| b) {
            return false;
        }
    }
    true
}

/// Recovers the edge sequence of `word` from a known start state, looking
/// ahead as many symbols as the anticipation. With `end` the tail is
/// resolved exactly; without it, tail decisions are marked provisional.
pub fn decode_stream(
    e: &TaggedEncoder,
    word: &[SymbolId],
    start: StateId,
    end: Option<StateId>,
) -> Result<DecodeOutput> {
    let g = &e.graph;
    check_state(g, start)?;
    let a = match anticipation(g, crate::DEFAULT_ANTICIPATION_CAP) {
        Anticipation::Finite(a) => a,
        other => {
            return Err(Error::PreconditionFailed(format!("anticipation is {other}")));
        }
    };
    // back[k][u]: the rest of the word from position k can be read from u
    // and end at `end`.
    let back: Option<Vec<Vec<bool>>> = end.map(|t| {
        let mut back = vec![vec![false; g.num_states()]; word.len() + 1];
        back[word.len()][t] = true;
        for k in (0..word.len()).rev() {
            for u in 0..g.num_states() {
                back[k][u] = g.out_edges(u).iter().any(|x| x.label == word[k] && back[k + 1][x.to]);
            }
        }
        back
    });
    let mut state = start;
    let mut out = DecodeOutput {
        edges: Vec::with_capacity(word.len()),
        tags: Vec::with_capacity(word.len()),
        provisional: Vec::with_capacity(word.len()),
    };
    for k in 0..word.len() {
        let ahead = (k + 1 + a).min(word.len());
        let short = k + 1 + a > word.len();
        let mut cands = g.out_range(state).filter(|&i| {
            let x = g.edges()[i];
            x.label == word[k]
                && match &back {
                    Some(back) => back[k + 1][x.to],
                    None => generable(g, x.to, &word[k + 1..ahead]),
                }
        });
        let i = cands.next().ok_or(Error::NotDecodable(k))?;
        out.provisional.push(back.is_none() && short);
        out.edges.push(i);
        out.tags.push(e.tags[i]);
        state = g.edges()[i].to;
    }
    Ok(out)
}

/// Block values of a decoded stream.
pub fn decode_blocks(
    e: &TaggedEncoder,
    bt: &BlockTags,
    word: &[SymbolId],
    start: StateId,
    end: Option<StateId>,
) -> Result<(Vec<u64>, Vec<bool>)> {
    let d = decode_stream(e, word, start, end)?;
    Ok((d.edges.iter().map(|&i| bt.block_of_edge[i]).collect(), d.provisional))
}

/// Stateless decoding: the tag at position `k` is read from the window of
/// `m` symbols before and `a` after it, starting from any state. Positions
/// without a full window, or whose window admits several tags, give `None`.
pub fn sliding_block_decode(e: &TaggedEncoder, word: &[SymbolId], m: usize, a: usize) -> Vec<Option<Tag>> {
    let g = &e.graph;
    (0..word.len())
        .map(|k| {
            if k < m || k + a >= word.len() {
                return None;
            }
            let mut set = vec![true; g.num_states()];
            for &sym in &word[k - m..k] {
                set = step_set(g, &set, sym);
            }
            let mut found: Option<Tag> = None;
            for u in (0..g.num_states()).filter(|&u| set[u]) {
                for i in g.out_range(u) {
                    let x = g.edges()[i];
                    if x.label == word[k] && generable(g, x.to, &word[k + 1..=k + a]) {
                        match found {
                            None => found = Some(e.tags[i]),
                            Some(t) if t != e.tags[i] => return None,
                            _ => {}
                        }
                    }
                }
            }
            found
        })
        .collect()
}
