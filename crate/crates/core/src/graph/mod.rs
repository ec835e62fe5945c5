//! Labeled graphs with a parity split of the alphabet.

mod analysis;
pub(crate) mod digraph;
mod follower;
pub(crate) mod pairs;

pub use analysis::{irreducible_components, is_deterministic, memory, period, Component, Memory};
pub use follower::{determinize, merge_states, simulation, Determinized, Merged};

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub type StateId = usize;
pub type SymbolId = usize;

/// Bit for the even class in a class mask.
pub const EVEN: u8 = 1;
/// Bit for the odd class in a class mask.
pub const ODD: u8 = 2;

/// Mask bit for class `b` (0 or 1).
pub fn class_bit(b: u8) -> u8 {
    1 << b
}

/// An alphabet symbol. Symbols of a power graph are words whose components
/// are joined with `.`; ordering compares the component sequences.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(text: impl Into<String>) -> Self {
        Symbol(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn components(&self) -> impl Iterator<Item = &str> {
        self.0.split('.')
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.components().cmp(other.components())
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityPartition {
    pub class0: BTreeSet<Symbol>,
    pub class1: BTreeSet<Symbol>,
}

impl ParityPartition {
    /// True when no symbol lies in both classes.
    pub fn strict(&self) -> bool {
        self.class0.is_disjoint(&self.class1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: StateId,
    pub label: SymbolId,
    pub to: StateId,
}

/// Per-parity adjacency matrices over the graph's state order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyPair {
    pub a0: Matrix,
    pub a1: Matrix,
    pub states: Vec<String>,
}

impl AdjacencyPair {
    pub fn get(&self, b: u8) -> &Matrix {
        if b == 0 {
            &self.a0
        } else {
            &self.a1
        }
    }
}

/// Immutable labeled graph. Symbol ids follow the canonical symbol order and
/// edges are kept sorted by (source, label, target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    states: Vec<String>,
    alphabet: Vec<Symbol>,
    classes: Vec<u8>,
    edges: Vec<Edge>,
    out_start: Vec<usize>,
}

impl LabeledGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Assembles a graph from trusted parts. Symbols are re-sorted into
    /// canonical order and edges re-labeled accordingly.
    pub(crate) fn from_parts(
        states: Vec<String>,
        alphabet: Vec<(Symbol, u8)>,
        edges: Vec<(StateId, SymbolId, StateId)>,
    ) -> LabeledGraph {
        let mut order: Vec<usize> = (0..alphabet.len()).collect();
        order.sort_by(|&a, &b| alphabet[a].0.cmp(&alphabet[b].0));
        let mut remap = vec![0; alphabet.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let classes = order.iter().map(|&i| alphabet[i].1).collect();
        let alphabet: Vec<Symbol> = order.iter().map(|&i| alphabet[i].0.clone()).collect();
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(from, l, to)| Edge {
                from,
                label: remap[l],
                to,
            })
            .collect();
        edges.sort();
        Self::with_sorted(states, alphabet, classes, edges)
    }

    /// Same alphabet as `self`, new states and edges.
    pub(crate) fn with_edges(&self, states: Vec<String>, mut edges: Vec<Edge>) -> LabeledGraph {
        edges.sort();
        Self::with_sorted(states, self.alphabet.clone(), self.classes.clone(), edges)
    }

    fn with_sorted(states: Vec<String>, alphabet: Vec<Symbol>, classes: Vec<u8>, edges: Vec<Edge>) -> LabeledGraph {
        let mut out_start = vec![0; states.len() + 1];
        for e in &edges {
            out_start[e.from + 1] += 1;
        }
        for i in 0..states.len() {
            out_start[i + 1] += out_start[i];
        }
        LabeledGraph {
            states,
            alphabet,
            classes,
            edges,
            out_start,
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s]
    }

    pub fn state_index(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn symbol(&self, id: SymbolId) -> &Symbol {
        &self.alphabet[id]
    }

    pub fn symbol_id(&self, text: &str) -> Option<SymbolId> {
        let probe = Symbol::new(text);
        self.alphabet.binary_search(&probe).ok()
    }

    /// Class mask of a symbol: bit 0 for even, bit 1 for odd.
    pub fn class_mask(&self, id: SymbolId) -> u8 {
        self.classes[id]
    }

    pub fn in_class(&self, id: SymbolId, b: u8) -> bool {
        self.classes[id] & class_bit(b) != 0
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Index range of the out-edges of `u` in `edges()`.
    pub fn out_range(&self, u: StateId) -> std::ops::Range<usize> {
        self.out_start[u]..self.out_start[u + 1]
    }

    pub fn out_edges(&self, u: StateId) -> &[Edge] {
        &self.edges[self.out_range(u)]
    }

    pub fn parity(&self) -> ParityPartition {
        let pick = |b: u8| {
            self.alphabet
                .iter()
                .enumerate()
                .filter(|(i, _)| self.in_class(*i, b))
                .map(|(_, s)| s.clone())
                .collect()
        };
        ParityPartition {
            class0: pick(0),
            class1: pick(1),
        }
    }

    pub fn is_strict(&self) -> bool {
        self.classes.iter().all(|&c| c != EVEN | ODD)
    }

    /// Target of the edge from `u` labeled `a`, for deterministic graphs.
    pub fn successor(&self, u: StateId, a: SymbolId) -> Option<StateId> {
        let out = self.out_edges(u);
        let i = out.partition_point(|e| e.label < a);
        out.get(i).filter(|e| e.label == a).map(|e| e.to)
    }

    /// Number of edges sharing each `(source, label, target)` triple, in
    /// canonical edge order.
    pub fn multiplicities(&self) -> Vec<(Edge, usize)> {
        let mut out: Vec<(Edge, usize)> = Vec::new();
        for e in &self.edges {
            match out.last_mut() {
                Some((last, k)) if last == e => *k += 1,
                _ => out.push((*e, 1)),
            }
        }
        out
    }

    /// Full adjacency matrix; each edge counted once.
    pub fn adjacency(&self) -> Matrix {
        let mut m = Matrix::zeros(self.num_states());
        for e in &self.edges {
            m[(e.from, e.to)] += 1;
        }
        m
    }

    /// Subgraph on the given states (in the given order) with induced edges.
    pub fn induced_subgraph(&self, keep: &[StateId]) -> LabeledGraph {
        let mut pos = vec![usize::MAX; self.num_states()];
        for (i, &s) in keep.iter().enumerate() {
            pos[s] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| pos[e.from] != usize::MAX && pos[e.to] != usize::MAX)
            .map(|e| Edge {
                from: pos[e.from],
                label: e.label,
                to: pos[e.to],
            })
            .collect();
        let names = keep.iter().map(|&s| self.states[s].clone()).collect();
        self.with_edges(names, edges)
    }

    /// The subgraph of edges whose label lies in class `b`.
    pub fn parity_subgraph(&self, b: u8) -> LabeledGraph {
        let edges = self
            .edges
            .iter()
            .filter(|e| self.in_class(e.label, b))
            .copied()
            .collect();
        self.with_edges(self.states.clone(), edges)
    }

    pub fn adjacency_pair(&self) -> AdjacencyPair {
        let n = self.num_states();
        let mut a = [Matrix::zeros(n), Matrix::zeros(n)];
        for e in &self.edges {
            for b in 0..2u8 {
                if self.in_class(e.label, b) {
                    a[b as usize][(e.from, e.to)] += 1;
                }
            }
        }
        let [a0, a1] = a;
        AdjacencyPair {
            a0,
            a1,
            states: self.states.clone(),
        }
    }

    /// The t-th power: one edge per path of length t, labeled by the word
    /// of the path. Word classes combine component classes by XOR.
    pub fn power(&self, t: usize) -> LabeledGraph {
        assert!(t >= 1, "power requires t >= 1");
        let mut words: HashMap<Vec<SymbolId>, usize> = HashMap::new();
        let mut alphabet: Vec<(Symbol, u8)> = Vec::new();
        let mut edges = Vec::new();
        let mut path: Vec<SymbolId> = Vec::with_capacity(t);
        for s in 0..self.num_states() {
            self.power_walk(s, s, t, &mut path, &mut words, &mut alphabet, &mut edges);
        }
        Self::from_parts(self.states.clone(), alphabet, edges)
    }

    #[allow(clippy::too_many_arguments)]
    fn power_walk(
        &self,
        start: StateId,
        at: StateId,
        left: usize,
        path: &mut Vec<SymbolId>,
        words: &mut HashMap<Vec<SymbolId>, usize>,
        alphabet: &mut Vec<(Symbol, u8)>,
        edges: &mut Vec<(StateId, SymbolId, StateId)>,
    ) {
        if left == 0 {
            let id = *words.entry(path.clone()).or_insert_with(|| {
                let text: Vec<&str> = path.iter().map(|&l| self.alphabet[l].as_str()).collect();
                let mask = path.iter().fold(EVEN, |m, &l| xor_masks(m, self.classes[l]));
                alphabet.push((Symbol::new(text.join(".")), mask));
                alphabet.len() - 1
            });
            edges.push((start, id, at));
            return;
        }
        for e in self.out_edges(at) {
            path.push(e.label);
            self.power_walk(start, e.to, left - 1, path, words, alphabet, edges);
            path.pop();
        }
    }
}

/// Classes reachable as `b1 ^ b2` with `b1` in `m1` and `b2` in `m2`.
fn xor_masks(m1: u8, m2: u8) -> u8 {
    let mut out = 0;
    for b1 in 0..2u8 {
        for b2 in 0..2u8 {
            if m1 & class_bit(b1) != 0 && m2 & class_bit(b2) != 0 {
                out |= class_bit(b1 ^ b2);
            }
        }
    }
    out
}

/// Collects states, symbols and edges by name and validates them.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    states: Vec<String>,
    symbols: Vec<(String, u8)>,
    edges: Vec<(String, String, String, usize)>,
}

impl GraphBuilder {
    pub fn state(mut self, name: impl Into<String>) -> Self {
        self.add_state(name);
        self
    }

    pub fn states<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for n in names {
            self.add_state(n);
        }
        self
    }

    /// Declares `symbol` in class `b`. Declaring it in both classes makes an
    /// overlapping cover.
    pub fn symbol(mut self, symbol: impl Into<String>, b: u8) -> Self {
        self.add_symbol(symbol, b);
        self
    }

    pub fn symbols<I, S>(mut self, b: u8, symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for s in symbols {
            self.add_symbol(s, b);
        }
        self
    }

    pub fn edge(mut self, src: &str, symbol: &str, dst: &str) -> Self {
        self.add_edge(src, symbol, dst, 1);
        self
    }

    pub fn add_state(&mut self, name: impl Into<String>) {
        self.states.push(name.into());
    }

    pub fn add_symbol(&mut self, symbol: impl Into<String>, b: u8) {
        self.symbols.push((symbol.into(), class_bit(b)));
    }

    /// Adds `count` parallel copies of an edge. Counts above one are only
    /// meaningful for power graphs.
    pub fn add_edge(&mut self, src: &str, symbol: &str, dst: &str, count: usize) {
        self.edges
            .push((src.to_string(), symbol.to_string(), dst.to_string(), count));
    }

    pub fn build(self) -> Result<LabeledGraph> {
        let mut errs = Vec::new();
        let mut state_ix: HashMap<&str, usize> = HashMap::new();
        for (i, s) in self.states.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                errs.push(format!("bad state name {s:?}"));
            }
            if state_ix.insert(s, i).is_some() {
                errs.push(format!("duplicate state {s}"));
            }
        }
        let mut sym_ix: HashMap<&str, usize> = HashMap::new();
        let mut alphabet: Vec<(Symbol, u8)> = Vec::new();
        for (s, bit) in &self.symbols {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                errs.push(format!("bad symbol {s:?}"));
            }
            match sym_ix.get(s.as_str()) {
                Some(&i) => {
                    if alphabet[i].1 & bit != 0 {
                        errs.push(format!("symbol {s} declared twice in one class"));
                    }
                    alphabet[i].1 |= bit;
                }
                None => {
                    sym_ix.insert(s, alphabet.len());
                    alphabet.push((Symbol::new(s.clone()), *bit));
                }
            }
        }
        for b in 0..2u8 {
            if !alphabet.iter().any(|(_, m)| m & class_bit(b) != 0) {
                errs.push(format!("parity class {b} is empty"));
            }
        }
        let mut edges = Vec::new();
        let mut seen = HashMap::new();
        for (src, sym, dst, count) in &self.edges {
            let u = state_ix.get(src.as_str());
            let v = state_ix.get(dst.as_str());
            let a = sym_ix.get(sym.as_str());
            if u.is_none() {
                errs.push(format!("edge from undeclared state {src}"));
            }
            if v.is_none() {
                errs.push(format!("edge to undeclared state {dst}"));
            }
            if a.is_none() {
                errs.push(format!("edge label {sym} is not in the alphabet"));
            }
            if *count == 0 {
                errs.push(format!("edge {src} {sym} {dst} has multiplicity 0"));
            }
            if let (Some(&u), Some(&a), Some(&v)) = (u, a, v) {
                if seen.insert((u, a, v), ()).is_some() {
                    errs.push(format!("duplicate edge {src} {sym} {dst}"));
                }
                for _ in 0..*count {
                    edges.push((u, a, v));
                }
            }
        }
        if !errs.is_empty() {
            return Err(Error::Validation(errs));
        }
        Ok(LabeledGraph::from_parts(self.states, alphabet, edges))
    }
}
