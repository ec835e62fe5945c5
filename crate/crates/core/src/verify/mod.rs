//! Encoder verification on the synchronized path-pair graph.

mod stream;
mod witness;

pub use stream::{
    decode_blocks, decode_stream, encode_stream, encode_tags, max_block_disparity, sliding_block_decode, symbol_bits,
    DecodeOutput, EncodeOutput, Policy,
};
pub use witness::witness_ae;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::graph::digraph::{bfs_parents, longest_paths, reachable_cycle};
use crate::graph::pairs::{joint_steps, PairGraph};
use crate::graph::{LabeledGraph, StateId};
use crate::synth::TaggedEncoder;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anticipation {
    Finite(usize),
    Infinite,
    Unknown(usize),
}

impl fmt::Display for Anticipation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anticipation::Finite(a) => write!(f, "{a}"),
            Anticipation::Infinite => f.write_str("infinite"),
            Anticipation::Unknown(cap) => write!(f, "unknown (> {cap})"),
        }
    }
}

/// A walk in the pair graph: consecutive state pairs and the labels read
/// between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWalk {
    pub nodes: Vec<(String, String)>,
    pub labels: Vec<String>,
}

impl fmt::Display for PairWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, q)) in self.nodes.iter().enumerate() {
            if i > 0 {
                write!(f, " -{}-> ", self.labels[i - 1])?;
            }
            write!(f, "({p},{q})")?;
        }
        Ok(())
    }
}

/// Proof of infinite anticipation: two distinct equally-labeled edges
/// leaving `origin`, followed by a synchronized continuation that reaches a
/// cycle and can therefore be extended forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnticipationCertificate {
    pub origin: String,
    pub first_label: String,
    pub stem: PairWalk,
    pub cycle: PairWalk,
}

impl fmt::Display for AnticipationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "from {} two edges read {}; then {}; cycle {}",
            self.origin, self.first_label, self.stem, self.cycle
        )
    }
}

/// Bounds used by [`check_encoder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub anticipation_cap: usize,
    pub m_max: usize,
    pub a_max: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            anticipation_cap: crate::DEFAULT_ANTICIPATION_CAP,
            m_max: 8,
            a_max: crate::DEFAULT_ANTICIPATION_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub out_degree_ok: [bool; 2],
    pub containment_ok: bool,
    pub lossless: bool,
    pub anticipation: Anticipation,
    pub definiteness: Option<(usize, usize)>,
    pub certificate: Option<AnticipationCertificate>,
    pub violations: Vec<String>,
}

impl VerifyReport {
    /// Out-degrees, containment and losslessness hold and no other finding
    /// was recorded.
    pub fn is_encoder(&self) -> bool {
        self.out_degree_ok[0]
            && self.out_degree_ok[1]
            && self.containment_ok
            && self.lossless
            && self.violations.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "out-degree class 0: {}", ok(self.out_degree_ok[0]))?;
        writeln!(f, "out-degree class 1: {}", ok(self.out_degree_ok[1]))?;
        writeln!(f, "containment: {}", ok(self.containment_ok))?;
        writeln!(f, "lossless: {}", ok(self.lossless))?;
        writeln!(f, "anticipation: {}", self.anticipation)?;
        match self.definiteness {
            Some((m, a)) => writeln!(f, "definiteness: ({m},{a})")?,
            None => writeln!(f, "definiteness: none within bounds")?,
        }
        if let Some(c) = &self.certificate {
            writeln!(f, "certificate: {c}")?;
        }
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

/// Targets of pairs of distinct equally-labeled edges leaving a common
/// state, with the state and label that produced them.
fn divergences(g: &LabeledGraph, pg: &PairGraph) -> Vec<(usize, StateId, usize)> {
    let mut out = Vec::new();
    for p in 0..g.num_states() {
        for (ep, eq) in joint_steps(g, p, p) {
            if ep != eq {
                let (a, b) = (g.edges()[ep], g.edges()[eq]);
                out.push((pg.node(a.to, b.to), p, ep));
            }
        }
    }
    out
}

/// No two distinct paths share start, end and word.
pub fn losslessness(g: &LabeledGraph) -> bool {
    let pg = PairGraph::new(g);
    let starts: Vec<usize> = divergences(g, &pg).iter().map(|d| d.0).collect();
    let parent = bfs_parents(&pg.successors(), &starts);
    !(0..parent.len()).any(|n| parent[n].is_some() && pg.is_diagonal(n))
}

/// Smallest lookahead fixing the first edge of a path from a known state.
pub fn anticipation(g: &LabeledGraph, cap: usize) -> Anticipation {
    anticipation_with_certificate(g, cap).0
}

pub fn anticipation_with_certificate(g: &LabeledGraph, cap: usize) -> (Anticipation, Option<AnticipationCertificate>) {
    let pg = PairGraph::new(g);
    let succ = pg.successors();
    let h = longest_paths(&succ);
    let divs = divergences(g, &pg);
    let mut a = 0;
    for &(node, _, _) in &divs {
        match h[node] {
            Some(len) => a = a.max(len + 1),
            None => {
                let starts: Vec<usize> = divs.iter().map(|d| d.0).collect();
                let cert = certificate(g, &pg, &succ, &starts, &divs);
                return (Anticipation::Infinite, cert);
            }
        }
    }
    if a > cap {
        (Anticipation::Unknown(cap), None)
    } else {
        (Anticipation::Finite(a), None)
    }
}

fn certificate(
    g: &LabeledGraph,
    pg: &PairGraph,
    succ: &[Vec<usize>],
    starts: &[usize],
    divs: &[(usize, StateId, usize)],
) -> Option<AnticipationCertificate> {
    let (stem, cycle) = reachable_cycle(succ, starts)?;
    let &(_, origin, ep) = divs.iter().find(|d| d.0 == stem[0])?;
    Some(AnticipationCertificate {
        origin: g.state_name(origin).to_string(),
        first_label: g.symbol(g.edges()[ep].label).to_string(),
        stem: walk(g, pg, &stem),
        cycle: walk(g, pg, &cycle),
    })
}

fn walk(g: &LabeledGraph, pg: &PairGraph, nodes: &[usize]) -> PairWalk {
    let names = nodes
        .iter()
        .map(|&n| {
            let (p, q) = pg.split(n);
            (g.state_name(p).to_string(), g.state_name(q).to_string())
        })
        .collect();
    let labels = nodes
        .windows(2)
        .map(|w| {
            let st = pg.steps[w[0]]
                .iter()
                .find(|s| s.to == w[1])
                .expect("walk follows pair edges");
            g.symbol(g.edges()[st.ep].label).to_string()
        })
        .collect();
    PairWalk { nodes: names, labels }
}

/// For each `m ≤ m_max`, the least `a` such that words of length `m+a+1`
/// fix their `(m+1)`-st edge; `None` when no finite `a` works.
fn definite_lookahead(g: &LabeledGraph, m_max: usize, tagged: Option<&TaggedEncoder>) -> Vec<Option<usize>> {
    let pg = PairGraph::new(g);
    let succ = pg.successors();
    let h = longest_paths(&succ);
    let mut level = vec![true; pg.steps.len()];
    let mut out = Vec::with_capacity(m_max + 1);
    for _ in 0..=m_max {
        let mut a = Some(0);
        for (node, steps) in pg.steps.iter().enumerate() {
            if !level[node] {
                continue;
            }
            for st in steps {
                let differ = match tagged {
                    Some(e) => e.tags[st.ep] != e.tags[st.eq],
                    None => st.ep != st.eq,
                };
                if differ {
                    a = match (a, h[st.to]) {
                        (Some(a), Some(len)) => Some(a.max(len + 1)),
                        _ => None,
                    };
                }
            }
        }
        out.push(a);
        let mut next = vec![false; level.len()];
        for (node, vs) in succ.iter().enumerate() {
            if level[node] {
                for &v in vs {
                    next[v] = true;
                }
            }
        }
        level = next;
    }
    out
}

/// Lexicographically least `(m+a, m)` within the bounds for which every word
/// of length `m+a+1` fixes its `(m+1)`-st edge.
pub fn definiteness(g: &LabeledGraph, m_max: usize, a_max: usize) -> Option<(usize, usize)> {
    let look = definite_lookahead(g, m_max, None);
    look.iter()
        .enumerate()
        .filter_map(|(m, a)| a.filter(|&a| a <= a_max).map(|a| (m, a)))
        .min_by_key(|&(m, a)| (m + a, m))
}

/// Every word of length `m+a+1` fixes its `(m+1)`-st edge.
pub fn is_definite(g: &LabeledGraph, m: usize, a: usize) -> bool {
    definite_lookahead(g, m, None)[m].is_some_and(|need| need <= a)
}

/// Every word of length `m+a+1` fixes the tag of its `(m+1)`-st edge.
pub fn sliding_block_decodable(e: &TaggedEncoder, m: usize, a: usize) -> bool {
    let look = definite_lookahead(&e.graph, m, Some(e));
    look[m].is_some_and(|need| need <= a)
}

/// Every word generated by `e` is generated by `g`: follows each encoder
/// state together with the set of `g`-states that could have read the same
/// word.
fn contained(e: &LabeledGraph, g: &LabeledGraph) -> Option<String> {
    let label_map: Vec<Option<usize>> = e.alphabet().iter().map(|s| g.symbol_id(s.as_str())).collect();
    let all: Vec<StateId> = (0..g.num_states()).collect();
    let mut seen: HashSet<(StateId, Vec<StateId>)> = HashSet::new();
    let mut queue = VecDeque::new();
    for p in 0..e.num_states() {
        let key = (p, all.clone());
        seen.insert(key.clone());
        queue.push_back(key);
    }
    while let Some((p, set)) = queue.pop_front() {
        for edge in e.out_edges(p) {
            let mut next: Vec<StateId> = match label_map[edge.label] {
                Some(a) => set
                    .iter()
                    .flat_map(|&u| g.out_edges(u).iter().filter(move |x| x.label == a).map(|x| x.to))
                    .collect(),
                None => Vec::new(),
            };
            if next.is_empty() {
                return Some(format!(
                    "word ending in {} from encoder state {} is not generated",
                    e.symbol(edge.label),
                    e.state_name(p)
                ));
            }
            next.sort_unstable();
            next.dedup();
            let key = (edge.to, next);
            if seen.insert(key.clone()) {
                queue.push_back(key);
            }
        }
    }
    None
}

/// Runs every structural check of `e` as an `(S(g), n0, n1)`-encoder.
pub fn check_encoder(e: &TaggedEncoder, g: &LabeledGraph, n0: u64, n1: u64, opts: VerifyOptions) -> VerifyReport {
    let enc = &e.graph;
    let mut violations = Vec::new();
    let mut out_degree_ok = [true; 2];
    for (b, n) in [(0u8, n0), (1u8, n1)] {
        for u in 0..enc.num_states() {
            let k = enc.out_edges(u).iter().filter(|x| enc.in_class(x.label, b)).count() as u64;
            if k != n {
                out_degree_ok[b as usize] = false;
                violations.push(format!(
                    "state {} has {k} class-{b} edges, expected {n}",
                    enc.state_name(u)
                ));
            }
        }
    }
    if (e.n0, e.n1) != (n0, n1) {
        violations.push(format!("encoder is tagged for ({},{})", e.n0, e.n1));
    }
    if enc.is_strict() {
        for u in 0..enc.num_states() {
            for b in 0..2u8 {
                let mut slots: Vec<u64> = enc
                    .out_range(u)
                    .filter(|&i| e.tags[i].class == b)
                    .map(|i| e.tags[i].slot)
                    .collect();
                slots.sort_unstable();
                if slots != (0..e.n(b)).collect::<Vec<_>>() {
                    violations.push(format!("state {} has incomplete class-{b} tags", enc.state_name(u)));
                }
            }
        }
    }
    let containment = contained(enc, g);
    if let Some(v) = &containment {
        violations.push(v.clone());
    }
    let lossless = losslessness(enc);
    if !lossless {
        violations.push("encoder is lossy".into());
    }
    let (anticipation, certificate) = anticipation_with_certificate(enc, opts.anticipation_cap);
    let definiteness = definiteness(enc, opts.m_max, opts.a_max);
    VerifyReport {
        out_degree_ok,
        containment_ok: containment.is_none(),
        lossless,
        anticipation,
        definiteness,
        certificate,
        violations,
    }
}
