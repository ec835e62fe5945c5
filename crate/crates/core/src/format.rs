//! Line-oriented text format for graphs and tagged encoders.
//!
//! ```text
//! # comment
//! states: alpha beta
//! parity0: a b
//! parity1: c d
//! edge: alpha a beta        # optional trailing multiplicity
//! tag: alpha 0 1 b beta     # encoder edge: source class slot symbol target
//! ```
//!
//! `parity0:`/`parity1:` lines may repeat. A symbol listed under both makes
//! an overlapping cover.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, LabeledGraph, EVEN, ODD};
use crate::synth::{StateMeta, Tag, TaggedEncoder};

const WRAP: usize = 16;

struct Parsed {
    states: Vec<String>,
    symbols: Vec<(String, u8)>,
    edges: Vec<(String, String, String, usize, usize)>,
    tags: Vec<(usize, Tag, String, String, String)>,
}

fn perr(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn parse(text: &str) -> Result<Parsed> {
    let mut p = Parsed {
        states: Vec::new(),
        symbols: Vec::new(),
        edges: Vec::new(),
        tags: Vec::new(),
    };
    let mut saw_states = false;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, rest) = body
            .split_once(':')
            .ok_or_else(|| perr(line, format!("expected `key: ...`, got {body:?}")))?;
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "states" => {
                if saw_states {
                    return Err(perr(line, "states declared twice"));
                }
                saw_states = true;
                p.states.extend(fields.iter().map(|s| s.to_string()));
            }
            "parity0" => p.symbols.extend(fields.iter().map(|s| (s.to_string(), 0))),
            "parity1" => p.symbols.extend(fields.iter().map(|s| (s.to_string(), 1))),
            "edge" => {
                let mult = match fields.len() {
                    3 => 1,
                    4 => fields[3]
                        .parse()
                        .map_err(|_| perr(line, format!("bad multiplicity {:?}", fields[3])))?,
                    n => return Err(perr(line, format!("edge needs 3 or 4 fields, got {n}"))),
                };
                p.edges
                    .push((fields[0].into(), fields[1].into(), fields[2].into(), mult, line));
            }
            "tag" => {
                if fields.len() != 5 {
                    return Err(perr(line, format!("tag needs 5 fields, got {}", fields.len())));
                }
                let class = match fields[1] {
                    "0" => 0,
                    "1" => 1,
                    c => return Err(perr(line, format!("class must be 0 or 1, got {c:?}"))),
                };
                let slot = fields[2]
                    .parse()
                    .map_err(|_| perr(line, format!("bad slot {:?}", fields[2])))?;
                p.tags.push((
                    line,
                    Tag { class, slot },
                    fields[0].into(),
                    fields[3].into(),
                    fields[4].into(),
                ));
            }
            other => return Err(perr(line, format!("unknown key {other:?}"))),
        }
    }
    if !saw_states {
        return Err(perr(0, "missing `states:` line"));
    }
    Ok(p)
}

fn builder(p: &Parsed) -> crate::graph::GraphBuilder {
    let mut b = LabeledGraph::builder().states(p.states.iter().cloned());
    for (s, c) in &p.symbols {
        b.add_symbol(s.clone(), *c);
    }
    b
}

pub fn parse_graph_file(text: &str) -> Result<LabeledGraph> {
    let p = parse(text)?;
    if let Some(t) = p.tags.first() {
        return Err(perr(t.0, "tag lines belong in encoder files"));
    }
    let mut b = builder(&p);
    for (s, a, d, m, _) in &p.edges {
        b.add_edge(s, a, d, *m);
    }
    b.build()
}

/// Reads an encoder: edges come from `tag:` lines, `n0`/`n1` are one more
/// than the largest slot of each class, and states named `parent:i` record
/// their origin.
pub fn parse_encoder_file(text: &str) -> Result<TaggedEncoder> {
    let p = parse(text)?;
    if let Some(e) = p.edges.first() {
        return Err(perr(e.4, "encoder files list edges as tag lines"));
    }
    let mut b = builder(&p);
    for (_, _, s, a, d) in &p.tags {
        b.add_edge(s, a, d, 1);
    }
    let g = b.build()?;
    let mut n = [0u64; 2];
    let mut edges = Vec::with_capacity(p.tags.len());
    for (_, t, s, a, d) in &p.tags {
        n[t.class as usize] = n[t.class as usize].max(t.slot + 1);
        let edge = Edge {
            from: g.state_index(s).expect("validated"),
            label: g.symbol_id(a).expect("validated"),
            to: g.state_index(d).expect("validated"),
        };
        edges.push((edge, *t));
    }
    let meta = g
        .states()
        .iter()
        .map(|name| {
            let (parent, i) = name.rsplit_once(':')?;
            Some(StateMeta {
                parent: parent.to_string(),
                index: i.parse().ok()?,
            })
        })
        .collect();
    TaggedEncoder::from_tagged_edges(&g, g.states().to_vec(), edges, n[0], n[1], meta)
}

fn header(g: &LabeledGraph, out: &mut String) {
    let _ = writeln!(out, "states: {}", g.states().join(" "));
    for (b, bit) in [(0, EVEN), (1, ODD)] {
        let syms: Vec<&str> = g
            .alphabet()
            .iter()
            .enumerate()
            .filter(|(a, _)| g.class_mask(*a) & bit != 0)
            .map(|(_, s)| s.as_str())
            .collect();
        for chunk in syms.chunks(WRAP) {
            let _ = writeln!(out, "parity{b}: {}", chunk.join(" "));
        }
    }
}

pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    header(g, &mut out);
    for (e, k) in g.multiplicities() {
        let _ = write!(
            out,
            "edge: {} {} {}",
            g.state_name(e.from),
            g.symbol(e.label),
            g.state_name(e.to)
        );
        if k > 1 {
            let _ = write!(out, " {k}");
        }
        out.push('\n');
    }
    out
}

pub fn serialize_encoder(e: &TaggedEncoder) -> String {
    let g = &e.graph;
    let mut out = String::new();
    let _ = writeln!(out, "# n0={} n1={}", e.n0, e.n1);
    header(g, &mut out);
    for (x, t) in g.edges().iter().zip(&e.tags) {
        let _ = writeln!(
            out,
            "tag: {} {} {} {} {}",
            g.state_name(x.from),
            t.class,
            t.slot,
            g.symbol(x.label),
            g.state_name(x.to)
        );
    }
    out
}

/// Graphviz rendering: class-0 edges solid, class-1 edges dashed. With
/// tags the tag decides the class and is shown in the label.
pub fn to_dot(g: &LabeledGraph, tags: Option<&[Tag]>) -> String {
    let mut out = String::from("digraph G {\n  rankdir=LR;\n");
    for s in g.states() {
        let _ = writeln!(out, "  \"{s}\";");
    }
    for (i, e) in g.edges().iter().enumerate() {
        let tag = tags.map(|t| t[i]);
        let odd = match tag {
            Some(t) => t.class == 1,
            None => g.class_mask(e.label) == ODD,
        };
        let label = match tag {
            Some(t) => format!("{} [{t}]", g.symbol(e.label)),
            None => g.symbol(e.label).to_string(),
        };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{label}\", style={}];",
            g.state_name(e.from),
            g.state_name(e.to),
            if odd { "dashed" } else { "solid" }
        );
    }
    out.push_str("}\n");
    out
}
