#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use bimodal_core::graph::LabeledGraph;
use bimodal_core::matrix::Matrix;
use bimodal_core::presets;
use bimodal_core::spectra::min_infnorm_ae;
use bimodal_core::synth::{merge_split_pair, synthesize, Method, SplitGraph};
use bimodal_core::verify::Anticipation;
use bimodal_core::TaggedEncoder;
use rand::Rng;

pub const DVD_A0: [[u64; 11]; 11] = [
    [42, 28, 19, 12, 8, 6, 5, 4, 3, 2, 1],
    [62, 42, 28, 19, 12, 8, 6, 5, 4, 3, 2],
    [90, 62, 42, 28, 19, 12, 8, 6, 5, 4, 3],
    [89, 61, 41, 27, 18, 12, 8, 6, 5, 4, 3],
    [88, 60, 40, 26, 17, 11, 8, 6, 5, 4, 3],
    [86, 59, 39, 25, 16, 10, 7, 6, 5, 4, 3],
    [82, 57, 38, 24, 15, 9, 6, 5, 5, 4, 3],
    [75, 53, 36, 23, 14, 8, 5, 4, 4, 4, 3],
    [65, 46, 32, 21, 13, 7, 4, 3, 3, 3, 3],
    [50, 36, 25, 17, 11, 6, 3, 2, 2, 2, 2],
    [29, 21, 15, 10, 7, 4, 2, 1, 1, 1, 1],
];

pub const DVD_A1: [[u64; 11]; 11] = [
    [41, 29, 21, 15, 10, 7, 4, 2, 1, 1, 1],
    [60, 41, 29, 21, 15, 10, 7, 4, 2, 1, 1],
    [87, 60, 41, 29, 21, 15, 10, 7, 4, 2, 1],
    [85, 59, 41, 29, 21, 15, 10, 6, 4, 2, 1],
    [82, 57, 40, 29, 21, 15, 10, 6, 3, 2, 1],
    [78, 54, 38, 28, 21, 15, 10, 6, 3, 1, 1],
    [73, 50, 35, 26, 20, 15, 10, 6, 3, 1, 0],
    [67, 45, 31, 23, 18, 14, 10, 6, 3, 1, 0],
    [59, 39, 26, 19, 15, 12, 9, 6, 3, 1, 0],
    [47, 31, 20, 14, 11, 9, 7, 5, 3, 1, 0],
    [28, 19, 12, 8, 6, 5, 4, 3, 2, 1, 0],
];

pub const DVD_MERGED_A0: [[u64; 4]; 4] = [[42, 28, 45, 14], [62, 42, 67, 18], [86, 59, 90, 22], [50, 36, 59, 9]];
pub const DVD_MERGED_A1: [[u64; 4]; 4] = [[41, 29, 53, 8], [60, 41, 75, 14], [78, 54, 102, 20], [47, 31, 54, 16]];
pub const DVD_X: [u64; 11] = [1, 1, 2, 2, 2, 2, 1, 1, 1, 1, 0];

/// An encoder built from a fixture graph, with what is needed to check it.
pub struct FixtureEncoder {
    pub name: String,
    /// The power graph the encoder was built for.
    pub graph: LabeledGraph,
    pub encoder: TaggedEncoder,
    pub method: Method,
    pub n0: u64,
    pub n1: u64,
    /// Vector at `(n0+1, n1+1)` used by the punctured method.
    pub x_plus: Option<Vec<u64>>,
}

fn build(name: &str, g: LabeledGraph, n0: u64, n1: u64, method: Method, x: Option<Vec<u64>>) -> FixtureEncoder {
    let x_plus = (method == Method::Punctured).then(|| match &x {
        Some(x) => x.clone(),
        None => {
            let p = g.adjacency_pair();
            min_infnorm_ae(&p.a0, &p.a1, n0 + 1, n1 + 1, 64)
                .unwrap()
                .1
                .entries()
                .to_vec()
        }
    });
    let x = x_plus.clone().or(x);
    let encoder = synthesize(&g, n0, n1, method, x.as_deref(), 64).unwrap_or_else(|e| panic!("{name}: {e}"));
    FixtureEncoder {
        name: format!("{name} {method} ({n0},{n1})"),
        graph: g,
        encoder,
        method,
        n0,
        n1,
        x_plus,
    }
}

/// Every encoder synthesized from the fixture graphs.
pub fn fixture_encoders() -> Vec<FixtureEncoder> {
    let cube = || presets::example3().power(3);
    vec![
        build("fig1", presets::fig1(), 2, 2, Method::Det, None),
        build("example3^2", presets::example3().power(2), 1, 1, Method::Det, None),
        build("example3^3", cube(), 3, 3, Method::Stether, None),
        build("example3^3", cube(), 3, 3, Method::Split, None),
        build("example3^3", cube(), 2, 2, Method::Punctured, None),
        build(
            "example4^4",
            presets::example4().power(4),
            6,
            6,
            Method::Stether,
            Some(vec![3, 2]),
        ),
        build(
            "example4^4",
            presets::example4().power(4),
            5,
            5,
            Method::Punctured,
            Some(vec![3, 2]),
        ),
        build("example5", presets::example5(), 2, 3, Method::Stether, None),
        build("example5", presets::example5(), 1, 2, Method::Punctured, None),
        build(
            "appendix",
            presets::appendix(),
            2,
            2,
            Method::Stether,
            Some(vec![1, 2, 3, 3]),
        ),
        build("dvd", presets::dvd(), 173, 178, Method::Split, None),
        build("dvd", presets::dvd(), 172, 177, Method::Punctured, Some(DVD_X.to_vec())),
    ]
}

type DescEdge = ((&'static str, u64), &'static str, (&'static str, u64));

/// Class-0 split of the hex appendix graph at `x = (1,2,3,3)`, `n = 2`.
/// State `delta` splits into `delta:0` (edge `c`) and two descendants
/// sharing the `a` and `e` edges; `gamma` uses the crossing picture.
fn appendix_e0_edges() -> Vec<DescEdge> {
    let (a, b, g, d) = ("alpha", "beta", "gamma", "delta");
    vec![
        ((a, 0), "0", (b, 0)),
        ((a, 0), "0", (b, 1)),
        ((b, 0), "2", (a, 0)),
        ((b, 0), "4", (g, 0)),
        ((b, 1), "4", (g, 1)),
        ((b, 1), "4", (g, 2)),
        ((g, 0), "6", (d, 0)),
        ((g, 0), "8", (d, 0)),
        ((g, 1), "6", (d, 1)),
        ((g, 1), "6", (d, 2)),
        ((g, 2), "8", (d, 1)),
        ((g, 2), "8", (d, 2)),
        ((d, 0), "c", (b, 0)),
        ((d, 0), "c", (b, 1)),
        ((d, 1), "a", (d, 0)),
        ((d, 1), "e", (a, 0)),
        ((d, 2), "a", (d, 1)),
        ((d, 2), "a", (d, 2)),
    ]
}

/// The class-1 split mirrors class 0: labels shift by one and the roles of
/// `gamma` and `delta` swap.
fn mirror(edges: &[DescEdge]) -> Vec<DescEdge> {
    let state = |s: &'static str| match s {
        "gamma" => "delta",
        "delta" => "gamma",
        other => other,
    };
    let label = |l: &'static str| -> &'static str {
        const EVEN: [&str; 8] = ["0", "2", "4", "6", "8", "a", "c", "e"];
        const ODD: [&str; 8] = ["1", "3", "5", "7", "9", "b", "d", "f"];
        ODD[EVEN.iter().position(|&e| e == l).expect("even label")]
    };
    edges
        .iter()
        .map(|&((s, i), l, (t, j))| ((state(s), i), label(l), (state(t), j)))
        .collect()
}

pub fn appendix_splits() -> (SplitGraph, SplitGraph) {
    let g = presets::appendix();
    let x = [1, 2, 3, 3];
    let e0 = appendix_e0_edges();
    (
        SplitGraph::from_descendant_edges(&g, &x, &e0).unwrap(),
        SplitGraph::from_descendant_edges(&g, &x, &mirror(&e0)).unwrap(),
    )
}

pub fn permutations3() -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

/// All 36 merges of the appendix splits. `phi0` sends class-1 descendants
/// of `gamma` to class-0 ones; `phi1` sends class-0 descendants of `delta`
/// to class-1 ones.
pub fn appendix_matchings() -> Vec<(Vec<u64>, Vec<u64>, TaggedEncoder)> {
    let (s0, s1) = appendix_splits();
    let mut out = Vec::new();
    for phi0 in permutations3() {
        for phi1 in permutations3() {
            let mut inv1 = vec![0; 3];
            for (i, &j) in phi1.iter().enumerate() {
                inv1[j as usize] = i as u64;
            }
            let perm = vec![vec![0], vec![0, 1], phi0.clone(), inv1];
            let e = merge_split_pair(&s0, &s1, Some(&perm)).unwrap();
            out.push((phi0.clone(), phi1.clone(), e));
        }
    }
    out
}

pub fn matrix(rows: &[impl AsRef<[u64]>]) -> Matrix {
    Matrix::from_rows(rows)
}

// ---- random instances -------------------------------------------------

/// Random graph on at most 4 states and 8 distinct edges over `{a,b,c}`,
/// with `a`,`b` even and `c` odd.
pub fn random_graph(rng: &mut impl Rng) -> LabeledGraph {
    let k = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=8);
    let names: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    let mut b = LabeledGraph::builder()
        .states(names.iter().cloned())
        .symbols(0, ["a", "b"])
        .symbol("c", 1);
    let mut seen = HashSet::new();
    for _ in 0..m {
        let e = (rng.gen_range(0..k), rng.gen_range(0..3), rng.gen_range(0..k));
        if seen.insert(e) {
            b.add_edge(&names[e.0], ["a", "b", "c"][e.1], &names[e.2], 1);
        }
    }
    b.build().unwrap()
}

pub fn random_matrix(rng: &mut impl Rng, k: usize, max: u64) -> Matrix {
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|_| (0..k).map(|_| rng.gen_range(0..=max)).collect())
        .collect();
    Matrix::from_rows(&rows)
}

// ---- brute-force oracles ----------------------------------------------

/// Componentwise join of every vector `x ≤ xi` with `A_b x ≥ n_b x`.
pub fn brute_franaszek(a0: &Matrix, a1: &Matrix, n0: u64, n1: u64, xi: u64) -> Vec<u64> {
    let k = a0.dim();
    let mut best = vec![0; k];
    let mut x = vec![0u64; k];
    loop {
        let ok = [(a0, n0), (a1, n1)]
            .iter()
            .all(|(a, n)| a.mul_vec(&x).iter().zip(&x).all(|(&l, &r)| l >= n * r));
        if ok {
            for i in 0..k {
                best[i] = best[i].max(x[i]);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return best;
            }
            if x[i] < xi {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Lossless iff no word is read along two paths with common start and end.
/// Tracks, for each start state, the vector of path counts per end state
/// (capped at 2) over all words.
pub fn brute_lossless(g: &LabeledGraph) -> bool {
    let n = g.num_states();
    for s in 0..n {
        let mut start = vec![0u8; n];
        start[s] = 1;
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            if c.iter().any(|&k| k >= 2) {
                return false;
            }
            for a in 0..g.alphabet().len() {
                let mut next = vec![0u8; n];
                for u in 0..n {
                    for e in g.out_edges(u).iter().filter(|e| e.label == a) {
                        next[e.to] = (next[e.to] + c[u]).min(2);
                    }
                }
                if next.iter().any(|&k| k > 0) {
                    stack.push(next);
                }
            }
        }
    }
    true
}

/// Some word of length `len` leaves `s` along two distinct first edges.
fn ambiguous_at(g: &LabeledGraph, len: usize) -> bool {
    let n = g.num_states();
    for s in 0..n {
        let out = g.out_edges(s);
        for (i, e1) in out.iter().enumerate() {
            for e2 in &out[i + 1..] {
                if e1.label != e2.label {
                    continue;
                }
                let mut frontier: BTreeSet<(Vec<bool>, Vec<bool>)> = BTreeSet::new();
                let single = |v: usize| {
                    let mut b = vec![false; n];
                    b[v] = true;
                    b
                };
                frontier.insert((single(e1.to), single(e2.to)));
                for _ in 0..len {
                    let mut next = BTreeSet::new();
                    for (p, q) in &frontier {
                        for a in 0..g.alphabet().len() {
                            let step = |set: &Vec<bool>| {
                                let mut r = vec![false; n];
                                for u in (0..n).filter(|&u| set[u]) {
                                    for e in g.out_edges(u).iter().filter(|e| e.label == a) {
                                        r[e.to] = true;
                                    }
                                }
                                r
                            };
                            let (p2, q2) = (step(p), step(q));
                            if p2.contains(&true) && q2.contains(&true) {
                                next.insert((p2, q2));
                            }
                        }
                    }
                    frontier = next;
                }
                if !frontier.is_empty() {
                    return true;
                }
            }
        }
    }
    false
}

/// Anticipation by direct word enumeration. Ambiguity surviving `|V|^2`
/// further symbols must run through a repeated state pair, hence forever.
pub fn brute_anticipation(g: &LabeledGraph) -> Anticipation {
    let bound = g.num_states() * g.num_states();
    if ambiguous_at(g, bound) {
        return Anticipation::Infinite;
    }
    match (0..bound).rev().find(|&len| ambiguous_at(g, len)) {
        Some(len) => Anticipation::Finite(len + 1),
        None => Anticipation::Finite(0),
    }
}
