//! Built-in example graphs used by tests, benches and the CLI fixtures.

use crate::graph::LabeledGraph;

fn build(states: &[&str], even: &[&str], odd: &[&str], edges: &[(&str, &str, &str)]) -> LabeledGraph {
    let mut b = LabeledGraph::builder()
        .states(states.iter().copied())
        .symbols(0, even.iter().copied())
        .symbols(1, odd.iter().copied());
    for (u, a, v) in edges {
        b = b.edge(u, a, v);
    }
    b.build().expect("preset graphs are valid")
}

/// Two-state deterministic (S,2,2)-encoder over {a,b | c,d}.
pub fn fig1() -> LabeledGraph {
    build(
        &["alpha", "beta"],
        &["a", "b"],
        &["c", "d"],
        &[
            ("alpha", "a", "alpha"),
            ("alpha", "b", "beta"),
            ("alpha", "c", "beta"),
            ("alpha", "d", "beta"),
            ("beta", "d", "alpha"),
            ("beta", "a", "beta"),
            ("beta", "b", "beta"),
            ("beta", "c", "beta"),
        ],
    )
}

const TWO_STATE_EDGES: [(&str, &str, &str); 4] = [
    ("alpha", "a", "alpha"),
    ("alpha", "b", "beta"),
    ("alpha", "c", "beta"),
    ("beta", "d", "alpha"),
];

/// Capacity-one graph with Σ0 = {a,b}, Σ1 = {c,d}.
pub fn example3() -> LabeledGraph {
    build(&["alpha", "beta"], &["a", "b"], &["c", "d"], &TWO_STATE_EDGES)
}

/// The graph of [`example3`] with Σ0 = {a}, Σ1 = {b,c,d}.
pub fn example4() -> LabeledGraph {
    build(&["alpha", "beta"], &["a"], &["b", "c", "d"], &TWO_STATE_EDGES)
}

/// Deterministic graph with even adjacency [[1,2],[2,0]] and odd adjacency
/// [[2,1],[3,5]], one distinct label per edge.
pub fn example5() -> LabeledGraph {
    build(
        &["alpha", "beta"],
        &["e1", "e2", "e3", "e4", "e5"],
        &[
            "o01", "o02", "o03", "o04", "o05", "o06", "o07", "o08", "o09", "o10", "o11",
        ],
        &[
            ("alpha", "e1", "alpha"),
            ("alpha", "e2", "beta"),
            ("alpha", "e3", "beta"),
            ("beta", "e4", "alpha"),
            ("beta", "e5", "alpha"),
            ("alpha", "o01", "alpha"),
            ("alpha", "o02", "alpha"),
            ("alpha", "o03", "beta"),
            ("beta", "o04", "alpha"),
            ("beta", "o05", "alpha"),
            ("beta", "o06", "alpha"),
            ("beta", "o07", "beta"),
            ("beta", "o08", "beta"),
            ("beta", "o09", "beta"),
            ("beta", "o10", "beta"),
            ("beta", "o11", "beta"),
        ],
    )
}

/// Three-state graph whose parity subgraphs share the eigenvector (1,2,3)
/// at eigenvalue 2, while the odd part cannot be split consistently with it.
pub fn example7() -> LabeledGraph {
    build(
        &["alpha", "beta", "gamma"],
        &["0", "2", "4", "6", "8", "a"],
        &["1", "3", "5", "7", "9"],
        &[
            ("alpha", "0", "beta"),
            ("beta", "2", "alpha"),
            ("beta", "4", "gamma"),
            ("gamma", "6", "beta"),
            ("gamma", "8", "gamma"),
            ("gamma", "a", "alpha"),
            ("alpha", "1", "beta"),
            ("beta", "3", "alpha"),
            ("beta", "5", "gamma"),
            ("gamma", "7", "gamma"),
            ("gamma", "9", "gamma"),
        ],
    )
}

/// Four-state graph over hexadecimal digits (even digits form Σ0) with
/// exact joint eigenvector (1,2,3,3) at eigenvalue 2.
pub fn appendix() -> LabeledGraph {
    build(
        &["alpha", "beta", "gamma", "delta"],
        &["0", "2", "4", "6", "8", "a", "c", "e"],
        &["1", "3", "5", "7", "9", "b", "d", "f"],
        &[
            ("alpha", "0", "beta"),
            ("beta", "2", "alpha"),
            ("beta", "4", "gamma"),
            ("gamma", "6", "delta"),
            ("gamma", "8", "delta"),
            ("delta", "c", "beta"),
            ("delta", "e", "alpha"),
            ("delta", "a", "delta"),
            ("alpha", "1", "beta"),
            ("beta", "3", "alpha"),
            ("beta", "5", "delta"),
            ("delta", "7", "gamma"),
            ("delta", "9", "gamma"),
            ("gamma", "d", "beta"),
            ("gamma", "f", "alpha"),
            ("gamma", "b", "gamma"),
        ],
    )
}

/// Non-deterministic three-state encoder whose labels are words.
pub fn fig10() -> LabeledGraph {
    build(
        &["alpha1", "alpha2", "beta"],
        &["aa", "bda", "cda", "db", "dc"],
        &["ab", "ac", "bdb", "bdc", "cdb", "cdc", "da"],
        &[
            ("alpha1", "bda", "alpha1"),
            ("alpha1", "cda", "alpha1"),
            ("alpha1", "bda", "alpha2"),
            ("alpha1", "cda", "alpha2"),
            ("alpha1", "bdb", "beta"),
            ("alpha1", "bdc", "beta"),
            ("alpha1", "cdb", "beta"),
            ("alpha1", "cdc", "beta"),
            ("alpha2", "aa", "alpha1"),
            ("alpha2", "aa", "alpha2"),
            ("alpha2", "ab", "beta"),
            ("alpha2", "ac", "beta"),
            ("beta", "da", "alpha1"),
            ("beta", "da", "alpha2"),
            ("beta", "db", "beta"),
            ("beta", "dc", "beta"),
        ],
    )
}

/// The `q`-th power of the (d,k)-RLL constraint as one deterministic graph.
/// State `i` means the last `i` bits were zeros; labels are `q`-bit words
/// and a word's class is its number of ones modulo two.
pub fn rll_power(d: usize, k: usize, q: usize) -> LabeledGraph {
    assert!(q <= 32 && d <= k);
    let names: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
    let mut b = LabeledGraph::builder().states(names.iter().cloned());
    let mut seen = vec![false; 1 << q];
    let mut edges = Vec::new();
    for s in 0..=k {
        for w in 0u64..(1 << q) {
            let mut run = s;
            let mut ok = true;
            for i in (0..q).rev() {
                if w >> i & 1 == 1 {
                    if run < d {
                        ok = false;
                        break;
                    }
                    run = 0;
                } else {
                    run += 1;
                    if run > k {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                seen[w as usize] = true;
                edges.push((s, w, run));
            }
        }
    }
    let text = |w: u64| format!("{w:0q$b}");
    for (w, used) in seen.iter().enumerate() {
        if *used {
            b.add_symbol(text(w as u64), (w.count_ones() % 2) as u8);
        }
    }
    for (s, w, t) in edges {
        b.add_edge(&names[s], &text(w), &names[t], 1);
    }
    b.build().expect("RLL graph is valid")
}

/// The sixteenth power of the (2,10)-RLL constraint.
pub fn dvd() -> LabeledGraph {
    rll_power(2, 10, 16)
}
