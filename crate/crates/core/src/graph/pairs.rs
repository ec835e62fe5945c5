//! Synchronized path-pair graph: node `(p, q)` for each ordered pair of
//! states, with an edge for every pair of equally-labeled edges leaving `p`
//! and `q`.

use super::{Edge, LabeledGraph, StateId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct PairStep {
    /// Index of the edge leaving `p` in `LabeledGraph::edges`.
    pub ep: usize,
    /// Index of the edge leaving `q`.
    pub eq: usize,
    pub to: usize,
}

pub(crate) struct PairGraph {
    pub n: usize,
    pub steps: Vec<Vec<PairStep>>,
}

impl PairGraph {
    pub fn new(g: &LabeledGraph) -> Self {
        let n = g.num_states();
        let mut steps = vec![Vec::new(); n * n];
        for p in 0..n {
            for q in 0..n {
                steps[p * n + q] = joint_steps(g, p, q)
                    .map(|(ep, eq)| {
                        let (a, b) = (&g.edges()[ep], &g.edges()[eq]);
                        PairStep {
                            ep,
                            eq,
                            to: a.to * n + b.to,
                        }
                    })
                    .collect();
            }
        }
        PairGraph { n, steps }
    }

    pub fn node(&self, p: StateId, q: StateId) -> usize {
        p * self.n + q
    }

    pub fn split(&self, node: usize) -> (StateId, StateId) {
        (node / self.n, node % self.n)
    }

    pub fn is_diagonal(&self, node: usize) -> bool {
        let (p, q) = self.split(node);
        p == q
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        self.steps
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s.iter().map(|st| st.to).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect()
    }
}

/// All pairs `(ep, eq)` of edge indices leaving `p` and `q` with equal labels.
pub(crate) fn joint_steps(g: &LabeledGraph, p: StateId, q: StateId) -> impl Iterator<Item = (usize, usize)> + '_ {
    let rp = g.out_range(p);
    let rq = g.out_range(q);
    let edges: &[Edge] = g.edges();
    let mut out = Vec::new();
    let (mut i, mut j) = (rp.start, rq.start);
    while i < rp.end && j < rq.end {
        let (a, b) = (edges[i].label, edges[j].label);
        if a < b {
            i += 1;
        } else if b < a {
            j += 1;
        } else {
            let i_end = (i..rp.end).find(|&k| edges[k].label != a).unwrap_or(rp.end);
            let j_end = (j..rq.end).find(|&k| edges[k].label != a).unwrap_or(rq.end);
            for x in i..i_end {
                for y in j..j_end {
                    out.push((x, y));
                }
            }
            i = i_end;
            j = j_end;
        }
    }
    out.into_iter()
}
