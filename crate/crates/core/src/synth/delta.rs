//! Edge bundles `Δ_b(u)` and their interval partitions.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, StateId, SymbolId, EVEN, ODD};

/// Element `(a, j)` of a bundle: the out-edge labeled `a` (given by edge
/// index) paired with a descendant index `j` of its target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeltaElem {
    pub edge: usize,
    pub symbol: SymbolId,
    pub j: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSet {
    pub state: StateId,
    pub class: u8,
    pub elements: Vec<DeltaElem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPartition {
    pub state: StateId,
    pub class: u8,
    pub groups: Vec<Vec<DeltaElem>>,
}

/// All `(a, j)` with `a` a class-`b` label out of `u` and `j < x` of the
/// target. Symbols lying in both classes come first, then the rest, each in
/// canonical order; for strict partitions this is plain canonical order.
pub fn build_delta(g: &LabeledGraph, x: &[u64], u: StateId, b: u8) -> DeltaSet {
    let shared = |a: SymbolId| g.class_mask(a) == EVEN | ODD;
    let mut edges: Vec<usize> = g.out_range(u).filter(|&i| g.in_class(g.edges()[i].label, b)).collect();
    edges.sort_by_key(|&i| (!shared(g.edges()[i].label), i));
    let elements = edges
        .into_iter()
        .flat_map(|i| {
            let e = g.edges()[i];
            (0..x[e.to]).map(move |j| DeltaElem {
                edge: i,
                symbol: e.label,
                j,
            })
        })
        .collect();
    DeltaSet {
        state: u,
        class: b,
        elements,
    }
}

/// Group `i` holds the elements at running offsets `[i·n, (i+1)·n)`; the
/// elements past `x_u·n` are dropped.
pub fn stether_partition(delta: &DeltaSet, x_u: u64, n: u64) -> Result<DeltaPartition> {
    let (x_u, n) = (x_u as usize, n as usize);
    if delta.elements.len() < x_u * n {
        return Err(Error::InsufficientWeight {
            state: delta.state.to_string(),
            class: delta.class,
        });
    }
    let groups = (0..x_u).map(|i| delta.elements[i * n..(i + 1) * n].to_vec()).collect();
    Ok(DeltaPartition {
        state: delta.state,
        class: delta.class,
        groups,
    })
}

/// Partitions for both classes at `u` such that a shared element sits in
/// the same group index in both. The class with the smaller out-degree is
/// partitioned first; each group of the other class starts from the shared
/// elements of the matching group and is topped up with elements whose
/// label belongs to that class only.
pub fn cover_consistent_partition(
    g: &LabeledGraph,
    x: &[u64],
    u: StateId,
    n0: u64,
    n1: u64,
) -> Result<(DeltaPartition, DeltaPartition)> {
    let (first, n_first, n_second) = if n0 <= n1 { (0u8, n0, n1) } else { (1u8, n1, n0) };
    let second = 1 - first;
    let lead = stether_partition(&build_delta(g, x, u, first), x[u], n_first)?;
    let other = build_delta(g, x, u, second);
    let is_shared = |el: &DeltaElem| g.class_mask(el.symbol) == EVEN | ODD;
    let mut pool = other.elements.iter().filter(|el| !is_shared(el));
    let mut groups = Vec::with_capacity(lead.groups.len());
    for grp in &lead.groups {
        let mut out: Vec<DeltaElem> = grp.iter().filter(|el| is_shared(el)).copied().collect();
        while (out.len() as u64) < n_second {
            match pool.next() {
                Some(el) => out.push(*el),
                None => {
                    return Err(Error::InsufficientWeight {
                        state: g.state_name(u).to_string(),
                        class: second,
                    })
                }
            }
        }
        groups.push(out);
    }
    let follow = DeltaPartition {
        state: u,
        class: second,
        groups,
    };
    Ok(if first == 0 { (lead, follow) } else { (follow, lead) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn texts(g: &LabeledGraph, els: &[DeltaElem]) -> Vec<(String, u64)> {
        els.iter().map(|e| (g.symbol(e.symbol).to_string(), e.j)).collect()
    }

    #[test]
    fn delta_of_fig5() {
        let g = presets::example3();
        let d = build_delta(&g, &[2, 1], 0, 0);
        assert_eq!(
            texts(&g, &d.elements),
            [("a".into(), 0), ("a".into(), 1), ("b".into(), 0)]
        );
        assert!(build_delta(&g, &[2, 1], 1, 0).elements.is_empty());
    }

    #[test]
    fn delta_of_square() {
        let g = presets::example3().power(2);
        let d = build_delta(&g, &[1, 1], 0, 1);
        assert_eq!(texts(&g, &d.elements), [("a.c".into(), 0), ("b.d".into(), 0)]);
    }

    #[test]
    fn partition_keeps_prefix() {
        let g = presets::example3();
        let d = build_delta(&g, &[2, 1], 0, 0);
        let p = stether_partition(&d, 1, 2).unwrap();
        assert_eq!(p.groups.len(), 1);
        assert_eq!(texts(&g, &p.groups[0]), [("a".into(), 0), ("a".into(), 1)]);
        let p = stether_partition(&d, 3, 1).unwrap();
        assert_eq!(p.groups.iter().map(Vec::len).sum::<usize>(), 3);
        assert!(matches!(
            stether_partition(&d, 2, 2),
            Err(Error::InsufficientWeight { .. })
        ));
    }

    fn shared_loop_graph() -> LabeledGraph {
        LabeledGraph::builder()
            .state("s")
            .symbol("p", 0)
            .symbol("p", 1)
            .symbol("q", 1)
            .edge("s", "p", "s")
            .edge("s", "q", "s")
            .build()
            .unwrap()
    }

    #[test]
    fn shared_element_lands_in_both_classes() {
        let g = shared_loop_graph();
        let (p0, p1) = cover_consistent_partition(&g, &[1], 0, 1, 1).unwrap();
        assert_eq!(texts(&g, &p0.groups[0]), [("p".into(), 0)]);
        assert_eq!(texts(&g, &p1.groups[0]), [("p".into(), 0)]);
    }

    #[test]
    fn strict_cover_is_independent() {
        let g = presets::example3().power(2);
        let x = [1, 1];
        let (p0, p1) = cover_consistent_partition(&g, &x, 0, 1, 1).unwrap();
        let s0 = stether_partition(&build_delta(&g, &x, 0, 0), 1, 1).unwrap();
        assert_eq!(p0, s0);
        assert_eq!(p1.groups[0].len(), 1);
    }
}
