use crate::error::{Error, Result};
use crate::graph::{determinize, irreducible_components, is_deterministic, simulation, LabeledGraph};
use crate::spectra::ApproxEigenvector;

/// Recovers a joint approximate eigenvector of `g` from an encoder `e`.
///
/// Determinizes `e`, keeps the sink component containing the least state
/// name, weights each subset state by its size (which must be a joint
/// eigenvector there), and lets each state of `g` take the largest weight
/// of a subset state it follows.
pub fn witness_ae(e: &LabeledGraph, g: &LabeledGraph, n0: u64, n1: u64) -> Result<ApproxEigenvector> {
    if !is_deterministic(g) {
        return Err(Error::NotDeterministic);
    }
    let det = determinize(e);
    let h = &det.graph;
    let sink = irreducible_components(h)
        .into_iter()
        .filter(|c| c.is_sink)
        .min_by(|a, b| {
            let least =
                |c: &crate::graph::Component| c.states.iter().map(|&z| h.state_name(z)).min().map(str::to_string);
            least(a).cmp(&least(b))
        })
        .ok_or_else(|| Error::PreconditionFailed("encoder has no states".into()))?;
    let c: Vec<u64> = sink.states.iter().map(|&z| det.members[z].len() as u64).collect();
    let pair = sink.graph.adjacency_pair();
    for (b, n) in [(0u8, n0), (1u8, n1)] {
        let ac = pair.get(b).mul_vec(&c);
        if ac.iter().zip(&c).any(|(&l, &r)| l != n * r) {
            return Err(Error::PreconditionFailed(format!(
                "subset sizes are not a class-{b} eigenvector for {n}"
            )));
        }
    }
    let sim = simulation(&sink.graph, g);
    let x: Vec<u64> = (0..g.num_states())
        .map(|u| (0..c.len()).filter(|&z| sim[z][u]).map(|z| c[z]).max().unwrap_or(0))
        .collect();
    ApproxEigenvector::new(&g.adjacency_pair(), x, n0, n1)
        .map_err(|err| Error::PreconditionFailed(format!("recovered vector fails: {err}")))
}
