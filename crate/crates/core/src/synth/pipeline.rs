//! End-to-end encoder synthesis from a graph and a target rate pair.

use std::fmt;
use std::str::FromStr;

use super::{extract_deterministic, merge_split_pair, split_one_round, stether, stether_punctured, TaggedEncoder};
use crate::error::{Error, Result};
use crate::graph::{merge_states, LabeledGraph};
use crate::spectra::{joint_ae_exists, min_infnorm_ae};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Subgraph from a 0-1 vector; anticipation 0.
    Det,
    /// State merging, one round of splitting per class, union.
    Split,
    Stether,
    /// Stethering at `(n0+1, n1+1)` with the top slots removed.
    Punctured,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "det" => Ok(Method::Det),
            "split" => Ok(Method::Split),
            "stether" => Ok(Method::Stether),
            "punctured" => Ok(Method::Punctured),
            other => Err(Error::PreconditionFailed(format!("unknown method {other}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Det => "det",
            Method::Split => "split",
            Method::Stether => "stether",
            Method::Punctured => "punctured",
        })
    }
}

/// Builds an `(S(g), n0, n1)`-encoder. Without `x`, the vector is the one of
/// least max-entry within `xi_cap` (for `Punctured`, at `(n0+1, n1+1)`).
pub fn synthesize(
    g: &LabeledGraph,
    n0: u64,
    n1: u64,
    method: Method,
    x: Option<&[u64]>,
    xi_cap: u64,
) -> Result<TaggedEncoder> {
    let p = g.adjacency_pair();
    let vector = |m0: u64, m1: u64, cap: u64| -> Result<Vec<u64>> {
        match x {
            Some(x) => Ok(x.to_vec()),
            None => Ok(min_infnorm_ae(&p.a0, &p.a1, m0, m1, cap)?.1.entries().to_vec()),
        }
    };
    match method {
        Method::Det => {
            let x = match x {
                Some(x) => x.to_vec(),
                None => joint_ae_exists(&p.a0, &p.a1, n0, n1, 1)?.entries().to_vec(),
            };
            extract_deterministic(g, &x, n0, n1)
        }
        Method::Stether => stether(g, &vector(n0, n1, xi_cap)?, n0, n1),
        Method::Punctured => stether_punctured(g, &vector(n0 + 1, n1 + 1, xi_cap)?, n0, n1),
        Method::Split => {
            let x = vector(n0, n1, xi_cap)?;
            let merged = merge_states(g, Some(&x))?;
            let xm = merged.restrict(&x);
            let e0 = split_one_round(&merged.graph.parity_subgraph(0), &xm, n0)?;
            let e1 = split_one_round(&merged.graph.parity_subgraph(1), &xm, n1)?;
            merge_split_pair(&e0, &e1, None)
        }
    }
}
