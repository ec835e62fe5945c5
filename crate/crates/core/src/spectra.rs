//! Perron eigenvalues, joint approximate eigenvectors and rate regions.

use crate::error::{Error, Result};
use crate::graph::digraph::condense;
use crate::graph::{AdjacencyPair, LabeledGraph};
use crate::matrix::Matrix;

const MAX_ITERATIONS: usize = 1_000_000;
/// Slack added before flooring numeric eigenvalues so integral ones are
/// not lost to rounding.
const FLOOR_SLACK: f64 = 1e-6;

/// A nonzero nonnegative integer vector `x` with `a0·x ≥ n0·x` and
/// `a1·x ≥ n1·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxEigenvector {
    entries: Vec<u64>,
    n0: u64,
    n1: u64,
}

impl ApproxEigenvector {
    pub fn new(pair: &AdjacencyPair, entries: Vec<u64>, n0: u64, n1: u64) -> Result<Self> {
        Self::from_matrices(&pair.a0, &pair.a1, entries, n0, n1)
    }

    pub fn from_matrices(a0: &Matrix, a1: &Matrix, entries: Vec<u64>, n0: u64, n1: u64) -> Result<Self> {
        check_dims(a0, a1, &entries)?;
        if entries.iter().all(|&v| v == 0) {
            return Err(Error::InfeasibleVector("vector is zero".into()));
        }
        if !satisfies(a0, &entries, n0) || !satisfies(a1, &entries, n1) {
            return Err(Error::InfeasibleVector(format!(
                "{entries:?} is not a joint approximate eigenvector for ({n0},{n1})"
            )));
        }
        Ok(ApproxEigenvector { entries, n0, n1 })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn max_entry(&self) -> u64 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().sum()
    }

    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|&v| v <= 1)
    }
}

/// `a·x ≥ n·x` componentwise.
pub fn satisfies(a: &Matrix, x: &[u64], n: u64) -> bool {
    a.mul_vec(x).iter().zip(x).all(|(&ax, &xi)| ax >= n.saturating_mul(xi))
}

fn check_dims(a0: &Matrix, a1: &Matrix, x: &[u64]) -> Result<()> {
    for d in [a1.dim(), x.len()] {
        if d != a0.dim() {
            return Err(Error::DimensionMismatch {
                expected: a0.dim(),
                got: d,
            });
        }
    }
    Ok(())
}

/// Spectral radius of a nonnegative integer matrix, within `tol`.
///
/// Works per irreducible block: on each block `B + I` is primitive, so power
/// iteration from the all-ones vector squeezes the Collatz-Wielandt bounds
/// `min (Bv)_i/v_i ≤ λ ≤ max (Bv)_i/v_i` together.
pub fn perron(a: &Matrix, tol: f64) -> f64 {
    let n = a.dim();
    let succ: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| a[(i, j)] > 0).collect()).collect();
    let c = condense(&succ);
    let mut best = 0.0f64;
    for (ci, nodes) in c.comps.iter().enumerate() {
        if !c.cyclic[ci] {
            continue;
        }
        let mut nodes = nodes.clone();
        nodes.sort_unstable();
        best = best.max(perron_irreducible(&a.submatrix(&nodes), tol));
    }
    best
}

fn perron_irreducible(a: &Matrix, tol: f64) -> f64 {
    let n = a.dim();
    let mut v = vec![1.0f64; n];
    let mut estimate = 0.0;
    for _ in 0..MAX_ITERATIONS {
        let w: Vec<f64> = (0..n)
            .map(|i| v[i] + (0..n).map(|j| a[(i, j)] as f64 * v[j]).sum::<f64>())
            .collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = w[i] / v[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        estimate = (lo + hi) / 2.0 - 1.0;
        if hi - lo <= tol {
            return estimate;
        }
        let m = w.iter().cloned().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / m).collect();
    }
    estimate
}

/// `log2` of the Perron eigenvalue of the adjacency matrix.
pub fn capacity(g: &LabeledGraph, tol: f64) -> f64 {
    perron(&g.adjacency(), tol).log2()
}

/// Largest `x ≤ xi` with `a0·x ≥ n0·x` and `a1·x ≥ n1·x`, or zero.
/// A zero `n` imposes no constraint for that class.
pub fn franaszek_joint(a0: &Matrix, a1: &Matrix, n0: u64, n1: u64, xi: &[u64]) -> Result<Vec<u64>> {
    check_dims(a0, a1, xi)?;
    let mut x = xi.to_vec();
    loop {
        let mut y = x.clone();
        for (a, n) in [(a0, n0), (a1, n1)] {
            if n == 0 {
                continue;
            }
            for (yi, ax) in y.iter_mut().zip(a.mul_vec(&x)) {
                *yi = (*yi).min(ax / n);
            }
        }
        if y == x {
            break;
        }
        x = y;
    }
    assert!(satisfies(a0, &x, n0) && satisfies(a1, &x, n1));
    Ok(x)
}

/// Runs [`franaszek_joint`] from `xi_cap·1`.
pub fn joint_ae_exists(a0: &Matrix, a1: &Matrix, n0: u64, n1: u64, xi_cap: u64) -> Result<ApproxEigenvector> {
    let x = franaszek_joint(a0, a1, n0, n1, &vec![xi_cap; a0.dim()])?;
    if x.iter().all(|&v| v == 0) {
        return Err(Error::NotFoundWithin(xi_cap));
    }
    Ok(ApproxEigenvector { entries: x, n0, n1 })
}

/// Smallest max-entry over joint approximate eigenvectors within `xi_cap`,
/// with the largest vector attaining it.
pub fn min_infnorm_ae(a0: &Matrix, a1: &Matrix, n0: u64, n1: u64, xi_cap: u64) -> Result<(u64, ApproxEigenvector)> {
    // Success is monotone in the cap, so the first successful cap can be
    // found by bisection; the result coincides with a linear scan.
    let mut hi = joint_ae_exists(a0, a1, n0, n1, xi_cap)?;
    let (mut lo_cap, mut hi_cap) = (0u64, xi_cap);
    while hi_cap - lo_cap > 1 {
        let mid = lo_cap + (hi_cap - lo_cap) / 2;
        match joint_ae_exists(a0, a1, n0, n1, mid) {
            Ok(x) => {
                hi = x;
                hi_cap = mid;
            }
            Err(_) => lo_cap = mid,
        }
    }
    Ok((hi.max_entry(), hi))
}

/// `log_n` of the minimal max-entry, `n = max(n0, n1)`: a lower bound on the
/// anticipation of any encoder at this rate pair.
pub fn anticipation_lower_bound(a0: &Matrix, a1: &Matrix, n0: u64, n1: u64, xi_cap: u64) -> Result<f64> {
    let (v, _) = min_infnorm_ae(a0, a1, n0, n1, xi_cap)?;
    let n = n0.max(n1);
    Ok(if v <= 1 {
        0.0
    } else if n <= 1 {
        f64::INFINITY
    } else {
        (v as f64).ln() / (n as f64).ln()
    })
}

/// A maximal attainable pair of out-degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatePoint {
    pub n0: u64,
    pub n1: u64,
    pub witness: ApproxEigenvector,
}

fn floor_eigen(a: &Matrix) -> u64 {
    (perron(a, crate::DEFAULT_TOL) + FLOOR_SLACK).floor() as u64
}

/// For each `n0` up to `⌊λ(a0)⌋`, the largest `n1` admitting a joint
/// approximate eigenvector on the `t`-th power within `xi_cap`.
pub fn rate_region(g: &LabeledGraph, t: usize, xi_cap: u64) -> Vec<RatePoint> {
    let p = g.power(t).adjacency_pair();
    let (max0, max1) = (floor_eigen(&p.a0), floor_eigen(&p.a1));
    let mut out = Vec::new();
    for n0 in 0..=max0 {
        let Ok(mut best) = joint_ae_exists(&p.a0, &p.a1, n0, 0, xi_cap) else {
            continue;
        };
        let (mut lo, mut hi) = (0u64, max1 + 1);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            match joint_ae_exists(&p.a0, &p.a1, n0, mid, xi_cap) {
                Ok(x) => {
                    best = x;
                    lo = mid;
                }
                Err(_) => hi = mid,
            }
        }
        out.push(RatePoint {
            n0,
            n1: lo,
            witness: best,
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodingRatio {
    pub n_max: u64,
    /// `log2(2·n_max)/t`; negative infinity when `n_max = 0`.
    pub rho: f64,
    pub witness: Option<ApproxEigenvector>,
}

/// Best symmetric out-degree on the `t`-th power and the rate it yields.
pub fn coding_ratio(g: &LabeledGraph, t: usize, xi_cap: u64) -> CodingRatio {
    let p = g.power(t).adjacency_pair();
    let top = floor_eigen(&p.a0).min(floor_eigen(&p.a1));
    let (mut lo, mut hi) = (0u64, top + 1);
    let mut witness = None;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match joint_ae_exists(&p.a0, &p.a1, mid, mid, xi_cap) {
            Ok(x) => {
                witness = Some(x);
                lo = mid;
            }
            Err(_) => hi = mid,
        }
    }
    let rho = if lo == 0 {
        f64::NEG_INFINITY
    } else {
        ((2 * lo) as f64).log2() / t as f64
    };
    CodingRatio {
        n_max: lo,
        rho,
        witness,
    }
}
