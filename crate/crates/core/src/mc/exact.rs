//! Exact `P_p(Z_H >= 1)` for hosts small enough to enumerate.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::canonical_form;
use crate::embed::has_embedding;
use crate::graph::{Edge, Graph};
use crate::mc::bisect::{Method, PcEstimate};
use crate::{Error, Result};

/// `C(n, 2)` limit for exhaustive host enumeration (`n <= 7`).
pub const EXACT_MAX_PAIRS: usize = 24;

/// `P_p(Z_H >= 1) = sum_k c_k p^k (1 - p)^{N - k}` where `c_k` counts the
/// `k`-edge hosts on `n` labelled vertices that contain the pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct ContainmentPolynomial {
    pub n: usize,
    pub pattern: String,
    /// `counts[k]` for `k = 0..=C(n, 2)`.
    pub counts: Vec<u64>,
}

impl ContainmentPolynomial {
    pub fn build(pattern: &Graph, n: usize) -> Result<Self> {
        let pairs = n * n.saturating_sub(1) / 2;
        if pairs > EXACT_MAX_PAIRS {
            return Err(Error::Capacity {
                what: "exact containment host pairs",
                requested: pairs,
                limit: EXACT_MAX_PAIRS,
            });
        }
        if pattern.vertex_count() > n {
            return Err(Error::Infeasible {
                needed: pattern.vertex_count(),
                n,
            });
        }
        let ambient = Graph::complete(n)?;
        let edges: Vec<Edge> = ambient.edge_list();
        let mut counts = vec![0u64; pairs + 1];
        for mask in 0u64..(1u64 << pairs) {
            let k = mask.count_ones() as usize;
            if k < pattern.edge_count() {
                continue;
            }
            let host = ambient.subgraph_from_mask(&edges, mask);
            if has_embedding(pattern, &host) {
                counts[k] += 1;
            }
        }
        Ok(ContainmentPolynomial {
            n,
            pattern: canonical_form(pattern).hex(),
            counts,
        })
    }

    pub fn eval(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain("p must lie in [0, 1]"));
        }
        let big_n = self.counts.len() - 1;
        let q = 1.0 - p;
        Ok(self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| c as f64 * libm::pow(p, k as f64) * libm::pow(q, (big_n - k) as f64))
            .sum())
    }

    /// Bisection for `P_p = 1/2`; `P_p` is a strictly increasing
    /// polynomial on `[0, 1]` with `P_0 = 0` and `P_1 = 1`.
    pub fn solve_half(&self, tol: f64) -> Result<(f64, f64)> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::Domain("tolerance must be positive"));
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid)? >= 0.5 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok((lo, hi))
    }
}

pub fn exact_containment_probability(pattern: &Graph, n: usize, p: f64) -> Result<f64> {
    ContainmentPolynomial::build(pattern, n)?.eval(p)
}

/// Exact `p_c(H)` in `G(n, p)` to absolute tolerance `tol`.
pub fn exact_pc(pattern: &Graph, n: usize, tol: f64) -> Result<PcEstimate> {
    let poly = ContainmentPolynomial::build(pattern, n)?;
    let (lo, hi) = poly.solve_half(tol)?;
    let p_hat = 0.5 * (lo + hi);
    Ok(PcEstimate {
        n,
        pattern: poly.pattern,
        method: Method::Exact,
        p_hat,
        ci_low: p_hat,
        ci_high: p_hat,
        samples_per_probe: 0,
        probes: Vec::new(),
        seed: 0,
        low_confidence: false,
    })
}
