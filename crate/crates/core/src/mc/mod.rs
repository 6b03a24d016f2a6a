//! `G(n, p)` sampling, containment oracles, exact critical probabilities
//! for tiny `n`, and Monte Carlo bisection for `p_c(H)`.

mod bisect;
mod exact;
mod oracle;

pub use bisect::{
    estimate_pc, estimate_pc_with, wilson_interval, BisectionConfig, ContainmentTrial, Method, PcEstimate, Probe,
    ProbeSampler, SerialSampler,
};
pub use exact::{exact_containment_probability, exact_pc, ContainmentPolynomial, EXACT_MAX_PAIRS};
pub use oracle::{
    contains_copy, has_clique, has_hamiltonian_cycle, is_clique_pattern, is_cycle_pattern, is_matching_pattern,
    maximum_matching, Oracle, OracleKind, HAMILTONIAN_MAX_ORDER,
};

use alloc::vec::Vec;

use crate::graph::Graph;
use crate::rng::SampleStream;
use crate::{Error, Result};

fn check_gnp(n: usize, p: f64) -> Result<()> {
    if n > crate::MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain("p must lie in [0, 1]"));
    }
    Ok(())
}

/// One draw of `G(n, p)`: each of the `C(n, 2)` pairs independently, in
/// row-major pair order.
pub fn sample_gnp(n: usize, p: f64, stream: &mut SampleStream) -> Result<Graph> {
    check_gnp(n, p)?;
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if stream.bernoulli(p) {
                g.insert_unchecked(u, v);
            }
        }
    }
    Ok(g)
}

/// One uniform variate per pair. Thresholding at `p` gives `G(n, p)`, and
/// the graphs for `p1 <= p2` are nested.
#[derive(Clone, Debug)]
pub struct UniformField {
    n: usize,
    uniforms: Vec<f64>,
}

impl UniformField {
    pub fn sample(n: usize, stream: &mut SampleStream) -> Result<Self> {
        check_gnp(n, 0.0)?;
        let uniforms = (0..n * n.saturating_sub(1) / 2).map(|_| stream.uniform()).collect();
        Ok(UniformField { n, uniforms })
    }

    pub fn graph_at(&self, p: f64) -> Graph {
        let mut g = Graph::empty(self.n).expect("order checked at construction");
        let mut k = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.uniforms[k] < p {
                    g.insert_unchecked(u, v);
                }
                k += 1;
            }
        }
        g
    }
}
