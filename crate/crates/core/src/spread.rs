//! Spread of the uniform measure `π_H` on copies of `H` in `K_n`.
//!
//! For a fixed labelled copy `J_0` of `J ⊆ H`, `π_H(J_0 ⊆ H) = M_{J,H} / M_J`,
//! which depends only on the isomorphism class of `J`. The largest `R` with
//! `π_H(J_0 ⊆ H) <= R^{-e(J_0)}` for all nonempty `J_0` is therefore
//!
//! ```text
//! R* = exp( -max_J ln(M_{J,H} / M_J) / e(J) )
//! ```
//!
//! and the certificate checks the claimed `R = 1 / (2 p̃_E(H))` against it.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::canon::{automorphism_count, canonical_form};
use crate::census::{copies_in_complete, ClassCounts, SubgraphClass};
use crate::count::ln_biguint;
use crate::embed::count_embeddings;
use crate::graph::{Bits, Graph};
use crate::rng::{stream_id, tag, SampleStream};
use crate::thresholds::{scan_classes, ClassScan, ThresholdReport};
use crate::{Error, Result};

/// Slack for the pass/fail comparison in the log domain.
pub const CERTIFICATE_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ClassMargin {
    pub label: String,
    pub edge_count: usize,
    /// `ln(M_{J,H} / M_J) / e(J)`.
    pub log_ratio_over_e: f64,
    /// `ln R* - ln R_claimed`; equal for every binding class.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpreadCertificate {
    pub n: usize,
    pub pattern: String,
    pub r_claimed: f64,
    pub r_star: f64,
    pub log_r_claimed: f64,
    pub log_r_star: f64,
    /// Classes attaining the maximum ratio, i.e. those that bind `R*`.
    pub worst_classes: Vec<ClassMargin>,
    pub pass: bool,
}

fn check_feasible(pattern_vertices: usize, n: usize) -> Result<()> {
    if n < pattern_vertices {
        return Err(Error::Infeasible {
            needed: pattern_vertices,
            n,
        });
    }
    Ok(())
}

/// `ln R*` from any class list.
pub fn log_max_spread_from_classes<C: ClassCounts>(pattern_vertices: usize, n: usize, classes: &[C]) -> Result<f64> {
    check_feasible(pattern_vertices, n)?;
    if classes.is_empty() {
        return Err(Error::Mismatch("empty census"));
    }
    Ok(-scan_classes(n, classes).spread.best())
}

/// The largest `R` for which `π_H` is `R`-spread in `K_n`.
pub fn max_spread(h: &Graph, n: usize, census: &[SubgraphClass]) -> Result<f64> {
    log_max_spread_from_classes(h.vertex_count(), n, census).map(libm::exp)
}

/// Certifies `R = 1 / (2 p̃_E)` from a completed class scan.
pub fn certificate_from_scan<K: Ord + Clone>(
    n: usize,
    scan: ClassScan<K>,
    report: &ThresholdReport,
    label: impl Fn(&K) -> String,
) -> Result<SpreadCertificate> {
    if report.n != n {
        return Err(Error::Mismatch("threshold report was computed for a different n"));
    }
    if scan.classes == 0 {
        return Err(Error::Mismatch("empty census"));
    }
    let log_r_star = -scan.spread.best();
    let log_r_claimed = -LN_2 - report.log_p_modified;
    let margin = log_r_star - log_r_claimed;
    let worst_classes = scan
        .spread
        .into_witnesses()
        .into_iter()
        .map(|(k, e, x)| ClassMargin {
            label: label(&k),
            edge_count: e,
            log_ratio_over_e: x,
            margin,
        })
        .collect();
    Ok(SpreadCertificate {
        n,
        pattern: report.pattern.clone(),
        r_claimed: libm::exp(log_r_claimed),
        r_star: libm::exp(log_r_star),
        log_r_claimed,
        log_r_star,
        worst_classes,
        pass: log_r_claimed <= log_r_star + CERTIFICATE_SLACK,
    })
}

/// Certifies `R = 1 / (2 p̃_E)` against `R*` for any class list.
pub fn certificate_from_classes<C: ClassCounts>(
    pattern_vertices: usize,
    n: usize,
    classes: &[C],
    report: &ThresholdReport,
) -> Result<SpreadCertificate> {
    check_feasible(pattern_vertices, n)?;
    certificate_from_scan(n, scan_classes(n, classes), report, |&i| classes[i].label())
}

/// Checks that `π_H` is `1 / (2 p̃_E(H))`-spread in `K_n`.
pub fn verify_spread_certificate(
    h: &Graph,
    n: usize,
    census: &[SubgraphClass],
    report: &ThresholdReport,
) -> Result<SpreadCertificate> {
    if report.pattern != canonical_form(h).hex() {
        return Err(Error::Mismatch("threshold report was computed for a different pattern"));
    }
    certificate_from_classes(h.vertex_count(), n, census, report)
}

/// Exact `π_H(J_0 ⊆ H) = M_{J,H} / M_J` for any labelled copy `J_0` of `j`.
pub fn containment_ratio(h: &Graph, n: usize, j: &Graph) -> Result<f64> {
    if h.vertex_count() > n {
        return Err(Error::Infeasible {
            needed: h.vertex_count(),
            n,
        });
    }
    if j.edge_count() == 0 {
        return Ok(1.0);
    }
    let aut = automorphism_count(j);
    let inside = ln_biguint(&(num_bigint::BigUint::from(count_embeddings(j, h)) / &aut));
    let total = copies_in_complete(j, n);
    if total.is_zero() {
        return Ok(0.0);
    }
    Ok(libm::exp(inside - total.ln()))
}

/// Draws uniform copies of a pattern in `K_n` by uniform injective
/// placement of its non-isolated vertices; every copy has exactly
/// `|Aut(H)|` placements, so copies are uniform.
#[derive(Clone, Debug)]
pub struct CopySampler {
    pattern: Graph,
    vertices: Vec<usize>,
    n: usize,
}

impl CopySampler {
    pub fn new(h: &Graph, n: usize) -> Result<Self> {
        if n > crate::MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let vertices: Vec<usize> = Bits(h.support()).collect();
        if vertices.len() > n {
            return Err(Error::Infeasible {
                needed: vertices.len(),
                n,
            });
        }
        Ok(CopySampler {
            pattern: h.clone(),
            vertices,
            n,
        })
    }

    pub fn sample(&self, stream: &mut SampleStream) -> Graph {
        let mut pool: [usize; 64] = core::array::from_fn(|i| i);
        let mut map = [0usize; 64];
        for (i, &v) in self.vertices.iter().enumerate() {
            let j = i + stream.below((self.n - i) as u64) as usize;
            pool.swap(i, j);
            map[v] = pool[i];
        }
        let mut g = Graph::empty(self.n).expect("n within capacity");
        for (u, v) in self.pattern.edges() {
            g.insert_unchecked(map[u], map[v]);
        }
        g
    }

    /// One trial of the containment experiment, addressed by sample index.
    pub fn trial(&self, j0: &Graph, seed: u64, index: u64) -> bool {
        let mut stream = SampleStream::new(seed, stream_id(tag::SPREAD, 0), index);
        self.sample(&mut stream).contains_edges_of(j0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateEstimate {
    pub successes: u64,
    pub samples: u64,
    pub rate: f64,
    /// Binomial standard error `sqrt(rate (1 - rate) / samples)`.
    pub std_error: f64,
}

impl RateEstimate {
    pub fn from_counts(successes: u64, samples: u64) -> Self {
        let rate = successes as f64 / samples as f64;
        RateEstimate {
            successes,
            samples,
            rate,
            std_error: libm::sqrt(rate * (1.0 - rate) / samples as f64),
        }
    }

    /// Whether `target` is within `k` standard errors. Uses the standard
    /// error of `target` itself when the empirical one degenerates to zero.
    pub fn within(&self, target: f64, k: f64) -> bool {
        let se = libm::sqrt(target * (1.0 - target) / self.samples as f64).max(self.std_error);
        (self.rate - target).abs() <= k * se
    }
}

pub(crate) fn check_j0(j0: &Graph, n: usize) -> Result<()> {
    if Bits(j0.support()).any(|v| v >= n) {
        return Err(Error::Mismatch("j0 has vertices outside K_n"));
    }
    Ok(())
}

/// Fraction of uniform copies of `h` in `K_n` containing every edge of `j0`.
pub fn empirical_containment_rate(h: &Graph, n: usize, j0: &Graph, samples: u64, seed: u64) -> Result<RateEstimate> {
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1"));
    }
    let sampler = CopySampler::new(h, n)?;
    check_j0(j0, n)?;
    let hits = (0..samples).filter(|&i| sampler.trial(j0, seed, i)).count() as u64;
    Ok(RateEstimate::from_counts(hits, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{subgraph_census, CensusOptions};
    use crate::thresholds::compute_thresholds;

    fn cert(h: &Graph, n: usize) -> SpreadCertificate {
        let c = subgraph_census(h, &CensusOptions::default()).unwrap();
        let r = compute_thresholds(h, n, &c).unwrap();
        verify_spread_certificate(h, n, &c, &r).unwrap()
    }

    #[test]
    fn triangle_in_k5() {
        let k3 = Graph::complete(3).unwrap();
        let c = subgraph_census(&k3, &CensusOptions::default()).unwrap();
        let r = max_spread(&k3, 5, &c).unwrap();
        assert!((r - libm::cbrt(10.0)).abs() < 1e-12);
        let cert = cert(&k3, 5);
        assert!(cert.pass);
        assert!((cert.r_claimed - 1.0 / (2.0 * libm::cbrt(0.05))).abs() < 1e-12);
        assert_eq!(cert.worst_classes.len(), 1);
        assert_eq!(cert.worst_classes[0].edge_count, 3);
    }

    #[test]
    fn single_edge_is_tight() {
        let k2 = Graph::complete(2).unwrap();
        let c = cert(&k2, 5);
        assert!(c.pass);
        assert!((c.r_star - 10.0).abs() < 1e-12);
        assert!((c.r_claimed - 10.0).abs() < 1e-12);
        assert!(c.worst_classes[0].margin.abs() < 1e-12);
    }

    #[test]
    fn triangle_filling_k3() {
        let k3 = Graph::complete(3).unwrap();
        let c = cert(&k3, 3);
        assert!(c.pass);
        assert!((c.r_star - 1.0).abs() < 1e-12);
        assert!((c.r_claimed - 1.0 / (2.0 * libm::cbrt(0.5))).abs() < 1e-12);
        // every class ratio is 1 here
        assert_eq!(c.worst_classes.len(), 3);
    }

    #[test]
    fn mismatched_report_is_rejected() {
        let k3 = Graph::complete(3).unwrap();
        let c = subgraph_census(&k3, &CensusOptions::default()).unwrap();
        let r = compute_thresholds(&k3, 5, &c).unwrap();
        assert!(matches!(
            verify_spread_certificate(&k3, 6, &c, &r),
            Err(Error::Mismatch(_))
        ));
        let k2 = Graph::complete(2).unwrap();
        let c2 = subgraph_census(&k2, &CensusOptions::default()).unwrap();
        assert!(matches!(
            verify_spread_certificate(&k2, 5, &c2, &r),
            Err(Error::Mismatch(_))
        ));
    }

    #[test]
    fn sampled_copies_are_copies() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let s = CopySampler::new(&c5, 9).unwrap();
        for i in 0..50 {
            let g = s.sample(&mut SampleStream::new(1, 0, i));
            assert_eq!(g.order(), 9);
            assert!(crate::canon::are_isomorphic(&g, &c5));
        }
    }

    #[test]
    fn full_triangle_contains_every_edge() {
        let k3 = Graph::complete(3).unwrap();
        let j0 = Graph::from_edges(3, &[(0, 2)]).unwrap();
        let r = empirical_containment_rate(&k3, 3, &j0, 200, 0).unwrap();
        assert_eq!(r.rate, 1.0);
        assert!(matches!(
            empirical_containment_rate(&k3, 2, &j0, 10, 0),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn exact_ratios() {
        let k3 = Graph::complete(3).unwrap();
        let k2 = Graph::complete(2).unwrap();
        assert!((containment_ratio(&k3, 5, &k2).unwrap() - 0.3).abs() < 1e-12);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let m = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!((containment_ratio(&c4, 4, &m).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    }
}
