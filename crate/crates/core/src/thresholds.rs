//! The subgraph expectation threshold `p_E(H)` and the modified threshold
//! `p̃_E(H)`.
//!
//! Both are evaluated through their closed-form maxima over subgraph
//! classes, in the log domain:
//!
//! ```text
//! ln p_E  = max_{H'} -(ln 2 + ln M_{H'}) / e(H')
//! ln p̃_E = max_{H'} (ln M_{H',H} - ln 2 - ln M_{H'}) / e(H')
//! ```
//!
//! where `M_{H'}` counts copies of `H'` in `K_n` and `M_{H',H}` counts them
//! inside `H`. The min-over-`p` definitions reduce to these because
//! `M_{H'} p^{e(H')}` is strictly increasing in `p`.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::canon::canonical_form;
use crate::census::{ClassCounts, SubgraphClass};
use crate::count::{falling_factorial, ln_biguint};
use crate::graph::Graph;
use crate::{Error, Result};

/// Classes within this distance of the maximum (log domain) are witnesses.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// Canonical key (hex) of the class, or a shape label for analytic
    /// classes beyond graph capacity.
    pub label: String,
    pub edge_count: usize,
    pub log_value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    pub n: usize,
    /// Canonical key (hex) of the pattern, or a family label.
    pub pattern: String,
    pub pattern_edge_count: usize,
    pub p_expectation: f64,
    pub p_modified: f64,
    pub log_p_expectation: f64,
    pub log_p_modified: f64,
    pub witnesses_expectation: Vec<Witness>,
    pub witnesses_modified: Vec<Witness>,
}

/// Per-class log terms for a fixed ambient order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassTerms {
    pub edge_count: usize,
    /// `ln M_{H'}`.
    pub ln_copies: f64,
    /// `ln M_{H',H}`.
    pub ln_multiplicity: f64,
}

impl ClassTerms {
    /// `ln((1 / 2M_{H'})^{1/e(H')})`.
    pub fn expectation_term(&self) -> f64 {
        -(LN_2 + self.ln_copies) / self.edge_count as f64
    }

    /// `ln((M_{H',H} / 2M_{H'})^{1/e(H')})`.
    pub fn modified_term(&self) -> f64 {
        (self.ln_multiplicity - LN_2 - self.ln_copies) / self.edge_count as f64
    }

    /// `ln(M_{H',H} / M_{H'}) / e(H')`, the per-class spread exponent.
    pub fn spread_term(&self) -> f64 {
        (self.ln_multiplicity - self.ln_copies) / self.edge_count as f64
    }
}

/// Caches `ln (n)_v` so per-class terms cost two big-integer logs.
#[derive(Clone, Debug)]
pub struct TermContext {
    n: usize,
    ln_falling: Vec<f64>,
}

impl TermContext {
    pub fn new(n: usize) -> Self {
        let ln_falling = (0..=n.min(crate::census::MAX_CLASS_VERTICES))
            .map(|v| ln_biguint(&falling_factorial(n as u64, v as u64)))
            .collect();
        TermContext { n, ln_falling }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `None` when `v(H') > n`, i.e. `M_{H'} = 0`.
    pub fn terms<C: ClassCounts + ?Sized>(&self, class: &C) -> Option<ClassTerms> {
        let v = class.vertex_count();
        assert!(class.edge_count() >= 1, "census classes are nonempty");
        if v > self.n {
            return None;
        }
        let ln_ff = match self.ln_falling.get(v) {
            Some(&x) => x,
            None => ln_biguint(&falling_factorial(self.n as u64, v as u64)),
        };
        Some(ClassTerms {
            edge_count: class.edge_count(),
            ln_copies: ln_ff - ln_biguint(class.aut_count()),
            ln_multiplicity: ln_biguint(class.multiplicity()),
        })
    }
}

/// Running maximum that keeps every candidate within [`TIE_TOLERANCE`].
#[derive(Clone, Debug)]
pub struct Extremum<K> {
    best: f64,
    candidates: Vec<(K, usize, f64)>,
}

impl<K: Ord> Default for Extremum<K> {
    fn default() -> Self {
        Extremum {
            best: f64::NEG_INFINITY,
            candidates: Vec::new(),
        }
    }
}

impl<K: Ord> Extremum<K> {
    pub fn push(&mut self, value: f64, edge_count: usize, key: impl FnOnce() -> K) {
        if value < self.best - TIE_TOLERANCE {
            return;
        }
        if value > self.best {
            self.best = value;
            let floor = value - TIE_TOLERANCE;
            self.candidates.retain(|c| c.2 >= floor);
        }
        self.candidates.push((key(), edge_count, value));
    }

    pub fn merge(mut self, other: Extremum<K>) -> Extremum<K> {
        self.best = self.best.max(other.best);
        self.candidates.extend(other.candidates);
        let floor = self.best - TIE_TOLERANCE;
        self.candidates.retain(|c| c.2 >= floor);
        self
    }

    pub fn best(&self) -> f64 {
        self.best
    }

    /// Final witnesses ordered by key.
    pub fn into_witnesses(mut self) -> Vec<(K, usize, f64)> {
        let floor = self.best - TIE_TOLERANCE;
        self.candidates.retain(|c| c.2 >= floor);
        self.candidates.sort_by(|a, b| a.0.cmp(&b.0));
        self.candidates
    }
}

/// Single pass over a class list producing all three maxima.
#[derive(Clone, Debug)]
pub struct ClassScan<K> {
    pub expectation: Extremum<K>,
    pub modified: Extremum<K>,
    pub spread: Extremum<K>,
    pub classes: usize,
}

impl<K: Ord + Clone> Default for ClassScan<K> {
    fn default() -> Self {
        ClassScan {
            expectation: Extremum::default(),
            modified: Extremum::default(),
            spread: Extremum::default(),
            classes: 0,
        }
    }
}

impl<K: Ord + Clone> ClassScan<K> {
    pub fn push(&mut self, terms: ClassTerms, key: impl Fn() -> K) {
        let e = terms.edge_count;
        self.expectation.push(terms.expectation_term(), e, &key);
        self.modified.push(terms.modified_term(), e, &key);
        self.spread.push(terms.spread_term(), e, &key);
        self.classes += 1;
    }

    pub fn merge(self, other: ClassScan<K>) -> ClassScan<K> {
        ClassScan {
            expectation: self.expectation.merge(other.expectation),
            modified: self.modified.merge(other.modified),
            spread: self.spread.merge(other.spread),
            classes: self.classes + other.classes,
        }
    }

    /// Assembles the threshold report; `label` names a witness key.
    pub fn into_report(
        self,
        pattern: String,
        pattern_edge_count: usize,
        n: usize,
        label: impl Fn(&K) -> String,
    ) -> Result<ThresholdReport> {
        if self.classes == 0 {
            return Err(Error::Mismatch("empty census"));
        }
        let log_e = self.expectation.best();
        let log_m = self.modified.best();
        let to_witness = |(k, e, v): (K, usize, f64)| Witness {
            label: label(&k),
            edge_count: e,
            log_value: v,
        };
        Ok(ThresholdReport {
            n,
            pattern,
            pattern_edge_count,
            p_expectation: libm::exp(log_e),
            p_modified: libm::exp(log_m),
            log_p_expectation: log_e,
            log_p_modified: log_m,
            witnesses_expectation: self.expectation.into_witnesses().into_iter().map(to_witness).collect(),
            witnesses_modified: self.modified.into_witnesses().into_iter().map(to_witness).collect(),
        })
    }
}

/// Scans a class list keyed by position.
pub fn scan_classes<C: ClassCounts>(n: usize, classes: &[C]) -> ClassScan<usize> {
    let ctx = TermContext::new(n);
    let mut scan = ClassScan::default();
    for (i, c) in classes.iter().enumerate() {
        if let Some(t) = ctx.terms(c) {
            scan.push(t, || i);
        }
    }
    scan
}

/// Thresholds from any class list (exhaustive or analytic). `pattern_edges`
/// and `pattern_vertices` describe `H` itself.
pub fn thresholds_from_classes<C: ClassCounts>(
    pattern: String,
    pattern_edges: usize,
    pattern_vertices: usize,
    n: usize,
    classes: &[C],
) -> Result<ThresholdReport> {
    if n < pattern_vertices {
        return Err(Error::Infeasible {
            needed: pattern_vertices,
            n,
        });
    }
    scan_classes(n, classes).into_report(pattern, pattern_edges, n, |&i| classes[i].label())
}

/// `p_E(H)` and `p̃_E(H)` in `K_n` from the exhaustive census of `h`.
pub fn compute_thresholds(h: &Graph, n: usize, census: &[SubgraphClass]) -> Result<ThresholdReport> {
    let form = canonical_form(h);
    let top = census
        .iter()
        .filter(|c| c.edge_count == h.edge_count())
        .collect::<Vec<_>>();
    let widest = census.iter().map(|c| c.edge_count).max();
    if widest != Some(h.edge_count()) || top.len() != 1 || top[0].canonical != form {
        return Err(Error::Mismatch("census does not belong to the pattern"));
    }
    thresholds_from_classes(form.hex(), h.edge_count(), h.vertex_count(), n, census)
}

/// Threshold with the constant `1/2` replaced by `constant`: the least `p`
/// with `E Z_{H'} >= constant` (or `>= constant * M_{H',H}` when
/// `modified`) for every class. Exploration only.
pub fn generalized_threshold<C: ClassCounts>(n: usize, classes: &[C], constant: f64, modified: bool) -> Result<f64> {
    if constant.is_nan() || constant <= 0.0 {
        return Err(Error::Domain("threshold constant must be positive"));
    }
    let ln_c = libm::log(constant);
    let ctx = TermContext::new(n);
    let best = classes
        .iter()
        .filter_map(|c| ctx.terms(c))
        .map(|t| {
            let m = if modified { t.ln_multiplicity } else { 0.0 };
            (ln_c + m - t.ln_copies) / t.edge_count as f64
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(libm::exp(best))
}

/// `ln E_p Z_{H'} = ln M_{H'} + e(H') ln p`.
pub fn expectation_value<C: ClassCounts>(class: &C, n: usize, p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain("p must lie in (0, 1]"));
    }
    Ok(class.copies_in_complete(n).ln() + class.edge_count() as f64 * libm::log(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{subgraph_census, CensusOptions};

    fn report(h: &Graph, n: usize) -> ThresholdReport {
        let c = subgraph_census(h, &CensusOptions::default()).unwrap();
        compute_thresholds(h, n, &c).unwrap()
    }

    #[test]
    fn triangle_in_k5() {
        let k3 = Graph::complete(3).unwrap();
        let r = report(&k3, 5);
        let want = libm::cbrt(1.0 / 20.0);
        assert!((r.p_expectation - want).abs() < 1e-12);
        assert!((r.p_modified - want).abs() < 1e-12);
        assert_eq!(r.witnesses_modified.len(), 1);
        assert_eq!(r.witnesses_modified[0].edge_count, 3);
        assert_eq!(r.witnesses_expectation[0].edge_count, 3);
    }

    #[test]
    fn triangle_in_k3() {
        let r = report(&Graph::complete(3).unwrap(), 3);
        assert!((r.p_modified - libm::cbrt(0.5)).abs() < 1e-12);
    }

    #[test]
    fn matching_in_k4() {
        let m = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let r = report(&m, 4);
        let want = libm::sqrt(1.0 / 6.0);
        assert!((r.p_modified - want).abs() < 1e-12);
        assert!((r.p_expectation - want).abs() < 1e-12);
        assert_eq!(r.witnesses_modified.len(), 1);
        assert_eq!(r.witnesses_modified[0].edge_count, 2);
    }

    #[test]
    fn infeasible_and_mismatch() {
        let k3 = Graph::complete(3).unwrap();
        let c = subgraph_census(&k3, &CensusOptions::default()).unwrap();
        assert_eq!(
            compute_thresholds(&k3, 2, &c),
            Err(Error::Infeasible { needed: 3, n: 2 })
        );
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(compute_thresholds(&p3, 5, &c), Err(Error::Mismatch(_))));
    }

    #[test]
    fn expectation_values() {
        let k2 = &subgraph_census(&Graph::complete(2).unwrap(), &CensusOptions::default()).unwrap()[0];
        assert!(expectation_value(k2, 5, 0.1).unwrap().abs() < 1e-12);
        let k3 = subgraph_census(&Graph::complete(3).unwrap(), &CensusOptions::default()).unwrap();
        let v = expectation_value(&k3[2], 6, 0.3).unwrap();
        assert!((v - libm::log(0.54)).abs() < 1e-12);
        assert!(matches!(expectation_value(k2, 5, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn generalized_constant_half_matches() {
        let h = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let c = subgraph_census(&h, &CensusOptions::default()).unwrap();
        let r = compute_thresholds(&h, 7, &c).unwrap();
        let g = generalized_threshold(7, &c, 0.5, true).unwrap();
        assert!((g - r.p_modified).abs() < 1e-14);
        let g = generalized_threshold(7, &c, 0.5, false).unwrap();
        assert!((g - r.p_expectation).abs() < 1e-14);
    }
}
