//! Isomorphism-class census of the nonempty edge-induced subgraphs of a
//! pattern, and copy counts in the complete graph.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;

use crate::canon::{automorphism_count, canonical_form, CanonicalForm};
use crate::count::{falling_factorial, LogScaledCount};
use crate::graph::{Edge, Graph};
use crate::{Error, Result};

/// Default edge cap for exhaustive enumeration (`2^24` subsets).
pub const DEFAULT_EDGE_CAP: usize = 24;

/// Vertex bound for analytic classes (and the ambient order they are
/// evaluated in).
pub const MAX_CLASS_VERTICES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    /// Skip disconnected edge subsets. Produces a lower bound on both
    /// thresholds, not the exact maxima.
    pub connected_only: bool,
    pub edge_cap: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            connected_only: false,
            edge_cap: DEFAULT_EDGE_CAP,
        }
    }
}

/// Per-class data the threshold and spread computations need. Implemented
/// by exhaustive [`SubgraphClass`]es and by the analytic family censuses.
pub trait ClassCounts {
    /// `e(H')`.
    fn edge_count(&self) -> usize;
    /// `v(H')`, non-isolated vertices.
    fn vertex_count(&self) -> usize;
    /// `M_{H',H}`.
    fn multiplicity(&self) -> &BigUint;
    /// `|Aut(H')|`.
    fn aut_count(&self) -> &BigUint;
    /// Stable identifier used in reports.
    fn label(&self) -> String;

    /// `M_{H'}`, the number of copies of `H'` in `K_n`.
    fn copies_in_complete(&self, n: usize) -> LogScaledCount {
        copies_from_counts(self.vertex_count(), self.aut_count(), n)
    }
}

pub(crate) fn copies_from_counts(vertex_count: usize, aut: &BigUint, n: usize) -> LogScaledCount {
    let ff = falling_factorial(n as u64, vertex_count as u64);
    LogScaledCount::new(ff / aut)
}

/// One isomorphism class of nonempty edge subsets of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgraphClass {
    /// Canonically labelled, isolated vertices stripped.
    pub representative: Graph,
    pub canonical: CanonicalForm,
    pub edge_count: usize,
    pub vertex_count: usize,
    pub multiplicity: BigUint,
    pub aut_count: BigUint,
}

impl SubgraphClass {
    fn from_canonical(canonical: CanonicalForm, multiplicity: BigUint) -> Self {
        let representative = canonical.to_graph();
        let aut_count = automorphism_count(&representative);
        SubgraphClass {
            edge_count: canonical.edge_count(),
            vertex_count: canonical.order(),
            representative,
            canonical,
            multiplicity,
            aut_count,
        }
    }
}

impl ClassCounts for SubgraphClass {
    fn edge_count(&self) -> usize {
        self.edge_count
    }
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    fn multiplicity(&self) -> &BigUint {
        &self.multiplicity
    }
    fn aut_count(&self) -> &BigUint {
        &self.aut_count
    }
    fn label(&self) -> String {
        self.canonical.hex()
    }
}

/// Multiplicities accumulated over a range of edge masks. Merging is
/// keyed addition, so the result does not depend on how masks were split.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PartialCensus {
    counts: BTreeMap<CanonicalForm, u64>,
}

impl PartialCensus {
    pub fn merge(mut self, other: PartialCensus) -> PartialCensus {
        if self.counts.len() < other.counts.len() {
            return other.merge(self);
        }
        for (k, c) in other.counts {
            *self.counts.entry(k).or_insert(0) += c;
        }
        self
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Attaches automorphism counts and sorts by edge count, then key.
    pub fn finish(self) -> Vec<SubgraphClass> {
        let mut out: Vec<SubgraphClass> = self
            .counts
            .into_iter()
            .map(|(k, c)| SubgraphClass::from_canonical(k, BigUint::from(c)))
            .collect();
        out.sort_by(|a, b| {
            a.edge_count
                .cmp(&b.edge_count)
                .then_with(|| a.canonical.cmp(&b.canonical))
        });
        out
    }
}

/// Checks the census preconditions and returns the edge list of `h`.
pub fn census_edges(h: &Graph, options: &CensusOptions) -> Result<Vec<Edge>> {
    let e = h.edge_count();
    if e == 0 {
        return Err(Error::Domain("census needs a pattern with at least one edge"));
    }
    if e > options.edge_cap || e > 63 {
        return Err(Error::Capacity {
            what: "exhaustive census edge count (use --connected-only or a family analytic census)",
            requested: e,
            limit: options.edge_cap.min(63),
        });
    }
    Ok(h.edge_list())
}

/// Census contribution of the masks in `masks` (each a subset of
/// `0..2^e(h)`; mask 0 is skipped).
pub fn census_range(h: &Graph, edges: &[Edge], options: &CensusOptions, masks: Range<u64>) -> PartialCensus {
    let mut counts = BTreeMap::new();
    for mask in masks.start.max(1)..masks.end {
        let sub = h.subgraph_from_mask(edges, mask);
        if options.connected_only && !sub.is_connected() {
            continue;
        }
        *counts.entry(canonical_form(&sub)).or_insert(0u64) += 1;
    }
    PartialCensus { counts }
}

/// All isomorphism classes of nonempty edge-induced subgraphs of `h` with
/// their multiplicities `M_{H',H}`.
pub fn subgraph_census(h: &Graph, options: &CensusOptions) -> Result<Vec<SubgraphClass>> {
    let edges = census_edges(h, options)?;
    let end = 1u64 << edges.len();
    Ok(census_range(h, &edges, options, 0..end).finish())
}

/// `M_{pattern}` in `K_n`: `(n)_v / |Aut(pattern)|`, zero when `v > n`.
pub fn copies_in_complete(pattern: &Graph, n: usize) -> LogScaledCount {
    copies_from_counts(pattern.vertex_count(), &automorphism_count(pattern), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::count_embeddings;
    use alloc::vec;

    fn mults(classes: &[SubgraphClass]) -> Vec<(usize, usize, u64)> {
        classes
            .iter()
            .map(|c| {
                (
                    c.edge_count,
                    c.vertex_count,
                    num_traits::ToPrimitive::to_u64(&c.multiplicity).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn triangle_census() {
        let k3 = Graph::complete(3).unwrap();
        let c = subgraph_census(&k3, &CensusOptions::default()).unwrap();
        assert_eq!(mults(&c), vec![(1, 2, 3), (2, 3, 3), (3, 3, 1)]);
    }

    #[test]
    fn single_edge_census() {
        let k2 = Graph::complete(2).unwrap();
        let c = subgraph_census(&k2, &CensusOptions::default()).unwrap();
        assert_eq!(mults(&c), vec![(1, 2, 1)]);
    }

    #[test]
    fn multiplicity_times_aut_is_embedding_count() {
        let q = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4)]).unwrap();
        for class in subgraph_census(&q, &CensusOptions::default()).unwrap() {
            let emb = BigUint::from(count_embeddings(&class.representative, &q));
            assert_eq!(&class.multiplicity * &class.aut_count, emb);
        }
    }

    #[test]
    fn connected_only_drops_matchings() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let opts = CensusOptions {
            connected_only: true,
            ..CensusOptions::default()
        };
        let c = subgraph_census(&c4, &opts).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|k| k.representative.is_connected()));
    }

    #[test]
    fn errors() {
        let e = Graph::empty(3).unwrap();
        assert!(matches!(
            subgraph_census(&e, &CensusOptions::default()),
            Err(Error::Domain(_))
        ));
        let k8 = Graph::complete(8).unwrap();
        let err = subgraph_census(&k8, &CensusOptions::default()).unwrap_err();
        assert_eq!(err.kind(), crate::ErrorKind::Capacity);
    }

    #[test]
    fn complete_graph_copies() {
        let k2 = Graph::complete(2).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(copies_in_complete(&k2, 5).exact(), &BigUint::from(10u32));
        assert_eq!(copies_in_complete(&k3, 5).exact(), &BigUint::from(10u32));
        assert_eq!(copies_in_complete(&p3, 5).exact(), &BigUint::from(30u32));
        assert!(copies_in_complete(&k3, 2).is_zero());
    }

    #[test]
    fn partial_merge_is_split_independent() {
        let k4 = Graph::complete(4).unwrap();
        let opts = CensusOptions::default();
        let edges = census_edges(&k4, &opts).unwrap();
        let whole = census_range(&k4, &edges, &opts, 0..64);
        let split = census_range(&k4, &edges, &opts, 40..64)
            .merge(census_range(&k4, &edges, &opts, 0..17))
            .merge(census_range(&k4, &edges, &opts, 17..40));
        assert_eq!(whole, split);
        assert_eq!(whole.total(), 63);
    }
}
