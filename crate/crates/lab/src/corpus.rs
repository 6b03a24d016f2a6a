//! The fixed pattern corpus used by the acceptance suite.
//!
//! Paths are named by edge count: `P_2` has two edges and three vertices.

use sgthresh_core::families::{make_family, FamilyKind, FamilySpec};
use sgthresh_core::Graph;

#[derive(Clone, Debug)]
pub struct Pattern {
    pub name: String,
    pub graph: Graph,
}

fn family(kind: FamilyKind, param: usize) -> Graph {
    make_family(&FamilySpec::new(kind, param).expect("corpus parameters are valid")).expect("corpus fits")
}

/// The 3-cube on vertices `0..8`, adjacent when labels differ in one bit.
pub fn cube() -> Graph {
    let edges: Vec<_> = (0..8usize)
        .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(v, w)| v < w)
        .collect();
    Graph::from_edges(8, &edges).expect("cube edges are valid")
}

/// `K_2..K_5`, `C_3..C_8`, `P_2..P_7`, `K_{1,3}..K_{1,5}`, `1K_2..4K_2`, `Q_3`.
pub fn corpus() -> Vec<Pattern> {
    let mut out = Vec::new();
    let mut push = |name: String, graph: Graph| out.push(Pattern { name, graph });
    for k in 2..=5 {
        push(format!("K_{k}"), family(FamilyKind::Clique, k));
    }
    for n in 3..=8 {
        push(format!("C_{n}"), family(FamilyKind::Cycle, n));
    }
    for l in 2..=7 {
        push(format!("P_{l}"), family(FamilyKind::Path, l));
    }
    for s in 3..=5 {
        push(format!("K_1,{s}"), family(FamilyKind::Star, s));
    }
    for k in 1..=4 {
        push(format!("{k}K_2"), family(FamilyKind::Matching, k));
    }
    push("Q_3".into(), cube());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let c = corpus();
        assert_eq!(c.len(), 24);
        let q3 = &c.last().unwrap().graph;
        assert_eq!((q3.order(), q3.edge_count()), (8, 12));
        assert!((0..8).all(|v| q3.degree(v) == 3));
    }
}
