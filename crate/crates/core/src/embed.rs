//! Non-induced embedding search: injective vertex maps carrying every
//! pattern edge onto a host edge.
//!
//! Pattern vertices are matched in a connectivity-first order (highest
//! degree first, then the vertex with most already-placed neighbours), so
//! each candidate set is an intersection of host rows.

use alloc::vec::Vec;

use crate::graph::{bit, low_mask, Bits, Graph};

struct Plan {
    /// Pattern vertices in matching order.
    order: Vec<usize>,
    /// For each position, the positions of earlier neighbours.
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

fn plan(pattern: &Graph) -> Plan {
    let support = pattern.support();
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(support.count_ones() as usize);
    while placed != support {
        let next = Bits(support & !placed)
            .max_by_key(|&v| {
                let links = (pattern.row(v) & placed).count_ones();
                // ties prefer higher degree, then lower label
                (links, pattern.degree(v), usize::MAX - v)
            })
            .expect("unplaced vertex remains");
        order.push(next);
        placed |= bit(next);
    }
    let mut pos = [usize::MAX; 64];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| Bits(pattern.row(v)).map(|u| pos[u]).filter(|&p| p < i).collect())
        .collect();
    let degree = order.iter().map(|&v| pattern.degree(v)).collect();
    Plan { order, back, degree }
}

struct Search<'a> {
    host: &'a Graph,
    plan: Plan,
    by_degree: Vec<u64>,
    image: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(pattern: &Graph, host: &'a Graph) -> Option<Self> {
        let plan = plan(pattern);
        if plan.order.len() > host.order() || pattern.edge_count() > host.edge_count() {
            return None;
        }
        let all = low_mask(host.order());
        let max_deg = plan.degree.iter().copied().max().unwrap_or(0);
        let by_degree = (0..=max_deg)
            .map(|d| {
                Bits(all)
                    .filter(|&v| host.degree(v) >= d)
                    .fold(0, |acc, v| acc | bit(v))
            })
            .collect();
        let image = Vec::with_capacity(plan.order.len());
        Some(Search {
            host,
            plan,
            by_degree,
            image,
        })
    }

    fn candidates(&self, depth: usize, used: u64) -> u64 {
        let mut c = self.by_degree[self.plan.degree[depth]] & !used;
        for &p in &self.plan.back[depth] {
            c &= self.host.row(self.image[p]);
        }
        c
    }

    fn count(&mut self, depth: usize, used: u64) -> u64 {
        if depth == self.plan.order.len() {
            return 1;
        }
        let cand = self.candidates(depth, used);
        if depth + 1 == self.plan.order.len() {
            return cand.count_ones() as u64;
        }
        let mut total = 0;
        for w in Bits(cand) {
            self.image.push(w);
            total += self.count(depth + 1, used | bit(w));
            self.image.pop();
        }
        total
    }

    fn find(&mut self, depth: usize, used: u64) -> bool {
        if depth == self.plan.order.len() {
            return true;
        }
        let cand = self.candidates(depth, used);
        if depth + 1 == self.plan.order.len() {
            return cand != 0;
        }
        for w in Bits(cand) {
            self.image.push(w);
            let hit = self.find(depth + 1, used | bit(w));
            self.image.pop();
            if hit {
                return true;
            }
        }
        false
    }
}

/// Number of injective maps from the non-isolated vertices of `pattern`
/// into `host` that send every pattern edge to a host edge.
pub fn count_embeddings(pattern: &Graph, host: &Graph) -> u64 {
    if pattern.edge_count() == 0 {
        return 1;
    }
    match Search::new(pattern, host) {
        Some(mut s) => s.count(0, 0),
        None => 0,
    }
}

/// Whether `host` has a (not necessarily induced) subgraph isomorphic to
/// `pattern` with isolated vertices ignored.
pub fn has_embedding(pattern: &Graph, host: &Graph) -> bool {
    if pattern.edge_count() == 0 {
        return true;
    }
    match Search::new(pattern, host) {
        Some(mut s) => s.find(0, 0),
        None => false,
    }
}
