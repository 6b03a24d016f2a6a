//! Canonical forms and automorphism counts.
//!
//! Both work component by component. Within a connected component the
//! vertex partition is refined to an equitable one (cells split by the
//! number of neighbours in each splitter cell, sub-cells ordered by that
//! count), then the first non-trivial cell is individualized vertex by
//! vertex. Canonical forms take the lexicographically least adjacency code
//! over the leaves of that search tree; automorphism counts use
//! orbit-stabilizer along a chain of individualized vertices.
//!
//! Twins (vertices with the same neighbourhood apart from each other) are
//! swapped by a transposition that fixes every other vertex, so only one
//! twin per cell is ever branched on.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::graph::{bit, low_mask, Bits, Graph};

/// Canonical adjacency encoding of a graph with its isolated vertices
/// removed. Equal keys iff the stripped graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    key: Vec<u8>,
    order: usize,
    edge_count: usize,
}

impl CanonicalForm {
    /// Byte 0 is the vertex count; the rest is the upper triangle of the
    /// canonical adjacency matrix, row-major, most significant bit first.
    pub fn key(&self) -> &[u8] {
        &self.key
    }

    /// Number of non-isolated vertices.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn hex(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::with_capacity(2 * self.key.len());
        for b in &self.key {
            let _ = write!(s, "{b:02x}");
        }
        s
    }

    /// Rebuilds the canonical representative (vertices `0..order`).
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.order).expect("canonical order within capacity");
        let mut idx = 0usize;
        for i in 0..self.order {
            for j in i + 1..self.order {
                if self.key[1 + idx / 8] & (0x80 >> (idx % 8)) != 0 {
                    g.insert_unchecked(i, j);
                }
                idx += 1;
            }
        }
        g
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CanonicalForm({}v, {}e, {})",
            self.order,
            self.edge_count,
            self.hex()
        )
    }
}

/// Canonical form of `g` with isolated vertices dropped.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labelling(g).1
}

/// Canonical form together with the vertex order realizing it: `order[i]`
/// is the vertex of `g` placed at canonical position `i`.
pub fn canonical_labelling(g: &Graph) -> (Vec<usize>, CanonicalForm) {
    let mut comps: Vec<ComponentCode> = g.components().into_iter().map(|c| canon_component(g, c)).collect();
    comps.sort_by(|a, b| a.cmp_code(b));
    let order: Vec<usize> = comps.iter().flat_map(|c| c.order.iter().copied()).collect();
    let key = encode(g, &order);
    let form = CanonicalForm {
        key,
        order: order.len(),
        edge_count: g.edge_count(),
    };
    (order, form)
}

/// Number of adjacency-preserving permutations of the non-isolated vertices.
pub fn automorphism_count(g: &Graph) -> BigUint {
    let mut comps: Vec<ComponentCode> = g.components().into_iter().map(|c| canon_component(g, c)).collect();
    comps.sort_by(|a, b| a.cmp_code(b));
    let mut total = BigUint::one();
    let mut i = 0;
    while i < comps.len() {
        let mut j = i + 1;
        while j < comps.len() && comps[j].cmp_code(&comps[i]) == Ordering::Equal {
            j += 1;
        }
        let component = g.induced_on(comps[i].set);
        let aut = connected_automorphisms(&component);
        let mult = j - i;
        for k in 1..=mult {
            total *= &aut;
            total *= BigUint::from(k);
        }
        i = j;
    }
    total
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

fn encode(g: &Graph, order: &[usize]) -> Vec<u8> {
    let k = order.len();
    let nbits = k * k.saturating_sub(1) / 2;
    let mut key = vec![0u8; 1 + nbits.div_ceil(8)];
    key[0] = k as u8;
    let mut idx = 0usize;
    for i in 0..k {
        let row = g.row(order[i]);
        for &w in &order[i + 1..] {
            if row & bit(w) != 0 {
                key[1 + idx / 8] |= 0x80 >> (idx % 8);
            }
            idx += 1;
        }
    }
    key
}

struct ComponentCode {
    set: u64,
    order: Vec<usize>,
    code: Vec<u64>,
}

impl ComponentCode {
    fn cmp_code(&self, other: &Self) -> Ordering {
        self.order
            .len()
            .cmp(&other.order.len())
            .then_with(|| self.code.cmp(&other.code))
    }
}

/// Packs the upper triangle of `g` under `order` into words.
fn leaf_code(g: &Graph, order: &[usize]) -> Vec<u64> {
    let k = order.len();
    let nbits = k * k.saturating_sub(1) / 2;
    let mut code = vec![0u64; nbits.div_ceil(64).max(1)];
    let mut idx = 0usize;
    for i in 0..k {
        let row = g.row(order[i]);
        for &w in &order[i + 1..] {
            if row & bit(w) != 0 {
                code[idx / 64] |= 1u64 << (63 - idx % 64);
            }
            idx += 1;
        }
    }
    code
}

#[inline]
fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let m = !(bit(u) | bit(v));
    g.row(u) & m == g.row(v) & m
}

/// Refines an ordered partition to the coarsest equitable refinement.
/// Each cell is split by neighbour count into each splitter cell; the
/// resulting pieces keep ascending-count order in place of the parent.
pub(crate) fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let mut buckets = [0u64; 65];
    loop {
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            let splitter = cells[si];
            let mut next: Vec<u64> = Vec::with_capacity(cells.len() + 4);
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    next.push(cell);
                    continue;
                }
                let mut lo = 64usize;
                let mut hi = 0usize;
                for v in Bits(cell) {
                    let c = (g.row(v) & splitter).count_ones() as usize;
                    buckets[c] |= bit(v);
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    buckets[lo] = 0;
                    next.push(cell);
                    continue;
                }
                changed = true;
                for b in buckets.iter_mut().take(hi + 1).skip(lo) {
                    if *b != 0 {
                        next.push(*b);
                        *b = 0;
                    }
                }
            }
            *cells = next;
            si += 1;
        }
        if !changed {
            break;
        }
    }
}

fn individualize(cells: &[u64], t: usize, v: usize) -> Vec<u64> {
    let mut child = Vec::with_capacity(cells.len() + 1);
    child.extend_from_slice(&cells[..t]);
    child.push(bit(v));
    child.push(cells[t] & !bit(v));
    child.extend_from_slice(&cells[t + 1..]);
    child
}

fn first_nontrivial(cells: &[u64]) -> Option<usize> {
    cells.iter().position(|c| c & (c - 1) != 0)
}

fn canon_component(g: &Graph, set: u64) -> ComponentCode {
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    canon_search(g, vec![set], &mut best);
    let (code, order) = best.expect("search reaches at least one leaf");
    ComponentCode { set, order, code }
}

fn canon_search(g: &Graph, mut cells: Vec<u64>, best: &mut Option<(Vec<u64>, Vec<usize>)>) {
    refine(g, &mut cells);
    match first_nontrivial(&cells) {
        None => {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            let code = leaf_code(g, &order);
            let better = match best {
                None => true,
                Some((b, _)) => code < *b,
            };
            if better {
                *best = Some((code, order));
            }
        }
        Some(t) => {
            let target = cells[t];
            let mut tried = 0u64;
            for v in Bits(target) {
                if Bits(tried).any(|u| twins(g, u, v)) {
                    continue;
                }
                tried |= bit(v);
                canon_search(g, individualize(&cells, t, v), best);
            }
        }
    }
}

/// |Aut| of a connected graph on vertices `0..order`.
fn connected_automorphisms(g: &Graph) -> BigUint {
    let mut cells = vec![low_mask(g.order())];
    refine(g, &mut cells);
    let mut total = BigUint::one();
    while let Some(t) = first_nontrivial(&cells) {
        let target = cells[t];
        let v = target.trailing_zeros() as usize;
        let left = individualize(&cells, t, v);
        let mut orbit = 1u64;
        for w in Bits(target & !bit(v)) {
            if twins(g, v, w) || mapping_exists(g, left.clone(), individualize(&cells, t, w)) {
                orbit += 1;
            }
        }
        total *= orbit;
        cells = left;
        refine(g, &mut cells);
    }
    total
}

/// Whether some automorphism carries the left partition state onto the
/// right one, cell by cell.
fn mapping_exists(g: &Graph, mut left: Vec<u64>, mut right: Vec<u64>) -> bool {
    refine(g, &mut left);
    refine(g, &mut right);
    if left.len() != right.len() || left.iter().zip(&right).any(|(a, b)| a.count_ones() != b.count_ones()) {
        return false;
    }
    match first_nontrivial(&left) {
        None => {
            let mut map = [0usize; 64];
            for (a, b) in left.iter().zip(&right) {
                map[a.trailing_zeros() as usize] = b.trailing_zeros() as usize;
            }
            (0..g.order()).all(|x| {
                let image = Bits(g.row(x)).fold(0u64, |acc, y| acc | bit(map[y]));
                image == g.row(map[x])
            })
        }
        Some(t) => {
            let x = left[t].trailing_zeros() as usize;
            let l = individualize(&left, t, x);
            let mut tried = 0u64;
            for y in Bits(right[t]) {
                if Bits(tried).any(|u| twins(g, u, y)) {
                    continue;
                }
                tried |= bit(y);
                if mapping_exists(g, l.clone(), individualize(&right, t, y)) {
                    return true;
                }
            }
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn g(order: usize, edges: &[Edge]) -> Graph {
        Graph::from_edges(order, edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n)
            .map(|i| (i, (i + 1) % n))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        g(n, &edges)
    }

    #[test]
    fn triangle_keys_ignore_labels_and_isolated_vertices() {
        let a = g(5, &[(0, 1), (1, 2), (0, 2)]);
        let b = g(5, &[(3, 1), (1, 4), (3, 4)]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_eq!(canonical_form(&a).order(), 3);
    }

    #[test]
    fn path_and_star_on_three_vertices_coincide() {
        let path = g(3, &[(0, 1), (1, 2)]);
        let star = g(3, &[(1, 0), (1, 2)]);
        assert_eq!(canonical_form(&path), canonical_form(&star));
    }

    #[test]
    fn p4_and_claw_differ() {
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let claw = g(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_ne!(canonical_form(&p4), canonical_form(&claw));
    }

    #[test]
    fn empty_graph_key() {
        let e = Graph::empty(4).unwrap();
        assert_eq!(canonical_form(&e).key(), &[0u8]);
        assert_eq!(automorphism_count(&e), BigUint::one());
    }

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(automorphism_count(&Graph::complete(3).unwrap()), BigUint::from(6u32));
        assert_eq!(automorphism_count(&g(3, &[(0, 1), (1, 2)])), BigUint::from(2u32));
        assert_eq!(automorphism_count(&cycle(4)), BigUint::from(8u32));
        assert_eq!(automorphism_count(&Graph::complete(5).unwrap()), BigUint::from(120u32));
        // 3K_2: 2^3 * 3!
        let m = g(6, &[(0, 1), (2, 3), (4, 5)]);
        assert_eq!(automorphism_count(&m), BigUint::from(48u32));
    }

    #[test]
    fn to_graph_roundtrips() {
        let h = g(6, &[(0, 5), (5, 2), (2, 0), (3, 4)]);
        let f = canonical_form(&h);
        assert_eq!(canonical_form(&f.to_graph()), f);
        assert_eq!(f.to_graph().edge_count(), 4);
    }

    #[test]
    fn large_symmetric_graphs_stay_fast() {
        let c = cycle(64);
        assert_eq!(automorphism_count(&c), BigUint::from(128u32));
        let star: Vec<Edge> = (1..40).map(|i| (0, i)).collect();
        let s = g(40, &star);
        let mut fact = BigUint::one();
        for k in 1..=39u32 {
            fact *= k;
        }
        assert_eq!(automorphism_count(&s), fact);
        let matching: Vec<Edge> = (0..30).map(|i| (2 * i, 2 * i + 1)).collect();
        let m = g(60, &matching);
        assert_eq!(canonical_form(&m).order(), 60);
    }
}
