#![allow(dead_code)]

use sgthresh_core::families::{make_family, FamilyKind, FamilySpec};
use sgthresh_core::Graph;

pub fn fam(kind: FamilyKind, param: usize) -> Graph {
    make_family(&FamilySpec::new(kind, param).unwrap()).unwrap()
}

pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for b in 0..3 {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edges(8, &edges).unwrap()
}

/// Paths are indexed by edge count, so `P_2` here has two edges.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for k in 2..=5 {
        out.push((format!("K_{k}"), fam(FamilyKind::Clique, k)));
    }
    for n in 3..=8 {
        out.push((format!("C_{n}"), fam(FamilyKind::Cycle, n)));
    }
    for l in 2..=7 {
        out.push((format!("P_{l}"), fam(FamilyKind::Path, l)));
    }
    for s in 3..=5 {
        out.push((format!("K_1,{s}"), fam(FamilyKind::Star, s)));
    }
    for k in 1..=4 {
        out.push((format!("{k}K_2"), fam(FamilyKind::Matching, k)));
    }
    out.push(("Q_3".into(), cube()));
    out
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Automorphisms by filtering every permutation of the full vertex set,
/// divided by the permutations of isolated vertices.
pub fn brute_aut(g: &Graph) -> u64 {
    let n = g.order();
    let edges = g.edge_list();
    let fixed = permutations(n)
        .iter()
        .filter(|p| edges.iter().all(|&(u, v)| g.has_edge(p[u], p[v])))
        .count() as u64;
    let isolated = (0..n).filter(|&v| g.degree(v) == 0).count() as u64;
    fixed / (1..=isolated).product::<u64>().max(1)
}

/// Brute-force embedding count over all injective maps.
pub fn brute_embeddings(pattern: &Graph, host: &Graph) -> u64 {
    let verts: Vec<usize> = (0..pattern.order()).filter(|&v| pattern.degree(v) > 0).collect();
    let edges = pattern.edge_list();
    let mut map = vec![usize::MAX; pattern.order()];
    let mut used = vec![false; host.order()];
    fn go(
        i: usize,
        verts: &[usize],
        edges: &[(usize, usize)],
        host: &Graph,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> u64 {
        if i == verts.len() {
            return edges.iter().all(|&(u, v)| host.has_edge(map[u], map[v])) as u64;
        }
        let mut total = 0;
        for h in 0..host.order() {
            if !used[h] {
                used[h] = true;
                map[verts[i]] = h;
                total += go(i + 1, verts, edges, host, map, used);
                used[h] = false;
            }
        }
        total
    }
    go(0, &verts, &edges, host, &mut map, &mut used)
}

/// Every edge subset of `K_n` as a graph, indexed by mask over the
/// row-major pair list.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let k = Graph::complete(n).unwrap();
    let pairs = k.edge_list();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let chosen: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &chosen).unwrap()
        })
        .collect()
}

pub fn lcg(state: &mut u64) -> u64 {
    *state = state
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    *state >> 33
}

pub fn random_graph(n: usize, density_percent: u64, state: &mut u64) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if lcg(state) % 100 < density_percent {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}
