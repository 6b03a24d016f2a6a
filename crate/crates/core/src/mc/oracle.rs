//! Containment oracles deciding `Z_H >= 1` for a host graph.

use core::fmt;
use core::str::FromStr;

use crate::embed::has_embedding;
use crate::graph::{bit, low_mask, Bits, Graph};
use crate::{Error, Result};

/// Largest host order the Hamiltonian bitmask dynamic program accepts.
pub const HAMILTONIAN_MAX_ORDER: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleKind {
    /// Backtracking embedding search.
    Generic,
    /// Spanning cycle `C_n` in an `n`-vertex host, by subset DP.
    HamiltonianCycle,
    /// `kK_2` via maximum matching with blossom contraction.
    PerfectMatching,
    /// `K_k` via branch and bound with a colouring bound.
    Clique,
}

impl OracleKind {
    pub const ALL: [OracleKind; 4] = [
        OracleKind::Generic,
        OracleKind::HamiltonianCycle,
        OracleKind::PerfectMatching,
        OracleKind::Clique,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Generic => "generic",
            OracleKind::HamiltonianCycle => "hamiltonian_cycle",
            OracleKind::PerfectMatching => "perfect_matching",
            OracleKind::Clique => "clique",
        }
    }

    /// The fastest oracle that applies to `pattern` in hosts of order `n`.
    pub fn suggest(pattern: &Graph, n: usize) -> OracleKind {
        if is_cycle_pattern(pattern) && pattern.vertex_count() == n && n <= HAMILTONIAN_MAX_ORDER {
            OracleKind::HamiltonianCycle
        } else if is_matching_pattern(pattern) {
            OracleKind::PerfectMatching
        } else if is_clique_pattern(pattern) {
            OracleKind::Clique
        } else {
            OracleKind::Generic
        }
    }
}

impl fmt::Display for OracleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OracleKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or(Error::Domain("unknown oracle kind"))
    }
}

/// Connected, 2-regular on its support, at least three vertices.
pub fn is_cycle_pattern(p: &Graph) -> bool {
    let s = p.support();
    s.count_ones() >= 3 && Bits(s).all(|v| p.degree(v) == 2) && p.is_connected()
}

/// Every non-isolated vertex has degree one.
pub fn is_matching_pattern(p: &Graph) -> bool {
    p.edge_count() > 0 && Bits(p.support()).all(|v| p.degree(v) == 1)
}

/// The non-isolated vertices span a complete graph.
pub fn is_clique_pattern(p: &Graph) -> bool {
    let v = p.vertex_count();
    p.edge_count() > 0 && p.edge_count() == v * (v - 1) / 2
}

/// A containment test prepared for one pattern and host order.
#[derive(Clone, Debug)]
pub struct Oracle {
    kind: OracleKind,
    pattern: Graph,
    n: usize,
    target: usize,
}

impl Oracle {
    pub fn new(kind: OracleKind, pattern: &Graph, n: usize) -> Result<Self> {
        let mismatch = |reason| {
            Err(Error::OracleMismatch {
                oracle: kind.name(),
                reason,
            })
        };
        let target = match kind {
            OracleKind::Generic => 0,
            OracleKind::HamiltonianCycle => {
                if !is_cycle_pattern(pattern) {
                    return mismatch("pattern is not a cycle");
                }
                if pattern.vertex_count() != n {
                    return mismatch("cycle length must equal the host order");
                }
                if n > HAMILTONIAN_MAX_ORDER {
                    return Err(Error::Capacity {
                        what: "hamiltonian cycle oracle host order",
                        requested: n,
                        limit: HAMILTONIAN_MAX_ORDER,
                    });
                }
                n
            }
            OracleKind::PerfectMatching => {
                if !is_matching_pattern(pattern) {
                    return mismatch("pattern is not a matching");
                }
                pattern.edge_count()
            }
            OracleKind::Clique => {
                if !is_clique_pattern(pattern) {
                    return mismatch("pattern is not a clique");
                }
                pattern.vertex_count()
            }
        };
        Ok(Oracle {
            kind,
            pattern: pattern.clone(),
            n,
            target,
        })
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    /// Host order the oracle was prepared for.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, host: &Graph) -> bool {
        match self.kind {
            OracleKind::Generic => has_embedding(&self.pattern, host),
            OracleKind::HamiltonianCycle => host.order() == self.target && has_hamiltonian_cycle(host),
            OracleKind::PerfectMatching => maximum_matching(host, self.target) >= self.target,
            OracleKind::Clique => has_clique(host, self.target),
        }
    }
}

/// Whether `host` contains a copy of `pattern`, using the requested oracle.
pub fn contains_copy(host: &Graph, pattern: &Graph, kind: OracleKind) -> Result<bool> {
    let n = match kind {
        OracleKind::HamiltonianCycle => pattern.vertex_count(),
        _ => host.order(),
    };
    Ok(Oracle::new(kind, pattern, n)?.contains(host))
}

/// Hamiltonian cycle by dynamic programming over vertex subsets:
/// `ends[S]` holds the vertices `v` such that some path from vertex 0
/// visits exactly `{0} ∪ S` and stops at `v`.
pub fn has_hamiltonian_cycle(g: &Graph) -> bool {
    let n = g.order();
    if n < 3 || g.edge_count() < n || (0..n).any(|v| g.degree(v) < 2) {
        return false;
    }
    assert!(
        n <= HAMILTONIAN_MAX_ORDER,
        "hamiltonian DP limited to {HAMILTONIAN_MAX_ORDER} vertices"
    );
    let others = low_mask(n) & !1;
    let size = 1usize << (n - 1);
    let mut ends = alloc::vec![0u32; size];
    for v in Bits(g.row(0)) {
        ends[(bit(v) >> 1) as usize] |= bit(v) as u32;
    }
    for idx in 1..size {
        let e = ends[idx];
        if e == 0 {
            continue;
        }
        let mask = (idx as u64) << 1;
        let mut reach = 0u64;
        for v in Bits(e as u64) {
            reach |= g.row(v);
        }
        for u in Bits(reach & others & !mask) {
            ends[((mask | bit(u)) >> 1) as usize] |= bit(u) as u32;
        }
    }
    (ends[size - 1] as u64) & g.row(0) != 0
}

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    n: usize,
    mate: [usize; 64],
    parent: [usize; 64],
    base: [usize; 64],
    used: [bool; 64],
    in_blossom: [bool; 64],
    queue: [usize; 64],
}

impl<'a> Blossom<'a> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = [false; 64];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches an augmenting path from the exposed vertex `root` and
    /// returns its other endpoint.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        self.used = [false; 64];
        self.parent = [NONE; 64];
        for i in 0..self.n {
            self.base[i] = i;
        }
        self.used[root] = true;
        let (mut head, mut tail) = (0usize, 0usize);
        self.queue[tail] = root;
        tail += 1;
        while head < tail {
            let v = self.queue[head];
            head += 1;
            for to in Bits(self.g.row(v)) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom = [false; 64];
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..self.n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue[tail] = i;
                                tail += 1;
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue[tail] = m;
                    tail += 1;
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Size of a maximum matching of `g`, stopping early once `stop_at` edges
/// are matched.
pub fn maximum_matching(g: &Graph, stop_at: usize) -> usize {
    let n = g.order();
    let mut b = Blossom {
        g,
        n,
        mate: [NONE; 64],
        parent: [NONE; 64],
        base: [0; 64],
        used: [false; 64],
        in_blossom: [false; 64],
        queue: [0; 64],
    };
    let mut size = 0;
    for v in 0..n {
        if b.mate[v] != NONE {
            continue;
        }
        if let Some(u) = Bits(g.row(v)).find(|&u| b.mate[u] == NONE) {
            b.mate[v] = u;
            b.mate[u] = v;
            size += 1;
        }
    }
    for v in 0..n {
        if size >= stop_at {
            break;
        }
        if b.mate[v] == NONE {
            if let Some(end) = b.find_path(v) {
                b.augment(end);
                size += 1;
            }
        }
    }
    size
}

/// Whether `g` has a clique on `k` vertices.
pub fn has_clique(g: &Graph, k: usize) -> bool {
    if k <= 1 {
        return k == 0 || g.order() >= 1;
    }
    let cand = Bits(low_mask(g.order()))
        .filter(|&v| g.degree(v) + 1 >= k)
        .fold(0u64, |acc, v| acc | bit(v));
    expand_clique(g, 0, cand, k)
}

fn expand_clique(g: &Graph, size: usize, mut cand: u64, k: usize) -> bool {
    let mut order = [0usize; 64];
    let mut colors = [0usize; 64];
    let mut len = 0;
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !bit(v) & !g.row(v);
            uncolored &= !bit(v);
            order[len] = v;
            colors[len] = color;
            len += 1;
        }
    }
    for i in (0..len).rev() {
        if size + colors[i] < k {
            return false;
        }
        let v = order[i];
        if size + 1 >= k {
            return true;
        }
        let next = cand & g.row(v);
        if size + 1 + next.count_ones() as usize >= k && expand_clique(g, size + 1, next, k) {
            return true;
        }
        cand &= !bit(v);
    }
    false
}
