//! Structured pattern families and their analytic subgraph censuses.
//!
//! Every nonempty edge subset of a cycle `C_n` (other than the whole
//! cycle) or of a path is a disjoint union of paths, so its class is the
//! multiset of path lengths `λ = (ℓ_1 >= ... >= ℓ_m)` with `e = Σ ℓ_i`
//! edges and `e + m` vertices. Writing `r_1, r_2, ...` for the repetition
//! counts of the distinct lengths in `λ`:
//!
//! * in `C_n`: `M_{λ,C_n} = n (n-e-1)_{m-1} / Π r_j!`, needing `m <= n - e`;
//! * in the path with `ℓ` edges: `M = C(ℓ-e+1, m) m! / Π r_j!`;
//! * `|Aut(λ)| = 2^m Π r_j!`.
//!
//! The cycle formula counts (subset, distinguished arc) pairs as
//! `n C(n-e-1, m-1)` placements per cyclic word of arc lengths, and each
//! subset has `m` distinguished arcs over `m! / Π r_j!` words.
//! Matchings `kK_2` have classes `jK_2` with multiplicity `C(k, j)` and
//! stars `K_{1,s}` have classes `K_{1,j}` with multiplicity `C(s, j)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::canon::canonical_form;
use crate::census::{ClassCounts, SubgraphClass, MAX_CLASS_VERTICES};
use crate::count::{binomial, factorial, falling_factorial};
use crate::graph::{Edge, Graph, MAX_ORDER};
use crate::thresholds::{ClassScan, TermContext, ThresholdReport};
use crate::{Error, Result};

/// Size limit for analytic censuses.
pub const ANALYTIC_CAP: usize = MAX_CLASS_VERTICES;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Cycle,
    Matching,
    Clique,
    Path,
    Star,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Cycle,
        FamilyKind::Matching,
        FamilyKind::Clique,
        FamilyKind::Path,
        FamilyKind::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Cycle => "cycle",
            FamilyKind::Matching => "matching",
            FamilyKind::Clique => "clique",
            FamilyKind::Path => "path",
            FamilyKind::Star => "star",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or(Error::Domain("unknown family kind"))
    }
}

/// A family member: cycle length, matching edges, clique order, path edges
/// or star leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub param: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, param: usize) -> Result<Self> {
        let spec = FamilySpec { kind, param };
        let min = match kind {
            FamilyKind::Cycle => 3,
            FamilyKind::Clique => 2,
            _ => 1,
        };
        if param < min {
            return Err(Error::Domain("family parameter below the family minimum"));
        }
        if spec.vertex_count() > ANALYTIC_CAP {
            return Err(Error::Capacity {
                what: "family vertex count",
                requested: spec.vertex_count(),
                limit: ANALYTIC_CAP,
            });
        }
        Ok(spec)
    }

    pub fn vertex_count(&self) -> usize {
        match self.kind {
            FamilyKind::Cycle | FamilyKind::Clique => self.param,
            FamilyKind::Matching => 2 * self.param,
            FamilyKind::Path | FamilyKind::Star => self.param + 1,
        }
    }

    pub fn edge_count(&self) -> usize {
        match self.kind {
            FamilyKind::Cycle | FamilyKind::Matching | FamilyKind::Path | FamilyKind::Star => self.param,
            FamilyKind::Clique => self.param * (self.param - 1) / 2,
        }
    }

    pub fn has_analytic_census(&self) -> bool {
        self.kind != FamilyKind::Clique
    }

    pub fn label(&self) -> String {
        format!("{}[{}]", self.kind, self.param)
    }
}

/// The standard labelled representative: cycle `0-1-...-(n-1)-0`,
/// matching `{0-1, 2-3, ...}`, clique on `0..k`, path `0-1-...-ℓ`, star
/// centred at 0.
pub fn make_family(spec: &FamilySpec) -> Result<Graph> {
    let v = spec.vertex_count();
    if v > MAX_ORDER {
        return Err(Error::Capacity {
            what: "concrete family graph order",
            requested: v,
            limit: MAX_ORDER,
        });
    }
    let p = spec.param;
    let edges: Vec<Edge> = match spec.kind {
        FamilyKind::Cycle => (0..p)
            .map(|i| ((i + 1) % p, i))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect(),
        FamilyKind::Matching => (0..p).map(|i| (2 * i, 2 * i + 1)).collect(),
        FamilyKind::Clique => return Graph::complete(p),
        FamilyKind::Path => (0..p).map(|i| (i, i + 1)).collect(),
        FamilyKind::Star => (1..=p).map(|i| (0, i)).collect(),
    };
    Graph::from_edges(v, &edges)
}

/// Isomorphism type of an analytic class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassShape {
    /// Disjoint paths with these edge lengths, nonincreasing.
    PathUnion(Vec<usize>),
    Cycle(usize),
    /// `K_{1,s}` with `s >= 3`.
    Star(usize),
}

impl ClassShape {
    pub fn edge_count(&self) -> usize {
        match self {
            ClassShape::PathUnion(parts) => parts.iter().sum(),
            ClassShape::Cycle(n) => *n,
            ClassShape::Star(s) => *s,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            ClassShape::PathUnion(parts) => parts.iter().sum::<usize>() + parts.len(),
            ClassShape::Cycle(n) => *n,
            ClassShape::Star(s) => s + 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ClassShape::PathUnion(parts) => format!("paths{parts:?}"),
            ClassShape::Cycle(n) => format!("cycle[{n}]"),
            ClassShape::Star(s) => format!("star[{s}]"),
        }
    }

    pub fn representative(&self) -> Result<Graph> {
        let v = self.vertex_count();
        if v > MAX_ORDER {
            return Err(Error::Capacity {
                what: "class representative order",
                requested: v,
                limit: MAX_ORDER,
            });
        }
        match self {
            ClassShape::PathUnion(parts) => {
                let mut g = Graph::empty(v)?;
                let mut next = 0;
                for &len in parts {
                    for i in 0..len {
                        g.add_edge(next + i, next + i + 1)?;
                    }
                    next += len + 1;
                }
                Ok(g)
            }
            ClassShape::Cycle(n) => make_family(&FamilySpec {
                kind: FamilyKind::Cycle,
                param: *n,
            }),
            ClassShape::Star(s) => make_family(&FamilySpec {
                kind: FamilyKind::Star,
                param: *s,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticClass {
    pub shape: ClassShape,
    pub edge_count: usize,
    pub vertex_count: usize,
    pub multiplicity: BigUint,
    pub aut_count: BigUint,
}

impl AnalyticClass {
    /// Materializes the class as an exhaustive-census record.
    pub fn to_subgraph_class(&self) -> Result<SubgraphClass> {
        let canonical = canonical_form(&self.shape.representative()?);
        Ok(SubgraphClass {
            representative: canonical.to_graph(),
            canonical,
            edge_count: self.edge_count,
            vertex_count: self.vertex_count,
            multiplicity: self.multiplicity.clone(),
            aut_count: self.aut_count.clone(),
        })
    }
}

impl ClassCounts for AnalyticClass {
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
        shape_label(&self.shape)
    }
}

/// Canonical key (hex) when the class fits in a [`Graph`], shape label
/// otherwise.
pub fn shape_label(shape: &ClassShape) -> String {
    match shape.representative() {
        Ok(g) => canonical_form(&g).hex(),
        Err(_) => shape.label(),
    }
}

struct Factorials(Vec<BigUint>);

impl Factorials {
    fn up_to(n: usize) -> Self {
        let mut f = Vec::with_capacity(n + 1);
        f.push(BigUint::one());
        for k in 1..=n {
            let next = &f[k - 1] * k;
            f.push(next);
        }
        Factorials(f)
    }

    /// `Π r_j!` over the runs of a nonincreasing sequence.
    fn run_product(&self, parts: &[usize]) -> BigUint {
        let mut acc = BigUint::one();
        let mut i = 0;
        while i < parts.len() {
            let mut j = i + 1;
            while j < parts.len() && parts[j] == parts[i] {
                j += 1;
            }
            if j - i > 1 {
                acc *= &self.0[j - i];
            }
            i = j;
        }
        acc
    }
}

fn path_union_class(parts: Vec<usize>, multiplicity: BigUint, runs: &BigUint) -> AnalyticClass {
    let m = parts.len();
    let shape = ClassShape::PathUnion(parts);
    AnalyticClass {
        edge_count: shape.edge_count(),
        vertex_count: shape.vertex_count(),
        shape,
        multiplicity,
        aut_count: (BigUint::one() << m) * runs,
    }
}

/// Calls `f` for each partition of `remaining` into at most `max_parts`
/// parts no larger than `max_part`, appended to `prefix`.
fn for_each_partition(
    remaining: usize,
    max_part: usize,
    max_parts: usize,
    prefix: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        f(prefix);
        return;
    }
    if max_parts == 0 {
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        // the remaining parts must still fit
        if part * max_parts < remaining {
            break;
        }
        prefix.push(part);
        for_each_partition(remaining - part, part, max_parts - 1, prefix, f);
        prefix.pop();
    }
}

fn check_cycle(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Domain("cycles need at least 3 vertices"));
    }
    if n > ANALYTIC_CAP {
        return Err(Error::Capacity {
            what: "analytic cycle census length",
            requested: n,
            limit: ANALYTIC_CAP,
        });
    }
    Ok(())
}

/// Path-union classes of `C_n` whose longest path has `largest` edges
/// (`1 <= largest < n`). Partitioning by the largest part splits the
/// census into independent pieces.
pub fn for_each_cycle_class_with_largest(n: usize, largest: usize, f: &mut dyn FnMut(AnalyticClass)) -> Result<()> {
    check_cycle(n)?;
    if largest == 0 || largest >= n {
        return Ok(());
    }
    let fact = Factorials::up_to(n);
    let mut prefix = vec![largest];
    for e in largest..n {
        let max_parts = n - e;
        for_each_partition(e - largest, largest, max_parts - 1, &mut prefix, &mut |parts| {
            let m = parts.len();
            let runs = fact.run_product(parts);
            let mult = falling_factorial((n - e - 1) as u64, (m - 1) as u64) * n / &runs;
            f(path_union_class(parts.to_vec(), mult, &runs));
        });
    }
    Ok(())
}

/// The class of `C_n` itself.
pub fn full_cycle_class(n: usize) -> AnalyticClass {
    AnalyticClass {
        shape: ClassShape::Cycle(n),
        edge_count: n,
        vertex_count: n,
        multiplicity: BigUint::one(),
        aut_count: BigUint::from(2 * n),
    }
}

fn sort_classes(classes: &mut [AnalyticClass]) {
    classes.sort_by(|a, b| a.edge_count.cmp(&b.edge_count).then_with(|| a.shape.cmp(&b.shape)));
}

/// Every class of nonempty edge subsets of `C_n`, sorted by edge count
/// then shape.
pub fn analytic_census_cycle(n: usize) -> Result<Vec<AnalyticClass>> {
    check_cycle(n)?;
    let mut out = Vec::new();
    for largest in 1..n {
        for_each_cycle_class_with_largest(n, largest, &mut |c| out.push(c))?;
    }
    out.push(full_cycle_class(n));
    sort_classes(&mut out);
    Ok(out)
}

/// `Σ_λ M_{λ,C_n}` grouped by `(e, m)` without enumerating partitions:
/// summing `m! / Π r_j!` over partitions with `m` parts gives the
/// `C(e-1, m-1)` compositions, so the group total is
/// `n C(n-e-1, m-1) C(e-1, m-1) / m`. Includes the full cycle.
pub fn cycle_multiplicity_total(n: usize) -> Result<BigUint> {
    check_cycle(n)?;
    let mut total = BigUint::one();
    for e in 1..n {
        for m in 1..=e.min(n - e) {
            let words = binomial((e - 1) as u64, (m - 1) as u64);
            total += binomial((n - e - 1) as u64, (m - 1) as u64) * words * n / m;
        }
    }
    Ok(total)
}

fn check_analytic(what: &'static str, param: usize, min: usize) -> Result<()> {
    if param < min {
        return Err(Error::Domain("family parameter below the family minimum"));
    }
    if param > ANALYTIC_CAP {
        return Err(Error::Capacity {
            what,
            requested: param,
            limit: ANALYTIC_CAP,
        });
    }
    Ok(())
}

/// Classes `jK_2` of `kK_2`: multiplicity `C(k, j)`, `|Aut| = 2^j j!`.
pub fn analytic_census_matching(k: usize) -> Result<Vec<AnalyticClass>> {
    check_analytic("analytic matching size", 2 * k, 2)?;
    Ok((1..=k)
        .map(|j| {
            let runs = factorial(j as u64);
            path_union_class(vec![1; j], binomial(k as u64, j as u64), &runs)
        })
        .collect())
}

/// Classes of the path with `len` edges.
pub fn analytic_census_path(len: usize) -> Result<Vec<AnalyticClass>> {
    check_analytic("analytic path length", len + 1, 2)?;
    let fact = Factorials::up_to(len + 1);
    let mut out = Vec::new();
    for e in 1..=len {
        let max_parts = len - e + 1;
        for_each_partition(e, e, max_parts, &mut Vec::new(), &mut |parts| {
            let m = parts.len();
            let runs = fact.run_product(parts);
            let mult = binomial(max_parts as u64, m as u64) * &fact.0[m] / &runs;
            out.push(path_union_class(parts.to_vec(), mult, &runs));
        });
    }
    sort_classes(&mut out);
    Ok(out)
}

/// Classes `K_{1,j}` of the star with `s` leaves.
pub fn analytic_census_star(s: usize) -> Result<Vec<AnalyticClass>> {
    check_analytic("analytic star size", s + 1, 2)?;
    Ok((1..=s)
        .map(|j| {
            let mult = binomial(s as u64, j as u64);
            match j {
                1 | 2 => path_union_class(vec![j], mult, &BigUint::one()),
                _ => AnalyticClass {
                    shape: ClassShape::Star(j),
                    edge_count: j,
                    vertex_count: j + 1,
                    multiplicity: mult,
                    aut_count: factorial(j as u64),
                },
            }
        })
        .collect())
}

/// Analytic census for any family except cliques.
pub fn analytic_census(spec: &FamilySpec) -> Result<Vec<AnalyticClass>> {
    match spec.kind {
        FamilyKind::Cycle => analytic_census_cycle(spec.param),
        FamilyKind::Matching => analytic_census_matching(spec.param),
        FamilyKind::Path => analytic_census_path(spec.param),
        FamilyKind::Star => analytic_census_star(spec.param),
        FamilyKind::Clique => Err(Error::Domain("cliques have no analytic census; use the exhaustive one")),
    }
}

/// Identifier for a family pattern in reports.
pub fn family_pattern_label(spec: &FamilySpec) -> String {
    match make_family(spec) {
        Ok(g) => canonical_form(&g).hex(),
        Err(_) => spec.label(),
    }
}

/// Scans the analytic census of `spec` in `K_n` without materializing it
/// (cycles stream partition by partition).
pub fn family_scan(spec: &FamilySpec, n: usize) -> Result<ClassScan<ClassShape>> {
    let ctx = TermContext::new(n);
    let mut scan = ClassScan::default();
    let mut push = |c: AnalyticClass| {
        if let Some(t) = ctx.terms(&c) {
            scan.push(t, || c.shape.clone());
        }
    };
    match spec.kind {
        FamilyKind::Cycle => {
            for largest in 1..spec.param {
                for_each_cycle_class_with_largest(spec.param, largest, &mut push)?;
            }
            push(full_cycle_class(spec.param));
        }
        _ => analytic_census(spec)?.into_iter().for_each(push),
    }
    Ok(scan)
}

/// `p_E` and `p̃_E` for a family member in `K_n` from its analytic census.
pub fn family_thresholds(spec: &FamilySpec, n: usize) -> Result<ThresholdReport> {
    if n < spec.vertex_count() {
        return Err(Error::Infeasible {
            needed: spec.vertex_count(),
            n,
        });
    }
    family_scan(spec, n)?.into_report(family_pattern_label(spec), spec.edge_count(), n, shape_label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn mults(classes: &[AnalyticClass]) -> Vec<u64> {
        classes.iter().map(|c| c.multiplicity.to_u64().unwrap()).collect()
    }

    #[test]
    fn constructors() {
        let c5 = make_family(&FamilySpec::new(FamilyKind::Cycle, 5).unwrap()).unwrap();
        assert_eq!((c5.order(), c5.edge_count()), (5, 5));
        let m3 = make_family(&FamilySpec::new(FamilyKind::Matching, 3).unwrap()).unwrap();
        assert_eq!((m3.order(), m3.edge_count()), (6, 3));
        let k4 = make_family(&FamilySpec::new(FamilyKind::Clique, 4).unwrap()).unwrap();
        assert_eq!((k4.order(), k4.edge_count()), (4, 6));
        assert!(FamilySpec::new(FamilyKind::Cycle, 2).is_err());
        let big = FamilySpec::new(FamilyKind::Cycle, 65).unwrap();
        assert!(matches!(make_family(&big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn c4_classes() {
        let c = analytic_census_cycle(4).unwrap();
        // K_2, 2K_2, P_3 (2 edges), P_4 (3 edges), C_4
        assert_eq!(c.len(), 5);
        let by_shape: Vec<(ClassShape, u64)> = c
            .iter()
            .map(|k| (k.shape.clone(), k.multiplicity.to_u64().unwrap()))
            .collect();
        assert_eq!(
            by_shape,
            vec![
                (ClassShape::PathUnion(vec![1]), 4),
                (ClassShape::PathUnion(vec![1, 1]), 2),
                (ClassShape::PathUnion(vec![2]), 4),
                (ClassShape::PathUnion(vec![3]), 4),
                (ClassShape::Cycle(4), 1),
            ]
        );
    }

    #[test]
    fn c6_matching_pairs() {
        let c = analytic_census_cycle(6).unwrap();
        let two = c.iter().find(|k| k.shape == ClassShape::PathUnion(vec![1, 1])).unwrap();
        assert_eq!(two.multiplicity, BigUint::from(9u32));
        assert_eq!(c.last().unwrap().multiplicity, BigUint::one());
    }

    #[test]
    fn matching_and_star_counts() {
        assert_eq!(mults(&analytic_census_matching(2).unwrap()), vec![2, 1]);
        assert_eq!(mults(&analytic_census_matching(4).unwrap())[1], 6);
        assert_eq!(mults(&analytic_census_star(4).unwrap()), vec![4, 6, 4, 1]);
    }

    #[test]
    fn cycle_sums() {
        for n in 3..=30 {
            let total: BigUint = analytic_census_cycle(n)
                .unwrap()
                .iter()
                .map(|c| c.multiplicity.clone())
                .sum();
            let want = (BigUint::one() << n) - 1u32;
            assert_eq!(total, want, "n = {n}");
            assert_eq!(cycle_multiplicity_total(n).unwrap(), want);
        }
    }

    #[test]
    fn path_sums() {
        for len in 1..=20 {
            let total: BigUint = analytic_census_path(len)
                .unwrap()
                .iter()
                .map(|c| c.multiplicity.clone())
                .sum();
            assert_eq!(total, (BigUint::one() << len) - 1u32, "len = {len}");
        }
    }

    #[test]
    fn streaming_matches_materialized() {
        let spec = FamilySpec::new(FamilyKind::Cycle, 9).unwrap();
        let streamed = family_thresholds(&spec, 11).unwrap();
        let classes = analytic_census_cycle(9).unwrap();
        let direct =
            crate::thresholds::thresholds_from_classes(family_pattern_label(&spec), 9, 9, 11, &classes).unwrap();
        assert_eq!(streamed.log_p_modified, direct.log_p_modified);
        assert_eq!(streamed.log_p_expectation, direct.log_p_expectation);
        assert_eq!(streamed.witnesses_modified, direct.witnesses_modified);
    }
}
