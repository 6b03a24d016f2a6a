mod common;

use common::*;
use sgthresh_core::families::FamilyKind;
use sgthresh_core::mc::{
    contains_copy, estimate_pc, exact_containment_probability, exact_pc, sample_gnp, BisectionConfig, OracleKind,
    UniformField,
};
use sgthresh_core::rng::{stream_id, tag, SampleStream};
use sgthresh_core::{compute_thresholds, subgraph_census, CensusOptions, Graph};

#[test]
fn gnp_extremes_and_mean() {
    for i in 0..20 {
        let mut s = SampleStream::new(1, 0, i);
        assert_eq!(sample_gnp(9, 0.0, &mut s).unwrap().edge_count(), 0);
        assert_eq!(sample_gnp(9, 1.0, &mut s).unwrap().edge_count(), 36);
    }
    let samples = 10_000u64;
    let total: usize = (0..samples)
        .map(|i| {
            sample_gnp(10, 0.5, &mut SampleStream::new(4, 0, i))
                .unwrap()
                .edge_count()
        })
        .sum();
    let mean = total as f64 / samples as f64;
    let sigma = (45.0f64 * 0.25 / samples as f64).sqrt();
    assert!((mean - 22.5).abs() <= 3.0 * sigma, "{mean}");
}

#[test]
fn oracle_examples() {
    let k3 = Graph::complete(3).unwrap();
    let p3 = fam(FamilyKind::Path, 2);
    assert!(contains_copy(&k3, &k3, OracleKind::Generic).unwrap());
    assert!(!contains_copy(&p3, &k3, OracleKind::Generic).unwrap());
    let c6 = fam(FamilyKind::Cycle, 6);
    let m3 = fam(FamilyKind::Matching, 3);
    assert!(contains_copy(&c6, &m3, OracleKind::PerfectMatching).unwrap());
    assert!(contains_copy(&c6, &k3, OracleKind::PerfectMatching).is_err());
    assert!(contains_copy(&c6, &p3, OracleKind::Clique).is_err());
}

/// Specialized oracles against the generic search on random hosts.
#[test]
fn oracle_agreement() {
    let cases = [
        (OracleKind::HamiltonianCycle, fam(FamilyKind::Cycle, 8), 8, 0.45),
        (OracleKind::HamiltonianCycle, fam(FamilyKind::Cycle, 11), 11, 0.4),
        (OracleKind::PerfectMatching, fam(FamilyKind::Matching, 5), 10, 0.2),
        (OracleKind::PerfectMatching, fam(FamilyKind::Matching, 4), 11, 0.12),
        (OracleKind::PerfectMatching, fam(FamilyKind::Matching, 6), 12, 0.18),
        (OracleKind::Clique, fam(FamilyKind::Clique, 4), 12, 0.45),
        (OracleKind::Clique, fam(FamilyKind::Clique, 5), 10, 0.6),
    ];
    for (kind, pattern, n, p) in cases {
        let mut hits = 0;
        for i in 0..1000 {
            let host = sample_gnp(n, p, &mut SampleStream::new(17, kind as u64, i)).unwrap();
            let fast = contains_copy(&host, &pattern, kind).unwrap();
            assert_eq!(
                fast,
                contains_copy(&host, &pattern, OracleKind::Generic).unwrap(),
                "{kind} {i}"
            );
            hits += fast as u32;
        }
        // both outcomes should occur for the comparison to mean anything
        assert!(hits > 20 && hits < 980, "{kind} n={n}: {hits}");
    }
}

#[test]
fn coupled_monotonicity() {
    let patterns = [
        (fam(FamilyKind::Cycle, 8), OracleKind::HamiltonianCycle),
        (fam(FamilyKind::Matching, 4), OracleKind::PerfectMatching),
        (fam(FamilyKind::Clique, 4), OracleKind::Clique),
        (fam(FamilyKind::Star, 3), OracleKind::Generic),
    ];
    let ps: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    for (pattern, kind) in &patterns {
        for i in 0..200 {
            let field = UniformField::sample(8, &mut SampleStream::new(2, stream_id(tag::MISC, 0), i)).unwrap();
            let mut seen = false;
            for &p in &ps {
                let now = contains_copy(&field.graph_at(p), pattern, *kind).unwrap();
                assert!(!seen || now, "{kind} flipped at p={p}");
                seen = now;
            }
        }
    }
}

#[test]
fn exact_polynomial_against_enumeration() {
    // K_3 in G(4, p): count the host graphs by brute force
    let k3 = Graph::complete(3).unwrap();
    let hosts = all_graphs(4);
    for &p in &[0.2f64, 0.5, 0.7] {
        let brute: f64 = hosts
            .iter()
            .filter(|g| brute_embeddings(&k3, g) > 0)
            .map(|g| p.powi(g.edge_count() as i32) * (1.0 - p).powi(6 - g.edge_count() as i32))
            .sum();
        let exact = exact_containment_probability(&k3, 4, p).unwrap();
        assert!((brute - exact).abs() < 1e-13);
    }
}

#[test]
fn exact_pc_sandwich() {
    let k3 = Graph::complete(3).unwrap();
    let census = subgraph_census(&k3, &CensusOptions::default()).unwrap();
    let pc = exact_pc(&k3, 5, 1e-12).unwrap();
    let r = compute_thresholds(&k3, 5, &census).unwrap();
    assert!(pc.p_hat > 0.36 && pc.p_hat < 1.0);
    assert!(r.p_modified <= pc.p_hat);
    assert!((exact_pc(&k3, 3, 1e-12).unwrap().p_hat - 0.5f64.cbrt()).abs() < 1e-9);
}

#[test]
fn monte_carlo_examples() {
    let cfg = BisectionConfig::default();
    let k3 = Graph::complete(3).unwrap();
    let exact = exact_pc(&k3, 5, 1e-12).unwrap().p_hat;
    let mc = estimate_pc(&k3, 5, &cfg, OracleKind::Generic).unwrap();
    assert!(mc.ci_low <= exact && exact <= mc.ci_high, "{mc:?} vs {exact}");
    assert!(mc.ci_low <= mc.p_hat && mc.p_hat <= mc.ci_high);

    let k2 = Graph::complete(2).unwrap();
    let closed = 1.0 - 0.5f64.powf(1.0 / 15.0);
    let mc = estimate_pc(&k2, 6, &cfg, OracleKind::Generic).unwrap();
    assert!(mc.ci_low <= closed && closed <= mc.ci_high, "{mc:?} vs {closed}");

    let c10 = fam(FamilyKind::Cycle, 10);
    let census = subgraph_census(&c10, &CensusOptions::default()).unwrap();
    let r = compute_thresholds(&c10, 10, &census).unwrap();
    let mc = estimate_pc(&c10, 10, &cfg, OracleKind::HamiltonianCycle).unwrap();
    assert!(mc.ci_high >= r.p_modified, "{mc:?} vs {}", r.p_modified);
}

#[test]
fn probe_fractions_are_monotone() {
    let c8 = fam(FamilyKind::Cycle, 8);
    let mc = estimate_pc(&c8, 8, &BisectionConfig::default(), OracleKind::HamiltonianCycle).unwrap();
    let mut probes = mc.probes.clone();
    probes.sort_by(|a, b| a.p.total_cmp(&b.p));
    for w in probes.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let fa = a.successes as f64 / a.samples as f64;
        let fb = b.successes as f64 / b.samples as f64;
        let se = (fa * (1.0 - fa) / a.samples as f64 + fb * (1.0 - fb) / b.samples as f64).sqrt();
        assert!(fb >= fa - 3.0 * se.max(1e-3), "{a:?} {b:?}");
    }
}

#[test]
fn estimate_is_seed_deterministic() {
    let c6 = fam(FamilyKind::Cycle, 6);
    let cfg = BisectionConfig {
        seed: 42,
        ..BisectionConfig::default()
    };
    let a = estimate_pc(&c6, 7, &cfg, OracleKind::Generic).unwrap();
    let b = estimate_pc(&c6, 7, &cfg, OracleKind::Generic).unwrap();
    assert_eq!(a, b);
}
