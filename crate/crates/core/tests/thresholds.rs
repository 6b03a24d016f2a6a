mod common;

use common::*;
use sgthresh_core::families::FamilyKind;
use sgthresh_core::thresholds::{expectation_value, generalized_threshold};
use sgthresh_core::{compute_thresholds, subgraph_census, CensusOptions, Graph};

/// `(e(H'), M_{H',H}, M_{H'})` per class, from brute-force embedding counts.
fn brute_terms(h: &Graph, n: usize) -> Vec<(usize, f64, f64)> {
    let kn = Graph::complete(n).unwrap();
    subgraph_census(h, &CensusOptions::default())
        .unwrap()
        .iter()
        .map(|c| {
            let rep = &c.representative;
            let aut = brute_aut(rep) as f64;
            let in_h = brute_embeddings(rep, h) as f64 / aut;
            let in_kn = brute_embeddings(rep, &kn) as f64 / aut;
            (c.edge_count, in_h, in_kn)
        })
        .collect()
}

#[test]
fn pinned_examples() {
    let k3 = Graph::complete(3).unwrap();
    let c = subgraph_census(&k3, &CensusOptions::default()).unwrap();
    let r = compute_thresholds(&k3, 5, &c).unwrap();
    let want = (1.0f64 / 20.0).cbrt();
    assert!((r.p_expectation - want).abs() < 1e-12);
    assert!((r.p_modified - want).abs() < 1e-12);
    assert_eq!(r.witnesses_modified.len(), 1);
    assert_eq!(r.witnesses_modified[0].edge_count, 3);

    let r = compute_thresholds(&k3, 3, &c).unwrap();
    assert!((r.p_modified - 0.5f64.cbrt()).abs() < 1e-12);

    let m2 = fam(FamilyKind::Matching, 2);
    let c = subgraph_census(&m2, &CensusOptions::default()).unwrap();
    let r = compute_thresholds(&m2, 4, &c).unwrap();
    let want = (1.0f64 / 6.0).sqrt();
    assert!((r.p_modified - want).abs() < 1e-12);
    assert!((r.p_expectation - want).abs() < 1e-12);
}

#[test]
fn expectation_values() {
    let census = |g: &Graph| subgraph_census(g, &CensusOptions::default()).unwrap();
    let k2 = &census(&Graph::complete(2).unwrap())[0];
    assert!(expectation_value(k2, 5, 0.1).unwrap().abs() < 1e-12);
    let k3 = census(&Graph::complete(3).unwrap());
    let v = expectation_value(k3.last().unwrap(), 6, 0.3).unwrap();
    assert!((v - 0.54f64.ln()).abs() < 1e-12);
    assert!(expectation_value(k2, 5, 0.0).is_err());
}

/// At `p̃_E` every class meets its bar and slightly below some class fails;
/// likewise for `p_E` with the bar 1/2. Counts come from brute force.
#[test]
fn defining_properties() {
    for (name, h) in corpus() {
        let v = h.vertex_count();
        if v > 6 {
            continue;
        }
        let census = subgraph_census(&h, &CensusOptions::default()).unwrap();
        for n in v..=7 {
            let r = compute_thresholds(&h, n, &census).unwrap();
            let terms = brute_terms(&h, n);
            let check = |p: f64, modified: bool| {
                terms.iter().all(|&(e, in_h, in_kn)| {
                    let bar = if modified { in_h / 2.0 } else { 0.5 };
                    in_kn * p.powi(e as i32) >= bar * (1.0 - 1e-9)
                })
            };
            assert!(check(r.p_modified, true), "{name} n={n}");
            assert!(!check(r.p_modified * (1.0 - 1e-6), true), "{name} n={n}");
            assert!(check(r.p_expectation, false), "{name} n={n}");
            assert!(!check(r.p_expectation * (1.0 - 1e-6), false), "{name} n={n}");
            assert!(r.log_p_expectation <= r.log_p_modified, "{name} n={n}");
            assert!(r.log_p_modified <= -std::f64::consts::LN_2 / h.edge_count() as f64 + 1e-15);
            for w in &r.witnesses_modified {
                assert!((w.log_value - r.log_p_modified).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn nonincreasing_in_n() {
    for (name, h) in corpus() {
        let census = subgraph_census(&h, &CensusOptions::default()).unwrap();
        let v = h.vertex_count();
        let mut prev = f64::INFINITY;
        for n in v..=12.max(v) {
            let r = compute_thresholds(&h, n, &census).unwrap();
            assert!(r.log_p_modified <= prev, "{name} n={n}");
            prev = r.log_p_modified;
        }
    }
}

#[test]
fn generalized_constant_half_is_the_threshold() {
    let k4 = Graph::complete(4).unwrap();
    let census = subgraph_census(&k4, &CensusOptions::default()).unwrap();
    let r = compute_thresholds(&k4, 9, &census).unwrap();
    let g = generalized_threshold(9, &census, 0.5, true).unwrap();
    assert!((g - r.p_modified).abs() < 1e-14);
    let g = generalized_threshold(9, &census, 0.5, false).unwrap();
    assert!((g - r.p_expectation).abs() < 1e-14);
    assert!(generalized_threshold(9, &census, 0.9, true).unwrap() > r.p_modified);
}
