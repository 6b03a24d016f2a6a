//! Acceptance criteria 1 through 11 as runnable checks. Every tolerance and
//! frozen constant lives in this file.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sgthresh_core::families::{FamilyKind, FamilySpec};
use sgthresh_core::mc::{exact_pc, BisectionConfig, OracleKind, PcEstimate};
use sgthresh_core::spread::{containment_ratio, verify_spread_certificate};
use sgthresh_core::{
    compute_thresholds, count_embeddings, subgraph_census, CensusOptions, Graph, Result, ThresholdReport,
};

use crate::corpus::{corpus, Pattern};
use crate::export::{float_number, to_json, EstimateJson};
use crate::par;

/// Upper end of the sandwich comparison against the exact `p_c`.
pub const SANDWICH_SLACK: f64 = 1e-9;
/// Pinned threshold values, absolute.
pub const THRESHOLD_TOL: f64 = 1e-12;
/// Pinned exact critical probability, absolute.
pub const EXACT_PC_TOL: f64 = 1e-9;
/// Bisection tolerance when solving the exact polynomial.
pub const EXACT_SOLVE_TOL: f64 = 1e-12;
/// Statistical agreement bound in standard errors.
pub const SE_BOUND: f64 = 3.0;
pub const RATE_SAMPLES: u64 = 10_000;
pub const MOMENT_SAMPLES: u64 = 100_000;
pub const HAMILTONIAN_ORDERS: [usize; 6] = [8, 16, 24, 32, 48, 64];
pub const HAMILTONIAN_BAND_LIMIT: f64 = 4.0;
/// Relative agreement with the frozen golden band.
pub const GOLDEN_REL_TOL: f64 = 1e-9;
pub const GOLDEN_BAND: &str = include_str!("../golden/hamiltonian_band.json");
/// Frozen bound on the implied constant `L̂`. The calibration run with seed
/// 0 gave 1.7031 (2K_2 at n = 12).
pub const L_FROZEN: f64 = 2.0;
pub const DESK_CHECK_ORDERS: [usize; 3] = [8, 10, 12];
pub const FAMILY_ORDERS: [usize; 4] = [10, 12, 14, 16];
pub const SEPARATION_ORDERS: (usize, usize) = (10, 16);
/// Sample multiplier for the separation rerun.
pub const SEPARATION_RERUN: u64 = 4;
/// Thread counts compared by the determinism check.
pub const DETERMINISM_THREADS: [usize; 2] = [1, 3];

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples_per_probe: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples_per_probe: 2000,
        }
    }
}

impl SuiteConfig {
    fn bisection(&self, scale: u64) -> BisectionConfig {
        let base = BisectionConfig::default();
        BisectionConfig {
            samples_per_probe: self.samples_per_probe * scale,
            sample_cap: base.sample_cap.max(16 * self.samples_per_probe) * scale,
            tol: base.tol,
            seed: self.seed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        format!(
            "criterion {:>2} {status} {}: {} [{:.1}s]",
            self.id, self.name, self.detail, self.seconds
        )
    }
}

pub const NAMES: [&str; 11] = [
    "census completeness",
    "counting oracle equivalence",
    "sandwich inequality",
    "pinned values",
    "spread certificate",
    "double-counting identity",
    "hamiltonian scaling",
    "bounded-ratio desk check",
    "separation trend",
    "first-moment identity",
    "determinism",
];

/// `all`, `fast` (no Monte Carlo bisection), or a comma list of ids.
pub fn parse_suite(name: &str) -> std::result::Result<Vec<u8>, String> {
    match name {
        "all" => Ok((1..=11).collect()),
        "fast" => Ok(vec![1, 2, 3, 4, 5, 6, 7, 10]),
        list => list
            .split(',')
            .map(|s| {
                let s = s.trim().trim_start_matches('c');
                match s.parse::<u8>() {
                    Ok(id @ 1..=11) => Ok(id),
                    _ => Err(format!("unknown suite or criterion {s:?}; use all, fast or ids 1..11")),
                }
            })
            .collect(),
    }
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, fail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(fail())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn census_of(g: &Graph) -> Result<Vec<sgthresh_core::SubgraphClass>> {
    par::census(g, &CensusOptions::default())
}

fn c1() -> Check {
    let mut classes = 0;
    for p in corpus() {
        let c = census_of(&p.graph).map_err(err)?;
        let total: num_bigint::BigUint = c.iter().map(|k| k.multiplicity.clone()).sum();
        let want = (num_bigint::BigUint::from(1u32) << p.graph.edge_count()) - 1u32;
        ensure(total == want, || format!("{}: sum {total} != {want}", p.name))?;
        classes += c.len();
    }
    Ok(format!(
        "{} patterns, {classes} classes, every sum 2^e - 1",
        corpus().len()
    ))
}

fn c2() -> Check {
    let mut checked = 0;
    for p in corpus() {
        for c in census_of(&p.graph).map_err(err)? {
            let emb = num_bigint::BigUint::from(count_embeddings(&c.representative, &p.graph));
            ensure(&c.multiplicity * &c.aut_count == emb, || {
                format!(
                    "{}: class {} gives {} * {} != {emb}",
                    p.name,
                    c.canonical.hex(),
                    c.multiplicity,
                    c.aut_count
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} classes, M * |Aut| = embeddings"))
}

fn c3() -> Check {
    let cases: Vec<(Pattern, usize)> = corpus()
        .into_iter()
        .flat_map(|p| (p.graph.vertex_count()..=6).map(move |n| (p.clone(), n)))
        .collect();
    let ratios = cases
        .par_iter()
        .map(|(p, n)| {
            let census = subgraph_census(&p.graph, &CensusOptions::default()).map_err(err)?;
            let r = compute_thresholds(&p.graph, *n, &census).map_err(err)?;
            let pc = exact_pc(&p.graph, *n, EXACT_SOLVE_TOL).map_err(err)?;
            ensure(
                r.p_expectation <= r.p_modified && r.p_modified <= pc.p_hat + SANDWICH_SLACK,
                || {
                    format!(
                        "{} n={n}: p_E {} p~_E {} p_c {}",
                        p.name, r.p_expectation, r.p_modified, pc.p_hat
                    )
                },
            )?;
            Ok(pc.p_hat / r.p_modified)
        })
        .collect::<std::result::Result<Vec<f64>, String>>()?;
    let min_ratio = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(format!(
        "{} (H, n) pairs, smallest p_c / p~_E = {min_ratio:.3}",
        cases.len()
    ))
}

fn c4() -> Check {
    let k3 = Graph::complete(3).map_err(err)?;
    let census = census_of(&k3).map_err(err)?;
    let r5 = compute_thresholds(&k3, 5, &census).map_err(err)?;
    let want5 = (1.0f64 / 20.0).cbrt();
    let r3 = compute_thresholds(&k3, 3, &census).map_err(err)?;
    let want3 = 0.5f64.cbrt();
    let pc3 = exact_pc(&k3, 3, EXACT_SOLVE_TOL).map_err(err)?.p_hat;
    ensure((r5.p_expectation - want5).abs() <= THRESHOLD_TOL, || {
        format!("p_E(K_3,5) = {}", r5.p_expectation)
    })?;
    ensure((r5.p_modified - want5).abs() <= THRESHOLD_TOL, || {
        format!("p~_E(K_3,5) = {}", r5.p_modified)
    })?;
    ensure((pc3 - want3).abs() <= EXACT_PC_TOL, || {
        format!("exact p_c(K_3,3) = {pc3}")
    })?;
    ensure((r3.p_modified - want3).abs() <= THRESHOLD_TOL, || {
        format!("p~_E(K_3,3) = {}", r3.p_modified)
    })?;
    Ok(format!(
        "p_E(K_3,5) = p~_E(K_3,5) = {:.12}, p~_E(K_3,3) = {:.12}, exact p_c(K_3,3) = {pc3:.12}",
        r5.p_modified, r3.p_modified
    ))
}

fn c5() -> Check {
    let mut count = 0;
    let mut tightest = f64::INFINITY;
    for p in corpus() {
        let census = census_of(&p.graph).map_err(err)?;
        for n in p.graph.vertex_count()..=12 {
            let r = compute_thresholds(&p.graph, n, &census).map_err(err)?;
            let cert = verify_spread_certificate(&p.graph, n, &census, &r).map_err(err)?;
            ensure(cert.pass, || {
                format!("{} n={n}: R_claimed {} > R* {}", p.name, cert.r_claimed, cert.r_star)
            })?;
            tightest = tightest.min(cert.log_r_star - cert.log_r_claimed);
            count += 1;
        }
    }
    Ok(format!("{count} certificates pass, smallest log margin {tightest:.3e}"))
}

fn c6(cfg: &SuiteConfig) -> Check {
    let k3 = Graph::complete(3).map_err(err)?;
    let c4 = sgthresh_core::families::make_family(&FamilySpec::new(FamilyKind::Cycle, 4).map_err(err)?).map_err(err)?;
    let c5 = sgthresh_core::families::make_family(&FamilySpec::new(FamilyKind::Cycle, 5).map_err(err)?).map_err(err)?;
    let pairs = [
        (
            "K_3, edge, n=5",
            &k3,
            5,
            Graph::from_edges(5, &[(0, 1)]).map_err(err)?,
            Some(0.3),
        ),
        (
            "C_4, 2K_2, n=4",
            &c4,
            4,
            Graph::from_edges(4, &[(0, 1), (2, 3)]).map_err(err)?,
            Some(2.0 / 3.0),
        ),
        (
            "C_5, P_3, n=6",
            &c5,
            6,
            Graph::from_edges(6, &[(0, 1), (1, 2)]).map_err(err)?,
            None,
        ),
    ];
    let mut parts = Vec::new();
    for (label, h, n, j0, pinned) in pairs {
        let exact = containment_ratio(h, n, &j0).map_err(err)?;
        if let Some(want) = pinned {
            ensure((exact - want).abs() < 1e-12, || {
                format!("{label}: exact ratio {exact} != {want}")
            })?;
        }
        let est = par::empirical_containment_rate(h, n, &j0, RATE_SAMPLES, cfg.seed).map_err(err)?;
        ensure(est.within(exact, SE_BOUND), || {
            format!("{label}: rate {} vs {exact} (se {})", est.rate, est.std_error)
        })?;
        parts.push(format!("{label}: {:.4} vs {exact:.4}", est.rate));
    }
    Ok(parts.join("; "))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct HamiltonianBand {
    pub n: Vec<usize>,
    pub n_p_tilde_e: Vec<f64>,
    pub max_over_min: f64,
}

/// `n p̃_E(C_n)` for the pinned orders.
pub fn hamiltonian_band() -> Result<HamiltonianBand> {
    let mut values = Vec::new();
    for &n in &HAMILTONIAN_ORDERS {
        let (r, _) = par::family_report(&FamilySpec::new(FamilyKind::Cycle, n)?, n)?;
        values.push(n as f64 * r.p_modified);
    }
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(HamiltonianBand {
        n: HAMILTONIAN_ORDERS.to_vec(),
        n_p_tilde_e: values,
        max_over_min: max / min,
    })
}

/// Golden-file text for the current band; written once and then frozen.
pub fn hamiltonian_golden() -> Result<String> {
    let band = hamiltonian_band()?;
    let value = serde_json::json!({
        "n": band.n,
        "n_p_tilde_e": band.n_p_tilde_e.iter().map(|&x| float_number(x)).collect::<Vec<_>>(),
        "max_over_min": float_number(band.max_over_min),
    });
    Ok(to_json(&value))
}

fn c7() -> Check {
    let band = hamiltonian_band().map_err(err)?;
    let golden: HamiltonianBand =
        serde_json::from_str(GOLDEN_BAND).map_err(|e| format!("golden band unreadable: {e}"))?;
    ensure(golden.n == band.n, || "golden band covers different orders".to_string())?;
    for ((&n, &got), &want) in band.n.iter().zip(&band.n_p_tilde_e).zip(&golden.n_p_tilde_e) {
        ensure((got - want).abs() <= GOLDEN_REL_TOL * want.abs(), || {
            format!("n={n}: n p~_E = {got} drifted from golden {want}")
        })?;
    }
    ensure(band.max_over_min <= HAMILTONIAN_BAND_LIMIT, || {
        format!("max/min {} above {HAMILTONIAN_BAND_LIMIT}", band.max_over_min)
    })?;
    let fmt: Vec<String> = band
        .n
        .iter()
        .zip(&band.n_p_tilde_e)
        .map(|(n, x)| format!("{n}:{x:.4}"))
        .collect();
    Ok(format!(
        "n p~_E = [{}], max/min {:.4}",
        fmt.join(" "),
        band.max_over_min
    ))
}

#[derive(Serialize, Debug, Clone)]
pub struct DeskCase {
    pub name: String,
    pub n: usize,
    pub edges: usize,
    pub oracle: &'static str,
    #[serde(serialize_with = "ser_f17")]
    pub p_tilde_e: f64,
    #[serde(serialize_with = "ser_f17")]
    pub l_hat: f64,
    pub estimate: EstimateJson,
}

fn ser_f17<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    float_number(*x).serialize(s)
}

fn desk_case(
    name: String,
    g: &Graph,
    n: usize,
    report: &ThresholdReport,
    oracle: OracleKind,
    cfg: &BisectionConfig,
) -> Result<(DeskCase, PcEstimate)> {
    let est = par::estimate_pc(g, n, cfg, oracle)?;
    let ln_e = (g.edge_count() as f64).ln().max(1.0);
    Ok((
        DeskCase {
            name,
            n,
            edges: g.edge_count(),
            oracle: oracle.name(),
            p_tilde_e: report.p_modified,
            l_hat: est.ci_high / (report.p_modified * ln_e),
            estimate: EstimateJson::from(&est),
        },
        est,
    ))
}

/// Every Monte Carlo run behind the bounded-ratio check, in a fixed order.
pub fn desk_check_cases(cfg: &SuiteConfig) -> Result<Vec<DeskCase>> {
    let bis = cfg.bisection(1);
    let mut out = Vec::new();
    for p in corpus().into_iter().filter(|p| p.graph.edge_count() >= 2) {
        let census = census_of(&p.graph)?;
        for &n in &DESK_CHECK_ORDERS {
            if n < p.graph.vertex_count() {
                continue;
            }
            let r = compute_thresholds(&p.graph, n, &census)?;
            let oracle = OracleKind::suggest(&p.graph, n);
            out.push(desk_case(p.name.clone(), &p.graph, n, &r, oracle, &bis)?.0);
        }
    }
    for &n in &FAMILY_ORDERS {
        for (kind, param, oracle) in [
            (FamilyKind::Cycle, n, OracleKind::HamiltonianCycle),
            (FamilyKind::Matching, n / 2, OracleKind::PerfectMatching),
        ] {
            let spec = FamilySpec::new(kind, param)?;
            let g = sgthresh_core::families::make_family(&spec)?;
            let (r, _) = par::family_report(&spec, n)?;
            out.push(desk_case(format!("{}[{param}]", kind), &g, n, &r, oracle, &bis)?.0);
        }
    }
    Ok(out)
}

pub fn desk_check_json(cases: &[DeskCase]) -> String {
    to_json(&cases)
}

fn c8(cfg: &SuiteConfig, json_out: &mut Option<String>) -> Check {
    let cases = desk_check_cases(cfg).map_err(err)?;
    *json_out = Some(desk_check_json(&cases));
    let worst = cases
        .iter()
        .max_by(|a, b| a.l_hat.total_cmp(&b.l_hat))
        .ok_or_else(|| "no cases".to_string())?;
    let low = cases.iter().filter(|c| c.estimate.low_confidence).count();
    ensure(worst.l_hat <= L_FROZEN, || {
        format!(
            "L-hat {} for {} n={} above {L_FROZEN}",
            worst.l_hat, worst.name, worst.n
        )
    })?;
    Ok(format!(
        "{} runs, max L-hat {:.4} ({} n={}) <= {L_FROZEN}, {low} low-confidence",
        cases.len(),
        worst.l_hat,
        worst.name,
        worst.n
    ))
}

fn cycle_ratio_interval(n: usize, bis: &BisectionConfig) -> Result<(f64, f64)> {
    let spec = FamilySpec::new(FamilyKind::Cycle, n)?;
    let g = sgthresh_core::families::make_family(&spec)?;
    let (r, _) = par::family_report(&spec, n)?;
    let est = par::estimate_pc(&g, n, bis, OracleKind::HamiltonianCycle)?;
    Ok((est.ci_low / r.p_modified, est.ci_high / r.p_modified))
}

fn c9(cfg: &SuiteConfig) -> Check {
    let (small, large) = SEPARATION_ORDERS;
    let mut attempts = Vec::new();
    for scale in [1, SEPARATION_RERUN] {
        let bis = cfg.bisection(scale);
        let a = cycle_ratio_interval(small, &bis).map_err(err)?;
        let b = cycle_ratio_interval(large, &bis).map_err(err)?;
        let text = format!(
            "{}x samples: n={small} [{:.4}, {:.4}], n={large} [{:.4}, {:.4}]",
            scale, a.0, a.1, b.0, b.1
        );
        if b.0 > a.1 {
            attempts.push(text);
            return Ok(attempts.join("; "));
        }
        attempts.push(text);
    }
    Err(format!("intervals overlap: {}", attempts.join("; ")))
}

fn c10(cfg: &SuiteConfig) -> Check {
    let k3 = Graph::complete(3).map_err(err)?;
    let m = par::first_moment(&k3, 6, 0.3, MOMENT_SAMPLES, cfg.seed).map_err(err)?;
    ensure((m.mean - 0.54).abs() <= SE_BOUND * m.std_error, || {
        format!("mean {} vs 0.54 (se {})", m.mean, m.std_error)
    })?;
    Ok(format!("mean {:.5} vs 0.54, se {:.5}", m.mean, m.std_error))
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}

fn c11(cfg: &SuiteConfig, reference: Option<&String>) -> Check {
    let mut outputs: Vec<(String, String)> = Vec::new();
    if let Some(r) = reference {
        outputs.push(("default pool".into(), r.clone()));
    }
    for t in DETERMINISM_THREADS {
        let json = in_pool(t, || desk_check_cases(cfg).map(|c| desk_check_json(&c))).map_err(err)?;
        outputs.push((format!("{t} threads"), json));
    }
    let (first_label, first) = &outputs[0];
    for (label, json) in &outputs[1..] {
        ensure(json == first, || format!("{label} output differs from {first_label}"))?;
    }
    let labels: Vec<&str> = outputs.iter().map(|(l, _)| l.as_str()).collect();
    Ok(format!("{} bytes identical across {}", first.len(), labels.join(", ")))
}

/// Runs the selected criteria in order.
pub fn run_suite(ids: &[u8], cfg: &SuiteConfig, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let mut desk_json = None;
    let mut out = Vec::new();
    for &id in ids {
        let start = Instant::now();
        let result = match id {
            1 => c1(),
            2 => c2(),
            3 => c3(),
            4 => c4(),
            5 => c5(),
            6 => c6(cfg),
            7 => c7(),
            8 => c8(cfg, &mut desk_json),
            9 => c9(cfg),
            10 => c10(cfg),
            11 => c11(cfg, desk_json.as_ref()),
            _ => Err(format!("no criterion {id}")),
        };
        let outcome = Outcome {
            id,
            name: NAMES.get(id as usize - 1).copied().unwrap_or("unknown"),
            pass: result.is_ok(),
            detail: result.unwrap_or_else(|e| e),
            seconds: start.elapsed().as_secs_f64(),
        };
        report(&outcome);
        out.push(outcome);
    }
    out
}
