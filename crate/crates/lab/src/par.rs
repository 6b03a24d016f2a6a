//! Rayon drivers. Work is cut into fixed-size chunks independent of the
//! pool size and recombined by sums or keyed merges, so every result is
//! bit-identical across thread counts.

use std::ops::Range;

use rayon::prelude::*;
use sgthresh_core::census::{census_edges, census_range, PartialCensus};
use sgthresh_core::families::{
    family_pattern_label, family_scan, for_each_cycle_class_with_largest, full_cycle_class, shape_label, ClassShape,
    FamilyKind, FamilySpec,
};
use sgthresh_core::mc::{
    estimate_pc_with, sample_gnp, BisectionConfig, ContainmentTrial, Oracle, OracleKind, PcEstimate, ProbeSampler,
};
use sgthresh_core::rng::{stream_id, tag, SampleStream};
use sgthresh_core::spread::{certificate_from_scan, CopySampler, RateEstimate, SpreadCertificate};
use sgthresh_core::thresholds::{ClassScan, TermContext, ThresholdReport};
use sgthresh_core::{automorphism_count, count_embeddings, CensusOptions, Error, Graph, Result, SubgraphClass};

/// Samples per parallel work item.
const SAMPLE_CHUNK: u64 = 256;

/// Census masks per parallel work item.
const MASK_CHUNK: u64 = 1 << 12;

fn chunks(range: Range<u64>, size: u64) -> Vec<Range<u64>> {
    let mut out = Vec::new();
    let mut start = range.start;
    while start < range.end {
        let end = range.end.min(start.saturating_add(size));
        out.push(start..end);
        start = end;
    }
    out
}

fn par_count(range: Range<u64>, f: impl Fn(u64) -> bool + Sync) -> u64 {
    chunks(range, SAMPLE_CHUNK)
        .into_par_iter()
        .map(|c| c.filter(|&i| f(i)).count() as u64)
        .sum()
}

/// Exhaustive census with masks split across the pool.
pub fn census(h: &Graph, options: &CensusOptions) -> Result<Vec<SubgraphClass>> {
    let edges = census_edges(h, options)?;
    let end = 1u64 << edges.len();
    Ok(chunks(0..end, MASK_CHUNK)
        .into_par_iter()
        .map(|r| census_range(h, &edges, options, r))
        .reduce(PartialCensus::default, PartialCensus::merge)
        .finish())
}

/// Probe sampler that spreads one probe's samples across the pool.
pub struct ParallelSampler(pub ContainmentTrial);

impl ProbeSampler for ParallelSampler {
    fn successes(&self, p: f64, stream: u64, indices: Range<u64>) -> u64 {
        par_count(indices, |i| self.0.run(p, stream, i))
    }
}

/// Monte Carlo `p_c` with parallel probes.
pub fn estimate_pc(pattern: &Graph, n: usize, cfg: &BisectionConfig, oracle: OracleKind) -> Result<PcEstimate> {
    if pattern.vertex_count() > n {
        return Err(Error::Infeasible {
            needed: pattern.vertex_count(),
            n,
        });
    }
    let trial = ContainmentTrial::new(Oracle::new(oracle, pattern, n)?, cfg.seed);
    estimate_pc_with(&ParallelSampler(trial), pattern, n, cfg)
}

/// Parallel version of the core empirical containment rate; same streams,
/// same answer.
pub fn empirical_containment_rate(h: &Graph, n: usize, j0: &Graph, samples: u64, seed: u64) -> Result<RateEstimate> {
    if samples == 0 {
        return Err(Error::Domain("samples must be at least 1"));
    }
    let sampler = CopySampler::new(h, n)?;
    if n < 64 && j0.support() >> n != 0 {
        return Err(Error::Mismatch("j0 has vertices outside K_n"));
    }
    let hits = par_count(0..samples, |i| sampler.trial(j0, seed, i));
    Ok(RateEstimate::from_counts(hits, samples))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentEstimate {
    pub mean: f64,
    /// Standard error of the mean, from the sample variance.
    pub std_error: f64,
    pub samples: u64,
}

/// Mean number of copies of `pattern` in `G(n, p)`.
pub fn first_moment(pattern: &Graph, n: usize, p: f64, samples: u64, seed: u64) -> Result<MomentEstimate> {
    if samples < 2 {
        return Err(Error::Domain("need at least two samples"));
    }
    sample_gnp(n, p, &mut SampleStream::new(seed, 0, 0))?;
    let aut = automorphism_count(pattern);
    let aut: u64 = aut
        .try_into()
        .map_err(|_| Error::Domain("automorphism count exceeds 64 bits"))?;
    let stream = stream_id(tag::MOMENT, 0);
    let (sum, sum_sq) = chunks(0..samples, SAMPLE_CHUNK)
        .into_par_iter()
        .map(|c| {
            c.map(|i| {
                let g = sample_gnp(n, p, &mut SampleStream::new(seed, stream, i)).expect("checked above");
                let z = (count_embeddings(pattern, &g) / aut) as u128;
                (z, z * z)
            })
            .fold((0u128, 0u128), |a, b| (a.0 + b.0, a.1 + b.1))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let m = samples as f64;
    let mean = sum as f64 / m;
    let var = (sum_sq as f64 - m * mean * mean) / (m - 1.0);
    Ok(MomentEstimate {
        mean,
        std_error: (var.max(0.0) / m).sqrt(),
        samples,
    })
}

/// Containment frequency at `p = c · max(1, ln e(H)) · 2 p̃_E`, the
/// edge probability at which the spread lemma predicts a copy with
/// probability at least 1/2 for a large enough constant `c`.
pub fn spread_lemma_probe(
    h: &Graph,
    n: usize,
    report: &ThresholdReport,
    c: f64,
    samples: u64,
    seed: u64,
) -> Result<(f64, RateEstimate)> {
    if c.is_nan() || c <= 0.0 || samples == 0 {
        return Err(Error::Domain("lemma probe needs c > 0 and at least one sample"));
    }
    let ln_e = (h.edge_count() as f64).ln().max(1.0);
    let p = (c * ln_e * 2.0 * report.p_modified).min(1.0);
    let trial = ContainmentTrial::new(Oracle::new(OracleKind::suggest(h, n), h, n)?, seed);
    let stream = stream_id(tag::SPREAD_LEMMA, 0);
    let hits = par_count(0..samples, |i| trial.run(p, stream, i));
    Ok((p, RateEstimate::from_counts(hits, samples)))
}

/// Family class scan; cycle censuses are split by largest path length.
pub fn family_class_scan(spec: &FamilySpec, n: usize) -> Result<ClassScan<ClassShape>> {
    if spec.kind != FamilyKind::Cycle {
        return family_scan(spec, n);
    }
    let len = spec.param;
    let ctx = TermContext::new(n);
    let parts: Vec<Result<ClassScan<ClassShape>>> = (1..len)
        .into_par_iter()
        .map(|largest| {
            let mut scan = ClassScan::default();
            for_each_cycle_class_with_largest(len, largest, &mut |c| {
                if let Some(t) = ctx.terms(&c) {
                    scan.push(t, || c.shape.clone());
                }
            })?;
            Ok(scan)
        })
        .collect();
    let mut scan = ClassScan::default();
    let full = full_cycle_class(len);
    if let Some(t) = ctx.terms(&full) {
        scan.push(t, || full.shape.clone());
    }
    parts.into_iter().try_fold(scan, |acc, s| Ok(acc.merge(s?)))
}

/// `p_E`, `p̃_E` and the spread certificate for a family member from its
/// analytic census.
pub fn family_report(spec: &FamilySpec, n: usize) -> Result<(ThresholdReport, SpreadCertificate)> {
    if n < spec.vertex_count() {
        return Err(Error::Infeasible {
            needed: spec.vertex_count(),
            n,
        });
    }
    let scan = family_class_scan(spec, n)?;
    let report = scan
        .clone()
        .into_report(family_pattern_label(spec), spec.edge_count(), n, shape_label)?;
    let cert = certificate_from_scan(n, scan, &report, shape_label)?;
    Ok((report, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use sgthresh_core::families::family_thresholds;
    use sgthresh_core::subgraph_census;

    fn pool(t: usize) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap()
    }

    #[test]
    fn parallel_census_matches_serial() {
        let q = Graph::from_edges(
            7,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 2),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 4),
                (1, 5),
            ],
        )
        .unwrap();
        let opts = CensusOptions::default();
        let serial = subgraph_census(&q, &opts).unwrap();
        for t in [1, 3] {
            assert_eq!(pool(t).install(|| census(&q, &opts)).unwrap(), serial);
        }
    }

    #[test]
    fn rates_match_serial() {
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let j0 = Graph::from_edges(6, &[(0, 1), (1, 2)]).unwrap();
        let serial = sgthresh_core::spread::empirical_containment_rate(&c5, 6, &j0, 3000, 9).unwrap();
        for t in [1, 4] {
            assert_eq!(
                pool(t)
                    .install(|| empirical_containment_rate(&c5, 6, &j0, 3000, 9))
                    .unwrap(),
                serial
            );
        }
    }

    #[test]
    fn estimates_are_thread_independent() {
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let cfg = BisectionConfig::default();
        let serial = sgthresh_core::mc::estimate_pc(&c6, 6, &cfg, OracleKind::HamiltonianCycle).unwrap();
        for t in [1, 2, 5] {
            let e = pool(t)
                .install(|| estimate_pc(&c6, 6, &cfg, OracleKind::HamiltonianCycle))
                .unwrap();
            assert_eq!(e, serial);
        }
    }

    #[test]
    fn first_moment_triangles() {
        let k3 = Graph::complete(3).unwrap();
        let m = first_moment(&k3, 6, 0.3, 20_000, 0).unwrap();
        assert!((m.mean - 0.54).abs() <= 3.0 * m.std_error, "{m:?}");
    }

    #[test]
    fn family_scan_matches_serial() {
        let spec = FamilySpec::new(FamilyKind::Cycle, 14).unwrap();
        let serial = family_thresholds(&spec, 20).unwrap();
        let (report, cert) = pool(3).install(|| family_report(&spec, 20)).unwrap();
        assert_eq!(report, serial);
        assert!(cert.pass);
    }
}
