//! Monte Carlo bisection for `p_c(H) = inf { p : P_p(Z_H >= 1) >= 1/2 }`.
//!
//! Each probe estimates the containment probability at the bracket
//! midpoint from fresh samples. The bracket moves only when the Wilson 95%
//! interval excludes 1/2; otherwise the probe's sample count doubles, up to
//! a cap, after which the split follows the point estimate and the result
//! is flagged low-confidence.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::canon::canonical_form;
use crate::graph::Graph;
use crate::mc::oracle::{Oracle, OracleKind};
use crate::mc::sample_gnp;
use crate::rng::{stream_id, tag, SampleStream};
use crate::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    MonteCarlo,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Probe {
    pub p: f64,
    pub successes: u64,
    pub samples: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PcEstimate {
    pub n: usize,
    pub pattern: String,
    pub method: Method,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub samples_per_probe: u64,
    /// Bisection trace in probe order.
    pub probes: Vec<Probe>,
    pub seed: u64,
    /// Some probe hit the sample cap with its interval straddling 1/2.
    pub low_confidence: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BisectionConfig {
    pub samples_per_probe: u64,
    pub sample_cap: u64,
    pub tol: f64,
    pub seed: u64,
}

impl Default for BisectionConfig {
    fn default() -> Self {
        BisectionConfig {
            samples_per_probe: 2000,
            sample_cap: 32000,
            tol: 5e-3,
            seed: 0,
        }
    }
}

impl BisectionConfig {
    fn validate(&self) -> Result<()> {
        if self.samples_per_probe < 100 {
            return Err(Error::Domain("samples per probe must be at least 100"));
        }
        if self.tol.is_nan() || self.tol < 1e-4 {
            return Err(Error::Domain("tolerance must be at least 1e-4"));
        }
        if self.sample_cap < self.samples_per_probe {
            return Err(Error::Domain("sample cap below samples per probe"));
        }
        Ok(())
    }
}

/// Wilson score interval for `successes / samples` at normal quantile `z`.
pub fn wilson_interval(successes: u64, samples: u64, z: f64) -> (f64, f64) {
    if samples == 0 {
        return (0.0, 1.0);
    }
    let n = samples as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * libm::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    // the bounds are exact at the extremes; skip the rounding residue
    let low = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let high = if successes == samples {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (low, high)
}

/// Counts containment successes for the samples in `indices` of stream
/// `stream` at edge probability `p`.
pub trait ProbeSampler {
    fn successes(&self, p: f64, stream: u64, indices: Range<u64>) -> u64;
}

/// One `G(n, p)` draw followed by an oracle call, addressed by
/// `(seed, stream, index)`.
#[derive(Clone, Debug)]
pub struct ContainmentTrial {
    oracle: Oracle,
    seed: u64,
}

impl ContainmentTrial {
    pub fn new(oracle: Oracle, seed: u64) -> Self {
        ContainmentTrial { oracle, seed }
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    #[inline]
    pub fn run(&self, p: f64, stream: u64, index: u64) -> bool {
        let mut s = SampleStream::new(self.seed, stream, index);
        let g = sample_gnp(self.oracle.n(), p, &mut s).expect("order and p validated");
        self.oracle.contains(&g)
    }
}

pub struct SerialSampler(pub ContainmentTrial);

impl ProbeSampler for SerialSampler {
    fn successes(&self, p: f64, stream: u64, indices: Range<u64>) -> u64 {
        indices.filter(|&i| self.0.run(p, stream, i)).count() as u64
    }
}

struct Bracket {
    lo: f64,
    hi: f64,
    ci_low: f64,
    ci_high: f64,
    probes: Vec<Probe>,
    low_confidence: bool,
}

fn bisect<S: ProbeSampler>(sampler: &S, cfg: &BisectionConfig) -> Bracket {
    let mut b = Bracket {
        lo: 0.0,
        hi: 1.0,
        ci_low: 0.0,
        ci_high: 1.0,
        probes: Vec::new(),
        low_confidence: false,
    };
    let mut counter = 0u32;
    while b.hi - b.lo > cfg.tol {
        let p = 0.5 * (b.lo + b.hi);
        let stream = stream_id(tag::BISECTION, counter);
        counter += 1;
        let mut samples = cfg.samples_per_probe;
        let mut successes = sampler.successes(p, stream, 0..samples);
        loop {
            let (low, high) = wilson_interval(successes, samples, Z95);
            if high < 0.5 {
                b.lo = p;
                b.ci_low = b.ci_low.max(p);
                break;
            }
            if low > 0.5 {
                b.hi = p;
                b.ci_high = b.ci_high.min(p);
                break;
            }
            if samples >= cfg.sample_cap {
                b.low_confidence = true;
                if 2 * successes >= samples {
                    b.hi = p;
                } else {
                    b.lo = p;
                }
                break;
            }
            let more = samples.min(cfg.sample_cap - samples);
            successes += sampler.successes(p, stream, samples..samples + more);
            samples += more;
        }
        b.probes.push(Probe { p, successes, samples });
    }
    b
}

/// Monte Carlo estimate of `p_c(pattern)` in `G(n, p)` with any sampler.
pub fn estimate_pc_with<S: ProbeSampler>(
    sampler: &S,
    pattern: &Graph,
    n: usize,
    cfg: &BisectionConfig,
) -> Result<PcEstimate> {
    cfg.validate()?;
    if pattern.vertex_count() > n {
        return Err(Error::Infeasible {
            needed: pattern.vertex_count(),
            n,
        });
    }
    let b = bisect(sampler, cfg);
    Ok(PcEstimate {
        n,
        pattern: canonical_form(pattern).hex(),
        method: Method::MonteCarlo,
        p_hat: 0.5 * (b.lo + b.hi),
        ci_low: b.ci_low,
        ci_high: b.ci_high,
        samples_per_probe: cfg.samples_per_probe,
        probes: b.probes,
        seed: cfg.seed,
        low_confidence: b.low_confidence,
    })
}

/// Single-threaded Monte Carlo estimate of `p_c(pattern)` in `G(n, p)`.
pub fn estimate_pc(pattern: &Graph, n: usize, cfg: &BisectionConfig, oracle: OracleKind) -> Result<PcEstimate> {
    cfg.validate()?;
    if pattern.vertex_count() > n {
        return Err(Error::Infeasible {
            needed: pattern.vertex_count(),
            n,
        });
    }
    let trial = ContainmentTrial::new(Oracle::new(oracle, pattern, n)?, cfg.seed);
    estimate_pc_with(&SerialSampler(trial), pattern, n, cfg)
}
