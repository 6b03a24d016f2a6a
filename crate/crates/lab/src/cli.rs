//! Command-line front end. `run` parses arguments, executes one command
//! and maps failures to exit codes: 0 ok, 1 input, 2 capacity, 3
//! acceptance. Every failure prints `error_code=<code>` on its own line
//! before any human-readable text.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use sgthresh_core::census::DEFAULT_EDGE_CAP;
use sgthresh_core::families::FamilyKind;
use sgthresh_core::mc::{exact_pc, BisectionConfig, OracleKind};
use sgthresh_core::spread::{containment_ratio, verify_spread_certificate};
use sgthresh_core::{compute_thresholds, CensusOptions, Graph};

use crate::export::{census_json, to_json, CertificateJson, EmpiricalJson, EstimateJson, LemmaJson, ReportJson};
use crate::formats::parse_graph;
use crate::suite::{self, SuiteConfig};
use crate::{par, scaling, LabError, LabResult};

/// Default thread count when `--threads` is absent.
pub const THREADS_ENV: &str = "SGTHRESH_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "sgthresh",
    version,
    about = "Subgraph expectation thresholds and critical probabilities in G(n, p)"
)]
pub struct Cli {
    /// Worker threads; changes speed only, never output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Isomorphism classes of the nonempty edge subsets of a pattern.
    Census {
        #[arg(long)]
        graph: PathBuf,
        /// Connected subsets only; thresholds from this are lower bounds.
        #[arg(long)]
        connected_only: bool,
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        edge_cap: usize,
    },
    /// p_E and the modified threshold for a pattern in K_n.
    Thresholds {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Spread certificate for the uniform measure on copies.
    Spread {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        n: usize,
        /// Also sample containment rates for the binding classes.
        #[arg(long)]
        empirical: bool,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Containment frequency at p = c max(1, ln e) 2 p~_E.
        #[arg(long)]
        lemma_c: Option<f64>,
    },
    /// Critical probability by exact polynomial or Monte Carlo bisection.
    EstimatePc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        exact: bool,
        /// Samples per probe.
        #[arg(long, default_value_t = 2000)]
        samples: u64,
        #[arg(long, default_value_t = 32_000)]
        sample_cap: u64,
        /// generic, hamiltonian_cycle, perfect_matching or clique.
        #[arg(long)]
        oracle: Option<String>,
        /// Defaults to 5e-3 for Monte Carlo and 1e-12 for --exact.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Scaling table for a structured family.
    Family {
        /// cycle, matching, clique, path or star.
        #[arg(long)]
        kind: String,
        /// Omit for spanning cycles (n) and matchings (n/2).
        #[arg(long)]
        param: Option<usize>,
        /// Comma-separated ambient orders.
        #[arg(long)]
        n_list: String,
        #[arg(long)]
        with_pc: bool,
        #[arg(long, default_value_t = 2000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Acceptance criteria, one pass/fail line each.
    Verify {
        /// all, fast, or comma-separated criterion ids.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the Hamiltonian band golden file instead of verifying.
        #[arg(long)]
        calibrate: bool,
    },
}

fn read_graph(path: &Path) -> LabResult<Graph> {
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_graph(&text).map_err(|mut e| {
        e.reason = format!("{}: {}", path.display(), e.reason);
        e.into()
    })
}

fn require_json(format: Format, what: &str) -> LabResult<()> {
    if format == Format::Csv {
        return Err(LabError::Usage(format!(
            "{what} has no CSV form; CSV is for family tables"
        )));
    }
    Ok(())
}

fn parse_n_list(s: &str) -> LabResult<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| LabError::Usage(format!("--n-list entry {t:?} is not an integer")))
        })
        .collect()
}

/// Result text plus whether it is a failed verification.
struct Rendered {
    text: String,
    failed: Option<String>,
}

impl From<String> for Rendered {
    fn from(text: String) -> Self {
        Rendered { text, failed: None }
    }
}

fn execute(cli: &Cli) -> LabResult<Rendered> {
    let format = cli.format;
    match &cli.command {
        Command::Census {
            graph,
            connected_only,
            edge_cap,
        } => {
            require_json(format, "census")?;
            let g = read_graph(graph)?;
            let opts = CensusOptions {
                connected_only: *connected_only,
                edge_cap: *edge_cap,
            };
            let classes = par::census(&g, &opts)?;
            Ok(match format {
                Format::Text => {
                    let mut s = String::new();
                    for c in &classes {
                        s.push_str(&format!(
                            "{} e={} v={} multiplicity={} aut={}\n",
                            c.canonical.hex(),
                            c.edge_count,
                            c.vertex_count,
                            c.multiplicity,
                            c.aut_count
                        ));
                    }
                    s
                }
                _ => to_json(&census_json(&classes)),
            }
            .into())
        }
        Command::Thresholds { graph, n } => {
            require_json(format, "thresholds")?;
            let g = read_graph(graph)?;
            let census = par::census(&g, &CensusOptions::default())?;
            let r = compute_thresholds(&g, *n, &census)?;
            Ok(match format {
                Format::Text => format!(
                    "n = {}\np_E = {:.16e}\np_tilde_E = {:.16e}\nwitnesses = {}\n",
                    r.n,
                    r.p_expectation,
                    r.p_modified,
                    r.witnesses_modified
                        .iter()
                        .map(|w| w.label.as_str())
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
                _ => to_json(&ReportJson::from(&r)),
            }
            .into())
        }
        Command::Spread {
            graph,
            n,
            empirical,
            samples,
            seed,
            lemma_c,
        } => {
            require_json(format, "spread")?;
            let g = read_graph(graph)?;
            let census = par::census(&g, &CensusOptions::default())?;
            let r = compute_thresholds(&g, *n, &census)?;
            let cert = verify_spread_certificate(&g, *n, &census, &r)?;
            let mut json = CertificateJson::from(&cert);
            if *empirical {
                let mut rows = Vec::new();
                for m in &cert.worst_classes {
                    let class = census
                        .iter()
                        .find(|c| c.canonical.hex() == m.label)
                        .expect("witness labels come from the census");
                    let exact = containment_ratio(&g, *n, &class.representative)?;
                    let est = par::empirical_containment_rate(&g, *n, &class.representative, *samples, *seed)?;
                    rows.push(EmpiricalJson {
                        canonical_key: m.label.clone(),
                        exact_ratio: exact,
                        rate: est.rate,
                        std_error: est.std_error,
                        samples: est.samples,
                        within_3se: est.within(exact, 3.0),
                    });
                }
                json.empirical = Some(rows);
            }
            if let Some(c) = lemma_c {
                let (p, est) = par::spread_lemma_probe(&g, *n, &r, *c, *samples, *seed)?;
                json.lemma = Some(LemmaJson {
                    c: *c,
                    p,
                    successes: est.successes,
                    samples: est.samples,
                    rate: est.rate,
                });
            }
            Ok(match format {
                Format::Text => format!(
                    "r_claimed = {:.16e}\nr_star = {:.16e}\npass = {}\n",
                    cert.r_claimed, cert.r_star, cert.pass
                ),
                _ => to_json(&json),
            }
            .into())
        }
        Command::EstimatePc {
            graph,
            n,
            exact,
            samples,
            sample_cap,
            oracle,
            tol,
            seed,
        } => {
            require_json(format, "estimate-pc")?;
            let g = read_graph(graph)?;
            let est = if *exact {
                exact_pc(&g, *n, tol.unwrap_or(1e-12))?
            } else {
                let oracle = match oracle {
                    Some(s) => s.parse::<OracleKind>()?,
                    None => OracleKind::suggest(&g, *n),
                };
                let cfg = BisectionConfig {
                    samples_per_probe: *samples,
                    sample_cap: *sample_cap,
                    tol: tol.unwrap_or(BisectionConfig::default().tol),
                    seed: *seed,
                };
                par::estimate_pc(&g, *n, &cfg, oracle)?
            };
            Ok(match format {
                Format::Text => format!(
                    "method = {}\np_hat = {:.16e}\nci = [{:.16e}, {:.16e}]\n",
                    est.method.name(),
                    est.p_hat,
                    est.ci_low,
                    est.ci_high
                ),
                _ => to_json(&EstimateJson::from(&est)),
            }
            .into())
        }
        Command::Family {
            kind,
            param,
            n_list,
            with_pc,
            samples,
            seed,
        } => {
            let kind: FamilyKind = kind.parse()?;
            let ns = parse_n_list(n_list)?;
            let cfg = BisectionConfig {
                samples_per_probe: *samples,
                sample_cap: BisectionConfig::default().sample_cap.max(16 * samples),
                seed: *seed,
                ..BisectionConfig::default()
            };
            let rows = scaling::scaling_table(kind, *param, &ns, with_pc.then_some(&cfg));
            Ok(match format {
                Format::Csv | Format::Text => scaling::to_csv(&rows),
                Format::Json => to_json(&rows),
            }
            .into())
        }
        Command::Verify { suite, seed, calibrate } => {
            if *calibrate {
                return Ok(suite::hamiltonian_golden()?.into());
            }
            let ids = suite::parse_suite(suite).map_err(LabError::Usage)?;
            let cfg = SuiteConfig {
                seed: *seed,
                ..SuiteConfig::default()
            };
            let outcomes = suite::run_suite(&ids, &cfg, |_| {});
            let text: String = outcomes.iter().map(|o| o.line() + "\n").collect();
            let failed: Vec<String> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id.to_string()).collect();
            Ok(Rendered {
                text,
                failed: (!failed.is_empty()).then(|| format!("criteria {} failed", failed.join(", "))),
            })
        }
    }
}

fn threads(cli: &Cli) -> LabResult<Option<usize>> {
    if let Some(t) = cli.threads {
        return Ok(Some(t));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| LabError::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn execute_in_pool(cli: &Cli) -> LabResult<Rendered> {
    match threads(cli)? {
        Some(0) => Err(LabError::Usage("thread count must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| LabError::Usage(e.to_string()))?
            .install(|| execute(cli)),
        None => execute(cli),
    }
}

fn report_error(err: &mut dyn Write, e: &LabError) -> i32 {
    let _ = writeln!(err, "error_code={}", e.code());
    let _ = writeln!(err, "error: {e}");
    e.exit_code()
}

/// Runs one command with explicit output sinks.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "error_code=input");
            let _ = write!(err, "{}", e.render());
            return 1;
        }
    };
    let rendered = match execute_in_pool(&cli) {
        Ok(r) => r,
        Err(e) => return report_error(err, &e),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &rendered.text).map_err(|source| LabError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => out.write_all(rendered.text.as_bytes()).map_err(|source| LabError::Io {
            path: "<stdout>".into(),
            source,
        }),
    };
    if let Err(e) = written {
        return report_error(err, &e);
    }
    match rendered.failed {
        Some(msg) => report_error(err, &LabError::Acceptance(msg)),
        None => 0,
    }
}

/// Runs one command against the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
