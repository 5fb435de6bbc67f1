use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use matchinv::realizability::{feasible_set, synthesize_witness, TupleQuery};
use matchinv::verifier::{Check, VerificationReport, Verifier, DEFAULT_SEED, MAX_WITNESS_N};
use matchinv::{graph6, invariant_triple, regularity, FamilySpec, Graph};

#[derive(Parser)]
#[command(
    name = "matchinv",
    version,
    about = "Matching invariants of small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Graph6,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build a member of one of the families G1, G2, G3.
    Construct {
        #[arg(long)]
        family: String,
        /// Comma-separated parameters: a,b,c for G1 and G3, a,b,c,d,e for G2.
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compute (ind-match, min-match, match) for graph6 input.
    Invariants {
        /// Also compute the regularity (at most 10 vertices).
        #[arg(long)]
        reg: bool,
        /// A graph6 string; read one per line from stdin when absent.
        graph6: Option<String>,
    },
    /// Decide whether (p, q, r) is realizable on n vertices and build a witness.
    Witness {
        #[arg(short)]
        p: usize,
        #[arg(short)]
        q: usize,
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List every realizable triple for n vertices.
    Feasible {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        pretty: bool,
    },
    /// Run an exhaustive (or sampled) verification pass.
    Verify {
        #[arg(long, value_parser = parse_check)]
        check: Check,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// Check COUNT random connected graphs on exactly n-max vertices instead.
        #[arg(long, value_name = "COUNT")]
        sample: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest witness size for second-main.
        #[arg(long, default_value_t = MAX_WITNESS_N)]
        witness_n_max: usize,
        /// Write failing graphs to PATH, one graph6 string per line.
        #[arg(long, value_name = "PATH")]
        failures_out: Option<PathBuf>,
        /// Leave out the elapsed time, so reruns are byte-identical.
        #[arg(long)]
        no_timing: bool,
    },
    /// Regularity of the edge ideal, with the maximising vertex subset.
    Reg { graph6: Option<String> },
}

fn parse_check(s: &str) -> Result<Check, String> {
    s.parse()
}

/// Errors in the input rather than in a computed result.
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: impl Into<anyhow::Error>) -> anyhow::Error {
    UsageError(e.into()).into()
}

#[derive(Serialize)]
struct InvariantsOut {
    n: usize,
    ind: usize,
    min: usize,
    #[serde(rename = "match")]
    matching: usize,
    connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reg: Option<usize>,
}

#[derive(Serialize)]
struct ConstructOut {
    family: FamilySpec,
    params: Vec<usize>,
    n: usize,
    edges: usize,
    graph6: String,
    labels: Vec<String>,
    predicted: matchinv::InvariantTriple,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    let mut out = io::stdout().lock();
    match command {
        Command::Construct {
            family,
            params,
            format,
        } => {
            let spec = FamilySpec::from_params(&family, &params).map_err(usage)?;
            let g = spec.build().map_err(usage)?;
            match format {
                Format::Json => {
                    let (_, predicted) = spec.predict().map_err(usage)?;
                    let labels = g
                        .labels()
                        .unwrap_or_default()
                        .iter()
                        .map(|b| b.to_string())
                        .collect();
                    let body = ConstructOut {
                        family: spec,
                        params: spec.params(),
                        n: g.n(),
                        edges: g.edge_count(),
                        graph6: graph6::encode(&g),
                        labels,
                        predicted,
                    };
                    writeln!(out, "{}", serde_json::to_string(&body)?)?;
                }
                other => write_graph(&mut out, &g, other)?,
            }
        }
        Command::Invariants { reg, graph6 } => {
            for g in read_graphs(graph6)? {
                let t = invariant_triple(&g);
                let reg = if reg {
                    Some(regularity(&g).map_err(usage)?.reg)
                } else {
                    None
                };
                let body = InvariantsOut {
                    n: g.n(),
                    ind: t.ind_match,
                    min: t.min_match,
                    matching: t.match_number,
                    connected: g.is_connected(),
                    reg,
                };
                writeln!(out, "{}", serde_json::to_string(&body)?)?;
            }
        }
        Command::Witness { p, q, r, n, format } => {
            let report = synthesize_witness(&TupleQuery::new(p, q, r, n)).map_err(usage)?;
            match (&report.graph, format) {
                (Some(g), Format::Graph6 | Format::Dot) => write_graph(&mut out, g, format)?,
                _ => writeln!(out, "{}", serde_json::to_string(&report)?)?,
            }
            if !report.feasible {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Feasible { n, pretty } => {
            let set = feasible_set(n).map_err(usage)?;
            if pretty {
                writeln!(out, "n = {n}: {} realizable triples", set.len())?;
                writeln!(out, "{:>4} {:>4} {:>6}", "ind", "min", "match")?;
                for (p, q, r) in &set {
                    writeln!(out, "{p:>4} {q:>4} {r:>6}")?;
                }
            } else {
                let triples: Vec<[usize; 3]> = set.iter().map(|&(p, q, r)| [p, q, r]).collect();
                let body = serde_json::json!({ "n": n, "count": set.len(), "triples": triples });
                writeln!(out, "{body}")?;
            }
        }
        Command::Verify {
            check,
            n_max,
            jobs,
            sample,
            seed,
            witness_n_max,
            failures_out,
            no_timing,
        } => {
            let verifier = Verifier::new(jobs as usize).with_seed(seed);
            let report: VerificationReport = match (sample, check) {
                (Some(count), _) => verifier.sampled(check, n_max, count),
                (None, Check::FirstMain) => verifier.first_main_range(2, n_max),
                (None, Check::Av) => verifier.av_upto(n_max),
                (None, Check::Lemmas) => verifier.lemma_suite(n_max),
                (None, Check::SecondMain) => verifier.second_main(n_max, witness_n_max),
            }
            .map_err(usage)?;
            let text = if no_timing {
                report.deterministic_json()
            } else {
                report.to_json()
            };
            writeln!(out, "{text}")?;
            if let Some(path) = failures_out {
                std::fs::write(&path, report.failures_text())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Reg { graph6 } => {
            for g in read_graphs(graph6)? {
                let r = regularity(&g).map_err(usage)?;
                writeln!(out, "{}", serde_json::to_string(&r)?)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_graph(out: &mut impl Write, g: &Graph, format: Format) -> Result<()> {
    match format {
        Format::Graph6 => writeln!(out, "{}", graph6::encode(g))?,
        Format::Dot => writeln!(out, "{}", g.to_dot())?,
        Format::Json => bail!("json is handled by the caller"),
    }
    Ok(())
}

fn read_graphs(arg: Option<String>) -> Result<Vec<Graph>> {
    let lines: Vec<String> = match arg {
        Some(s) => vec![s],
        None => io::stdin().lock().lines().collect::<io::Result<_>>()?,
    };
    lines
        .iter()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .map(|l| graph6::decode(l).map_err(|e| usage(anyhow!("{l:?}: {e}"))))
        .collect()
}
