//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit status.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::graph::{graph_from_json, graph_to_dot, graph_to_json, permutation_graph};
use crate::perm::{enumerate_321_avoiders, Permutation};
use crate::universal_graph::{
    embed_with, optimality_report, universal_split_graph, verify_universal_graph, DEFAULT_SAMPLE,
    DEFAULT_SEED,
};
use crate::universal_perm::{rho, shortest_universal_prefix, u, verify_universal_permutation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const MAX_RHO_N: usize = 200;
const MAX_U_N: usize = 40;
const MAX_GRAPH_N: usize = 8;
const MAX_VERIFY_PERM_N: usize = 8;
const MAX_VERIFY_GRAPH_N: usize = 5;
const MAX_ENUMERATE_N: usize = 14;
const MAX_REPORT_N: usize = 64;

#[derive(Parser, Debug)]
#[command(
    name = "uniperm",
    version,
    about = "Universal 321-avoiding permutations and split permutation graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Parenthesised compact notation for permutations.
    #[arg(long)]
    paren: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The universal 321-avoiding permutation of length n².
    Rho(Common),
    /// The labelled universal permutation of length 2n³.
    UniversalPerm(Common),
    /// The universal split permutation graph on 4n³ vertices.
    UniversalGraph(Common),
    /// Check universality of the permutations for n.
    VerifyPerm(Common),
    /// Embed every split permutation graph class on n vertices.
    VerifyGraph {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of classes to sample; defaults to all for n ≤ 4.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Embed a graph read as JSON into the universal graph.
    Embed {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
    },
    /// All 321-avoiding permutations of length n.
    #[command(name = "enumerate-321")]
    Enumerate321(Common),
    /// Shortest prefix of the universal permutation that is still universal.
    ShortestPrefix(Common),
    /// Order-optimality ratio of the universal graph.
    Report(Common),
}

enum Failure {
    Usage(String),
    Falsified(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Falsification(_) => Failure::Falsified(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    verified: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            verified: true,
        }
    }
}

/// Runs the command line `argv` (program name first), writing results to
/// `out`. Returns 0 on success, 1 on a falsified claim, 2 on a usage error.
pub fn run<I, S>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{}", e.render());
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let common = match &cli.command {
        Command::Rho(c)
        | Command::UniversalPerm(c)
        | Command::UniversalGraph(c)
        | Command::VerifyPerm(c)
        | Command::Enumerate321(c)
        | Command::ShortestPrefix(c)
        | Command::Report(c) => c,
        Command::VerifyGraph { common, .. } | Command::Embed { common, .. } => common,
    };
    match execute(&cli.command) {
        Ok(result) => {
            let text = if result.text.ends_with('\n') {
                result.text
            } else {
                result.text + "\n"
            };
            let written = match &common.output {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            if result.verified {
                EXIT_OK
            } else {
                EXIT_FALSIFIED
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!(
                "error: {msg}\n\nUsage: uniperm <COMMAND> --n <N> [OPTIONS]; see `uniperm --help`"
            );
            EXIT_USAGE
        }
        Err(Failure::Falsified(msg)) => {
            let _ = writeln!(out, "{}", json!({ "falsification": msg }));
            EXIT_FALSIFIED
        }
    }
}

fn check_n(n: usize, max: usize) -> Result<(), Failure> {
    if n == 0 || n > max {
        return Err(Failure::Usage(format!(
            "--n must be between 1 and {max}, got {n}"
        )));
    }
    Ok(())
}

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(format!(
            "format {f:?} is not available for this command"
        )))
    }
}

fn perm_text(p: &Permutation, paren: bool) -> String {
    if paren {
        p.to_compact_string()
    } else {
        p.to_string()
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn execute(command: &Command) -> Result<Output, Failure> {
    use Format::*;
    match command {
        Command::Rho(c) => {
            check_n(c.n, MAX_RHO_N)?;
            let r = rho(c.n)?;
            Ok(Output::ok(
                match pick(c.format, Text, &[Text, Json, Dot])? {
                    Text => perm_text(&r.perm, c.paren),
                    Json => pretty(&r),
                    Dot => graph_to_dot(&permutation_graph(&r.perm), None),
                },
            ))
        }
        Command::UniversalPerm(c) => {
            check_n(c.n, MAX_U_N)?;
            let lp = u(c.n)?;
            Ok(Output::ok(match pick(c.format, Text, &[Text, Json])? {
                Text if c.paren => format!(
                    "{}\n{}",
                    lp.perm().to_compact_string(),
                    lp.position_labels()
                        .iter()
                        .map(|l| l.to_string())
                        .collect::<String>()
                ),
                Text => lp.to_text(),
                _ => pretty(&json!({
                    "n": c.n,
                    "values": lp.perm().values(),
                    "labels": lp.position_labels(),
                })),
            }))
        }
        Command::UniversalGraph(c) => {
            check_n(c.n, MAX_GRAPH_N)?;
            let bundle = universal_split_graph(c.n)?;
            let lg = bundle.graph();
            let partition = lg.partition_json();
            Ok(Output::ok(
                match pick(c.format, Json, &[Json, Dot, Text])? {
                    Json => serde_json::to_string(&graph_to_json(&lg.graph, Some(&partition)))
                        .expect("json"),
                    Dot => graph_to_dot(&lg.graph, Some(&partition)),
                    _ => format!(
                        "vertices {}\nedges {}\nC1 {}\nC2 {}\nI1 {}\nI2 {}",
                        lg.graph.order(),
                        lg.graph.edge_count(),
                        partition.c1.len(),
                        partition.c2.len(),
                        partition.i1.len(),
                        partition.i2.len()
                    ),
                },
            ))
        }
        Command::VerifyPerm(c) => {
            check_n(c.n, MAX_VERIFY_PERM_N)?;
            pick(c.format, Json, &[Json])?;
            let report = verify_universal_permutation(c.n)?;
            Ok(Output {
                verified: report.passed(),
                text: pretty(&report),
            })
        }
        Command::VerifyGraph {
            common: c,
            seed,
            sample,
        } => {
            check_n(c.n, MAX_VERIFY_GRAPH_N)?;
            pick(c.format, Json, &[Json])?;
            let sample = sample.or((c.n >= 5).then_some(DEFAULT_SAMPLE));
            let report = verify_universal_graph(c.n, sample, seed.unwrap_or(DEFAULT_SEED))?;
            Ok(Output {
                verified: report.all_embedded,
                text: pretty(&report),
            })
        }
        Command::Embed { common: c, input } => {
            check_n(c.n, MAX_GRAPH_N)?;
            pick(c.format, Json, &[Json])?;
            let text = std::fs::read_to_string(input).map_err(Error::from)?;
            let (g, _) = graph_from_json(&text)?;
            let bundle = universal_split_graph(c.n)?;
            let map = embed_with(&bundle, &g)?;
            Ok(Output::ok(pretty(&json!({
                "n": c.n,
                "host_order": bundle.graph().graph.order(),
                "map": map,
            }))))
        }
        Command::Enumerate321(c) => {
            check_n(c.n, MAX_ENUMERATE_N)?;
            let all = enumerate_321_avoiders(c.n);
            Ok(Output::ok(match pick(c.format, Text, &[Text, Json])? {
                Text => all
                    .iter()
                    .map(|p| perm_text(p, c.paren))
                    .collect::<Vec<_>>()
                    .join("\n"),
                _ => serde_json::to_string(&all).expect("json"),
            }))
        }
        Command::ShortestPrefix(c) => {
            let prefix = shortest_universal_prefix(c.n)?;
            Ok(Output::ok(match pick(c.format, Text, &[Text, Json])? {
                Text if c.paren => prefix.raw_compact(),
                Text => prefix.raw_string(),
                _ => pretty(&json!({
                    "n": c.n,
                    "length": prefix.len(),
                    "raw": prefix.raw,
                    "standardized": prefix.perm,
                })),
            }))
        }
        Command::Report(c) => {
            if c.n < 2 || c.n > MAX_REPORT_N {
                return Err(Failure::Usage(format!(
                    "--n must be between 2 and {MAX_REPORT_N}"
                )));
            }
            let r = optimality_report(c.n)?;
            Ok(Output::ok(match pick(c.format, Json, &[Json, Text])? {
                Json => pretty(&r),
                _ => format!(
                    "n {}\nvertices {}\nlog2 classes {:.6}\nratio {:.6}",
                    r.n, r.universal_size, r.class_count_bound, r.ratio
                ),
            }))
        }
    }
}
