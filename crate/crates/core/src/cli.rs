//! Command-line front end. Parses arguments, loads the graph, calls into the
//! library and renders the result; no numerics live here.

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::entropy::{entropy_scan_with, walk_entropy_with_tol};
use crate::error::Error;
use crate::exec::Parallelism;
use crate::graph::{construct_hm, parse_edge_list, Graph};
use crate::report;
use crate::spectral::eigendecompose;
use crate::temperature::{find_crossings_with, verify_counterexample_with, CrossingOptions};
use crate::walks::{is_walk_regular, vertex_classes};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Human,
}

#[derive(Debug, Parser)]
#[command(name = "walk-entropy", version, about = "Walk entropy and walk-regularity of simple graphs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Edge-list file, or `-` for standard input.
    pub input: Option<String>,
    /// Use the generated graph H_m instead of an input file.
    #[arg(long, value_name = "M")]
    pub hm: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the edge list of H_m.
    GenHm { m: usize },
    /// Decide walk-regularity exactly.
    CheckWalkRegular {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Walk entropy at one temperature.
    Entropy {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_parser = non_negative)]
        beta: f64,
        #[arg(long, default_value_t = 1e-10, value_parser = positive)]
        tol: f64,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Walk entropy over a grid of temperatures (CSV by default).
    Scan {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, default_value_t = 0.0, value_parser = non_negative)]
        beta_min: f64,
        #[arg(long, default_value_t = 10.0, value_parser = non_negative)]
        beta_max: f64,
        #[arg(long, default_value_t = 0.01, value_parser = positive)]
        step: f64,
        #[arg(long, default_value_t = 1e-10, value_parser = positive)]
        tol: f64,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Locate every beta > 0 with maximal walk entropy.
    FindCrossings {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Full report: walk-regularity, degrees, crossings and the beta = 1 test.
    VerifyCounterexample {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 10.0, value_parser = positive)]
    pub beta_max: f64,
    #[arg(long, default_value_t = 0.01, value_parser = positive)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub tol: f64,
}

impl SearchArgs {
    fn options(&self) -> CrossingOptions {
        CrossingOptions {
            beta_max: self.beta_max,
            grid_step: self.step,
            tol: self.tol,
            parallelism: Parallelism::default(),
        }
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    parse_real(s).and_then(|x| if x >= 0.0 { Ok(x) } else { Err(format!("{x} must be >= 0")) })
}

fn positive(s: &str) -> Result<f64, String> {
    parse_real(s).and_then(|x| if x > 0.0 { Ok(x) } else { Err(format!("{x} must be > 0")) })
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_computational() {
            Failure::Compute(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, stdin, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            code
        }
    }
}

pub fn run(config: &RunConfig, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(config, stdin, err) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_COMPUTE
        }
    }
}

fn load_graph(input: &GraphInput, stdin: &mut dyn Read) -> Result<Graph, Failure> {
    match (&input.input, input.hm) {
        (Some(_), Some(_)) => Err(Failure::Usage("give either an input path or --hm, not both".into())),
        (None, None) => Err(Failure::Usage("missing input: give a path, `-` or --hm <m>".into())),
        (None, Some(m)) => Ok(construct_hm(m)?),
        (Some(path), None) => {
            let mut text = String::new();
            if path == "-" {
                stdin
                    .read_to_string(&mut text)
                    .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            } else {
                text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
            }
            parse_edge_list(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
        }
    }
}

fn unsupported(format: OutputFormat, command: &str) -> Failure {
    Failure::Usage(format!("--format {format:?} is not available for {command}").to_lowercase())
}

fn dispatch(config: &RunConfig, stdin: &mut dyn Read, err: &mut dyn Write) -> Result<String, Failure> {
    match &config.command {
        Command::GenHm { m } => Ok(construct_hm(*m)?.to_edge_list()),
        Command::CheckWalkRegular { graph, format } => {
            let g = load_graph(graph, stdin)?;
            let verdict = is_walk_regular(&g);
            match format.unwrap_or(OutputFormat::Human) {
                OutputFormat::Human => Ok(report::verdict_human(&verdict, g.vertex_count())),
                OutputFormat::Json => Ok(report::to_json(&verdict)),
                f => Err(unsupported(f, "check-walk-regular")),
            }
        }
        Command::Entropy {
            graph,
            beta,
            tol,
            format,
        } => {
            let g = load_graph(graph, stdin)?;
            let r = walk_entropy_with_tol(&eigendecompose(&g)?, *beta, *tol)?;
            Ok(match format.unwrap_or(OutputFormat::Human) {
                OutputFormat::Human => report::entropy_human(&r),
                OutputFormat::Json => report::to_json(&r),
                OutputFormat::Csv => report::scan_csv(std::slice::from_ref(&r), &vertex_classes(&g)),
            })
        }
        Command::Scan {
            graph,
            beta_min,
            beta_max,
            step,
            tol,
            format,
        } => {
            let g = load_graph(graph, stdin)?;
            let d = eigendecompose(&g)?;
            let reports = entropy_scan_with(&d, *beta_min, *beta_max, *step, *tol, Parallelism::default())?;
            Ok(match format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => report::scan_csv(&reports, &vertex_classes(&g)),
                OutputFormat::Json => report::to_json(&reports),
                OutputFormat::Human => report::scan_human(&reports),
            })
        }
        Command::FindCrossings { graph, search, format } => {
            let g = load_graph(graph, stdin)?;
            let crossings = find_crossings_with(&g, &search.options())?;
            if let crate::temperature::Crossings::Finite(scan) = &crossings {
                for w in &scan.warnings {
                    let _ = writeln!(err, "warning: {w}");
                }
            }
            let classes = vertex_classes(&g);
            Ok(match format.unwrap_or(OutputFormat::Human) {
                OutputFormat::Human => report::crossings_human(&crossings),
                OutputFormat::Json => report::to_json(&report::CrossingsDocument::new(&crossings, &classes)),
                OutputFormat::Csv => {
                    let doc = report::CrossingsDocument::new(&crossings, &classes);
                    report::crossings_csv(doc.crossings, &classes)
                }
            })
        }
        Command::VerifyCounterexample { graph, search, format } => {
            let g = load_graph(graph, stdin)?;
            let r = verify_counterexample_with(&g, &search.options())?;
            for w in &r.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            match format.unwrap_or(OutputFormat::Human) {
                OutputFormat::Human => Ok(report::counterexample_human(&r)),
                OutputFormat::Json => Ok(report::to_json(&r)),
                f => Err(unsupported(f, "verify-counterexample")),
            }
        }
    }
}
