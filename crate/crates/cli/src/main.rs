// SPDX-License-Identifier: Apache-2.0

//! `amalgadim`: generate graph families, build amalgamations, compute
//! metric dimensions and run the verification suites.
//!
//! Exit codes: 0 success, 1 a verification row failed, 2 disconnected
//! input, 3 search budget exhausted, 4 bad input or I/O error.

mod graph6;
mod instance;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use amalgadim::harness::{CorpusConfig, Harness, HarnessError, Status, Suite, TheoremReport};
use amalgadim::resolver::{exact_metric_dimension, greedy_resolving_set, DEFAULT_BUDGET};
use amalgadim::{edge_amal, vertex_amal, AmalgamError, Family, Hub, ResolverError, SearchOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::instance::{InstanceError, InstanceFile};

#[derive(Parser, Debug)]
#[command(name = "amalgadim", version, about = "Metric dimension of graphs and their amalgamations")]
struct Cli {
    /// Worker threads for the exact search and the harness
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Maximum number of candidate subsets per exact search
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a family instance with its default terminals
    Gen {
        /// path | cycle | complete | complete_bipartite | prism | dhc
        family: String,
        params: Vec<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write a graph6 line instead of JSON
        #[arg(long)]
        g6: bool,
    },
    /// Vertex- or edge-amalgamate instance files at their terminals
    Amalgamate {
        kind: Kind,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Override a terminal vertex: BLOCK:VERTEX
        #[arg(long = "terminal-vertex", value_parser = parse_block_vertex)]
        terminal_vertex: Vec<(usize, usize)>,
        /// Override a terminal edge: BLOCK:A,B
        #[arg(long = "terminal-edge", value_parser = parse_block_edge)]
        terminal_edge: Vec<(usize, (usize, usize))>,
        /// Reverse the terminal edge orientation of a block
        #[arg(long)]
        flip: Vec<usize>,
        /// Inputs are graph6 lines
        #[arg(long)]
        g6: bool,
    },
    /// Compute the metric dimension of an instance
    Dim {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = DimFormat::Text)]
        format: DimFormat,
        /// Input is a graph6 line
        #[arg(long)]
        g6: bool,
    },
    /// Run a verification suite and print one row per check
    Verify {
        /// t1 | t2 | t3 | t4 | t5 | t6 | ladders | families | all
        suite: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Tsv)]
        format: ReportFormat,
        /// Seed of the mixed block collections
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest block count for cycle and complete-graph collections
        #[arg(long)]
        n_max: Option<usize>,
        /// Largest cycle length in cycle collections
        #[arg(long)]
        lengths_max: Option<usize>,
        /// Largest complete-graph order in complete collections
        #[arg(long)]
        orders_max: Option<usize>,
        /// Largest prism base length
        #[arg(long)]
        prism_max: Option<usize>,
        /// Number of seeded mixed collections
        #[arg(long)]
        mixed_count: Option<usize>,
        /// Block count of the sharpness ladders (default: 2 and 3)
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Vertex,
    Edge,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DimFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Tsv,
    Json,
}

fn parse_block_vertex(s: &str) -> Result<(usize, usize), String> {
    let (b, v) = s.split_once(':').ok_or("expected BLOCK:VERTEX")?;
    Ok((
        b.parse().map_err(|e| format!("{e}"))?,
        v.parse().map_err(|e| format!("{e}"))?,
    ))
}

fn parse_block_edge(s: &str) -> Result<(usize, (usize, usize)), String> {
    let (b, e) = s.split_once(':').ok_or("expected BLOCK:A,B")?;
    let (a, c) = e.split_once(',').ok_or("expected BLOCK:A,B")?;
    Ok((
        b.parse().map_err(|e| format!("{e}"))?,
        (
            a.parse().map_err(|e| format!("{e}"))?,
            c.parse().map_err(|e| format!("{e}"))?,
        ),
    ))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Family(#[from] amalgadim::FamilyError),
    #[error(transparent)]
    Amalgam(#[from] AmalgamError),
    #[error(transparent)]
    Resolver(#[from] ResolverError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Graph6(#[from] graph6::Graph6Error),
    #[error("block {0} ({1}) has no terminal {2}")]
    MissingTerminal(usize, String, &'static str),
    #[error("block index {0} out of range")]
    BadBlock(usize),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Resolver(ResolverError::Disconnected)
            | CliError::Harness(HarnessError::Resolver(ResolverError::Disconnected)) => 2,
            CliError::Resolver(ResolverError::TooLarge { .. }) => 3,
            CliError::Harness(e) if e.is_budget_exhausted() => 3,
            _ => 4,
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_gen(family: &str, params: &[usize], out: Option<&Path>, g6: bool) -> Result<(), CliError> {
    let family: Family = family.parse()?;
    let inst = family.generate(params)?;
    let text = if g6 {
        graph6::encode(&inst.graph)? + "\n"
    } else {
        InstanceFile::from_family(&inst).to_json() + "\n"
    };
    write_output(out, &text)
}

struct AmalgamateArgs<'a> {
    kind: Kind,
    inputs: &'a [PathBuf],
    terminal_vertex: &'a [(usize, usize)],
    terminal_edge: &'a [(usize, (usize, usize))],
    flip: &'a [usize],
    g6: bool,
}

fn build_amalgam(args: &AmalgamateArgs) -> Result<InstanceFile, CliError> {
    let mut files = args
        .inputs
        .iter()
        .map(|p| instance::load(p, args.g6))
        .collect::<Result<Vec<_>, _>>()?;
    let n = files.len();
    let block = |i: usize| if i < n { Ok(i) } else { Err(CliError::BadBlock(i)) };
    for &(i, v) in args.terminal_vertex {
        files[block(i)?].terminal_vertex = Some(v);
    }
    for &(i, (a, b)) in args.terminal_edge {
        files[block(i)?].terminal_edge = Some([a, b]);
    }
    for &i in args.flip {
        if let Some(e) = files[block(i)?].terminal_edge.as_mut() {
            e.reverse();
        }
    }
    let graphs = files
        .iter()
        .map(InstanceFile::to_graph)
        .collect::<Result<Vec<_>, _>>()?;
    let name = |i: usize| args.inputs[i].display().to_string();
    let result = match args.kind {
        Kind::Vertex => {
            let blocks = files
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    f.terminal_vertex
                        .map(|t| (&graphs[i], t))
                        .ok_or_else(|| CliError::MissingTerminal(i, name(i), "vertex"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            vertex_amal(&blocks)?
        }
        Kind::Edge => {
            let blocks = files
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    f.terminal_edge
                        .map(|[a, b]| (&graphs[i], (a, b)))
                        .ok_or_else(|| CliError::MissingTerminal(i, name(i), "edge"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            edge_amal(&blocks)?
        }
    };
    let (tv, te) = match result.hub {
        Hub::Vertex(h) => (Some(h), None),
        Hub::Edge(a, b) => (None, Some((a, b))),
    };
    Ok(InstanceFile::from_graph(&result.graph, tv, te))
}

#[derive(Serialize)]
struct DimOutput<'a> {
    dim: usize,
    basis: &'a [usize],
    basis_labels: Vec<String>,
    method: amalgadim::Method,
    elapsed_seconds: f64,
    certificate: &'a std::collections::BTreeMap<usize, Vec<u32>>,
}

fn cmd_dim(input: &Path, method: MethodArg, format: DimFormat, g6: bool, opts: &SearchOptions) -> Result<(), CliError> {
    let g = instance::load(input, g6)?.to_graph()?;
    let start = Instant::now();
    let result = match method {
        MethodArg::Exact => exact_metric_dimension(&g, opts)?,
        MethodArg::Greedy => greedy_resolving_set(&g)?,
    };
    let elapsed = start.elapsed().as_secs_f64();
    let names: Vec<String> = result.basis.iter().map(|&v| g.display_name(v)).collect();
    let text = match format {
        DimFormat::Text => {
            let ids: Vec<String> = result.basis.iter().map(usize::to_string).collect();
            let method = match result.method {
                amalgadim::Method::Exact => "exact",
                amalgadim::Method::Greedy => "greedy",
            };
            format!(
                "dim: {}\nbasis: {}\nbasis ids: {}\nmethod: {method}\nelapsed: {elapsed:.6}s\n",
                result.dim,
                names.join(" "),
                ids.join(" "),
            )
        }
        DimFormat::Json => {
            let out = DimOutput {
                dim: result.dim,
                basis: &result.basis,
                basis_labels: names,
                method: result.method,
                elapsed_seconds: elapsed,
                certificate: &result.certificate,
            };
            serde_json::to_string(&out).expect("serializable") + "\n"
        }
    };
    write_output(None, &text)
}

fn render_reports(rows: &[TheoremReport], format: ReportFormat) -> String {
    let mut out = String::new();
    match format {
        ReportFormat::Tsv => {
            out.push_str("theorem\tinstance\tpredicted\tobserved\tstatus\truntime\n");
            for r in rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{:.6}\n",
                    r.theorem, r.instance, r.predicted, r.observed, r.status, r.runtime
                ));
            }
        }
        ReportFormat::Json => {
            for r in rows {
                out.push_str(&serde_json::to_string(r).expect("serializable"));
                out.push('\n');
            }
        }
    }
    out
}

struct VerifyArgs {
    suite: String,
    format: ReportFormat,
    seed: u64,
    n_max: Option<usize>,
    lengths_max: Option<usize>,
    orders_max: Option<usize>,
    prism_max: Option<usize>,
    mixed_count: Option<usize>,
    n: Option<usize>,
}

fn cmd_verify(args: &VerifyArgs, opts: &SearchOptions) -> Result<bool, CliError> {
    let suite: Suite = args.suite.parse()?;
    let mut cfg = CorpusConfig {
        seed: args.seed,
        ..CorpusConfig::default()
    };
    if let Some(n_max) = args.n_max {
        if n_max < 2 {
            return Err(CliError::Usage("--n-max must be at least 2".into()));
        }
        cfg.block_counts = (2..=n_max).collect();
    }
    if let Some(v) = args.lengths_max {
        cfg.cycle_lengths.1 = v;
    }
    if let Some(v) = args.orders_max {
        cfg.complete_orders.1 = v;
    }
    if let Some(v) = args.prism_max {
        cfg.prism_params.1 = v;
    }
    if let Some(v) = args.mixed_count {
        cfg.mixed_count = v;
    }
    if let Some(n) = args.n {
        cfg.ladder_blocks = vec![n];
    }
    let harness = Harness::new(*opts);
    let rows = harness.run_suite(suite, &cfg)?;
    write_output(None, &render_reports(&rows, args.format))?;

    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    let mut err = io::stderr();
    for r in rows.iter().filter(|r| r.is_fail()) {
        let _ = writeln!(
            err,
            "FAIL {} {}: predicted {} observed {}",
            r.theorem, r.instance, r.predicted, r.observed
        );
    }
    let _ = writeln!(
        err,
        "{} rows: {} pass, {} fail, {} audit",
        rows.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Audit)
    );
    Ok(count(Status::Fail) == 0)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let opts = SearchOptions {
        budget: cli.budget,
        jobs: None,
        prune: true,
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Gen { family, params, out, g6 } => cmd_gen(&family, &params, out.as_deref(), g6)?,
        Command::Amalgamate {
            kind,
            inputs,
            out,
            terminal_vertex,
            terminal_edge,
            flip,
            g6,
        } => {
            let file = build_amalgam(&AmalgamateArgs {
                kind,
                inputs: &inputs,
                terminal_vertex: &terminal_vertex,
                terminal_edge: &terminal_edge,
                flip: &flip,
                g6,
            })?;
            write_output(out.as_deref(), &(file.to_json() + "\n"))?;
        }
        Command::Dim { input, method, format, g6 } => cmd_dim(&input, method, format, g6, &opts)?,
        Command::Verify {
            suite,
            format,
            seed,
            n_max,
            lengths_max,
            orders_max,
            prism_max,
            mixed_count,
            n,
        } => {
            let ok = cmd_verify(
                &VerifyArgs {
                    suite,
                    format,
                    seed,
                    n_max,
                    lengths_max,
                    orders_max,
                    prism_max,
                    mixed_count,
                    n,
                },
                &opts,
            )?;
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for
    // disconnected input; report them as bad input instead
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
