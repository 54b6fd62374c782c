//! The `tilinglab` command line. [`run`] takes the raw arguments and two
//! sinks and returns the process exit code, so tests can drive it in
//! process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::config::splice_config;
use super::sweep::{run_sweep, Generator, SweepSpec};
use super::verify::{run_suite, Suite, VerifyLimits};
use super::{exit_code, EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use crate::augment::{iterate_expansion_improvement, paper_parameters, trace_to_csv, IterationConfig};
use crate::error::{Error, Result};
use crate::graph::{
    expand, make_complete_bipartite, make_l, make_m, random_graph_gnm, read_edge_list, write_edge_list, Graph,
};
use crate::thresholds::{crossover_alpha, erdos_gallai_ex, threshold_branches, threshold_t};
use crate::tiling::{max_tiling_exact, max_tiling_greedy, uncovered_bound, Budget, Pattern, Tiling};

#[derive(Debug, Parser)]
#[command(
    name = "tilinglab",
    version,
    about = "Vertex-disjoint bipartite tilings: generation, tiling, verification, sweeps"
)]
struct Cli {
    /// File of `key = value` lines applied before the command's own flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated graph as an edge list and print "n m".
    #[command(args_override_self = true)]
    Generate(GenerateArgs),
    /// Tile a graph with a pattern and report the tile count.
    #[command(args_override_self = true)]
    Tile(TileArgs),
    /// Run a verification suite; exit code 1 on any failed case.
    #[command(args_override_self = true)]
    Verify(VerifyArgs),
    /// Evaluate a parameter grid into a resumable CSV.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Print the closed-form quantities for one parameter choice.
    #[command(args_override_self = true)]
    Params(ParamsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "lower")]
enum GenKind {
    /// `M(n, x)`: parameters n x.
    M,
    /// `L(n, x)`: parameters n x.
    L,
    /// `K_{a,b}`: parameters a b.
    Kab,
    /// Uniform random graph: parameters n m.
    Gnm,
    /// r-expansion of --input: parameter r.
    Expand,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(value_enum, ignore_case = true)]
    kind: GenKind,
    /// Shorthand for the kind's parameters, e.g. `generate m 10 3`.
    #[arg(value_name = "PARAM")]
    params: Vec<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Edge-list destination; without it the edge list goes to stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
    Iterate,
}

#[derive(Debug, Args)]
struct TileArgs {
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// `K_{s,t}` pattern as `s,t`.
    #[arg(long, value_parser = parse_pair, conflicts_with = "pattern_file", required_unless_present = "pattern_file")]
    pattern: Option<(usize, usize)>,
    /// Any bipartite pattern without isolated vertices, as an edge list.
    #[arg(long, value_name = "FILE")]
    pattern_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Budget::default().copy_cap)]
    copy_cap: usize,
    #[arg(long, default_value_t = Budget::default().node_limit)]
    node_limit: u64,
    #[arg(long, default_value_t = IterationConfig::default().p)]
    p: usize,
    #[arg(long, default_value_t = IterationConfig::default().q)]
    q: usize,
    #[arg(long, default_value_t = IterationConfig::default().alpha)]
    alpha: f64,
    #[arg(long, default_value_t = IterationConfig::default().eps)]
    eps: f64,
    /// Iterate mode: keep running rounds after one changes nothing.
    #[arg(long)]
    keep_going: bool,
    /// Also print the tiles, one per line.
    #[arg(long)]
    show_tiles: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = VerifyLimits::default().max_n)]
    max_n: usize,
    #[arg(long, default_value_t = VerifyLimits::default().max_st)]
    max_st: usize,
    #[arg(long, default_value_t = VerifyLimits::default().max_ab)]
    max_ab: usize,
    #[arg(long, default_value_t = VerifyLimits::default().cases)]
    cases: usize,
    #[arg(long, default_value_t = VerifyLimits::default().seed)]
    seed: u64,
    /// Where to write the per-case CSV when a case fails; stderr otherwise.
    #[arg(long, value_name = "FILE")]
    failures_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Repeatable: `--pattern 1,2 --pattern 2,3`.
    #[arg(long, value_parser = parse_pair, required = true, action = clap::ArgAction::Append)]
    pattern: Vec<(usize, usize)>,
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long = "seeds", value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Generator::Gnm)]
    generator: Generator,
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[arg(long, default_value_t = Budget::default().copy_cap)]
    copy_cap: usize,
    #[arg(long, default_value_t = Budget::default().node_limit)]
    node_limit: u64,
}

#[derive(Debug, Args)]
struct ParamsArgs {
    #[arg(long, value_parser = parse_pair)]
    pattern: (usize, usize),
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = IterationConfig::default().eps)]
    eps: f64,
    /// Also print edge counts at this order.
    #[arg(long)]
    n: Option<u64>,
}

fn parse_pair(text: &str) -> std::result::Result<(usize, usize), String> {
    let (s, t) = text.split_once(',').ok_or_else(|| format!("expected s,t, got {text:?}"))?;
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(s)?, num(t)?))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run(args: Vec<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let args = match splice_config(args) {
        Ok(args) => args,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a, out),
        Command::Tile(a) => tile(a, out, err),
        Command::Verify(a) => verify(a, out, err),
        Command::Sweep(a) => sweep(a, out),
        Command::Params(a) => params(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    read_edge_list(&text)
}

// The i-th value comes from its flag or else from the i-th positional.
fn pick(flag: Option<usize>, params: &[usize], i: usize, name: &str) -> Result<usize> {
    flag.or_else(|| params.get(i).copied()).ok_or_else(|| usage(format!("missing --{name}")))
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let p = &a.params;
    let arity = match a.kind {
        GenKind::Expand => 1,
        _ => 2,
    };
    if p.len() > arity {
        return Err(usage(format!("{} takes at most {arity} positional parameters", kind_name(a.kind))));
    }
    let g = match a.kind {
        GenKind::M => make_m(pick(a.n, p, 0, "n")?, pick(a.x, p, 1, "x")?)?,
        GenKind::L => make_l(pick(a.n, p, 0, "n")?, pick(a.x, p, 1, "x")?)?,
        GenKind::Kab => {
            let (x, y) = (pick(a.a, p, 0, "a")?, pick(a.b, p, 1, "b")?);
            crate::graph::check_capacity(x.saturating_add(y))?;
            make_complete_bipartite(x, y)
        }
        GenKind::Gnm => random_graph_gnm(pick(a.n, p, 0, "n")?, pick(a.m, p, 1, "m")?, a.seed)?,
        GenKind::Expand => {
            let input = a.input.as_deref().ok_or_else(|| usage("expand needs --input"))?;
            expand(&read_graph(input)?, pick(a.r, p, 0, "r")?)?.0
        }
    };
    let text = write_edge_list(&g);
    match &a.out {
        Some(path) => {
            fs::write(path, text)?;
            writeln!(out, "{} {}", g.n(), g.edge_count())?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

fn kind_name(kind: GenKind) -> String {
    kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn report_tiling(out: &mut dyn Write, tiling: &Tiling, show: bool) -> Result<()> {
    writeln!(out, "tiles: {}", tiling.len())?;
    writeln!(out, "covered: {}", tiling.size())?;
    if show {
        write!(out, "{}", tiling.to_text())?;
    }
    Ok(())
}

fn tile(a: TileArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let g = read_graph(&a.input)?;
    let pattern = match (&a.pattern, &a.pattern_file) {
        (&Some((s, t)), _) => Pattern::complete_bipartite(s, t)?,
        (None, Some(path)) => Pattern::new(read_graph(path)?)?,
        (None, None) => return Err(usage("need --pattern or --pattern-file")),
    };
    match a.mode {
        Mode::Greedy => {
            let tiling = max_tiling_greedy(&g, &pattern, a.seed);
            report_tiling(out, &tiling, a.show_tiles)?;
            Ok(EXIT_OK)
        }
        Mode::Exact => {
            let found = max_tiling_exact(&g, &pattern, Budget { copy_cap: a.copy_cap, node_limit: a.node_limit })?;
            report_tiling(out, &found.tiling, a.show_tiles)?;
            writeln!(out, "optimal: {}", found.optimal)?;
            writeln!(out, "nodes: {}", found.nodes)?;
            if found.optimal {
                Ok(EXIT_OK)
            } else {
                writeln!(err, "node limit {} reached; tile count is a lower bound", a.node_limit)?;
                Ok(EXIT_BUDGET)
            }
        }
        Mode::Iterate => {
            let cfg = IterationConfig {
                p: a.p,
                q: a.q,
                alpha: a.alpha,
                eps: a.eps,
                seed: a.seed,
                stop_when_stalled: !a.keep_going,
                capacity: None,
            };
            let result = iterate_expansion_improvement(&g, &pattern, &cfg)?;
            report_tiling(out, &result.tiling, a.show_tiles)?;
            writeln!(out, "n: {}", result.graph.n())?;
            write!(out, "{}", trace_to_csv(&result.trace))?;
            Ok(EXIT_OK)
        }
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let limits = VerifyLimits { max_n: a.max_n, max_st: a.max_st, max_ab: a.max_ab, cases: a.cases, seed: a.seed };
    let report = run_suite(a.suite, &limits)?;
    writeln!(out, "{}", report.summary())?;
    if report.passed() {
        return Ok(EXIT_OK);
    }
    match &a.failures_out {
        Some(path) => fs::write(path, report.failure_csv())?,
        None => write!(err, "{}", report.failure_csv())?,
    }
    Ok(EXIT_VERIFY)
}

fn sweep(a: SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let spec = SweepSpec {
        patterns: a.pattern,
        alphas: a.alpha,
        ns: a.n,
        seeds: a.seeds,
        generator: a.generator,
        budget: Budget { copy_cap: a.copy_cap, node_limit: a.node_limit },
    };
    let summary = run_sweep(&spec, &a.out)?;
    writeln!(out, "cells: {} skipped: {} written: {}", summary.total, summary.skipped, summary.written)?;
    Ok(EXIT_OK)
}

fn params(a: ParamsArgs, out: &mut dyn Write) -> Result<i32> {
    let (s, t) = a.pattern;
    let threshold = threshold_t(s, t, a.alpha)?;
    let (m_branch, l_branch) = threshold_branches(s, t, a.alpha);
    writeln!(out, "threshold: {threshold}")?;
    writeln!(out, "m_branch: {m_branch}")?;
    writeln!(out, "l_branch: {l_branch}")?;
    writeln!(out, "crossover_alpha: {}", crossover_alpha(s, t)?)?;
    writeln!(out, "uncovered_bound: {}", uncovered_bound(s, t))?;
    if s < t {
        let pp = paper_parameters(s, t, a.alpha, a.eps)?;
        let show = |x: Option<u64>| x.map_or("overflow".to_string(), |v| v.to_string());
        writeln!(out, "eps_prime: {}", pp.eps_prime)?;
        writeln!(out, "paper_p: {}", show(pp.p))?;
        writeln!(out, "paper_q: {}", show(pp.q))?;
    }
    if let Some(n) = a.n {
        let pairs = n * n.saturating_sub(1) / 2;
        writeln!(out, "threshold_edges: {}", (threshold * pairs as f64).ceil() as u64)?;
        let l = ((a.alpha * n as f64) / (s + t) as f64).ceil() as u64;
        if s == 1 && t == 1 && l >= 1 && 2 * l <= n {
            writeln!(out, "erdos_gallai: {}", erdos_gallai_ex(n, l)?)?;
        }
    }
    Ok(EXIT_OK)
}
