//! Parameter sweeps: one CSV row per (pattern, alpha, n, seed) cell,
//! resumable by appending to a partial output file.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use rayon::prelude::*;

use super::samplers::cell_seed;
use crate::error::{Error, Result};
use crate::graph::{make_l, make_m, random_graph_gnm, Graph};
use crate::thresholds::{crossover_alpha, threshold_t};
use crate::tiling::{max_tiling_exact, max_tiling_greedy, Budget, Pattern};

pub const SWEEP_HEADER: &str = "s,t,alpha,n,seed,generator,edges,threshold_edges,tiles_found,tiles_target,ratio";

/// Cells evaluated in parallel before each write.
const CHUNK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    /// `M(n, k s - 1)` for the target count `k`.
    M,
    /// `L(n, k (s + t) - 1)` for the target count `k`.
    L,
    /// Uniform graph with `ceil(T C(n, 2))` edges.
    Gnm,
    /// `M` below the crossover `alpha`, `L` from it on.
    CrossoverMix,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::M => "m",
            Generator::L => "l",
            Generator::Gnm => "gnm",
            Generator::CrossoverMix => "crossover-mix",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub patterns: Vec<(usize, usize)>,
    pub alphas: Vec<f64>,
    pub ns: Vec<usize>,
    pub seeds: Vec<u64>,
    pub generator: Generator,
    pub budget: Budget,
}

impl SweepSpec {
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.patterns.is_empty() || self.alphas.is_empty() || self.ns.is_empty() || self.seeds.is_empty() {
            return bad("every sweep grid needs at least one value".into());
        }
        if let Some(&(s, t)) = self.patterns.iter().find(|&&(s, t)| s == 0 || s > t) {
            return bad(format!("pattern ({s}, {t}) needs 1 <= s <= t"));
        }
        if let Some(a) = self.alphas.iter().find(|&&a| !(a > 0.0 && a < 1.0)) {
            return bad(format!("alpha {a} outside (0, 1)"));
        }
        if self.ns.contains(&0) {
            return bad("n must be positive".into());
        }
        Ok(())
    }

    /// Cells in output order: pattern, then alpha, then n, then seed.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &(s, t) in &self.patterns {
            for &alpha in &self.alphas {
                for &n in &self.ns {
                    for &seed in &self.seeds {
                        out.push(Cell { index: out.len() as u64, s, t, alpha, n, seed });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: u64,
    pub s: usize,
    pub t: usize,
    pub alpha: f64,
    pub n: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub cell: Cell,
    pub generator: Generator,
    pub edges: usize,
    pub threshold_edges: u64,
    pub tiles_found: usize,
    pub tiles_target: usize,
}

impl SweepRow {
    pub fn ratio(&self) -> f64 {
        self.tiles_found as f64 / self.tiles_target as f64
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            cell_key(&self.cell, self.generator),
            self.edges,
            self.threshold_edges,
            self.tiles_found,
            self.tiles_target,
            self.ratio()
        )
    }
}

/// The leading `s,t,alpha,n,seed,generator` columns of a cell's row.
fn cell_key(c: &Cell, generator: Generator) -> String {
    format!("{},{},{},{},{},{}", c.s, c.t, c.alpha, c.n, c.seed, generator.name())
}

fn binom2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// `max(1, floor(alpha n / (s + t)))`.
pub fn tiles_target(s: usize, t: usize, alpha: f64, n: usize) -> usize {
    ((alpha * n as f64 / (s + t) as f64).floor() as usize).max(1)
}

pub fn run_cell(cell: &Cell, generator: Generator, budget: Budget) -> Result<SweepRow> {
    let Cell { s, t, alpha, n, .. } = *cell;
    let threshold_edges = ((threshold_t(s, t, alpha)? * binom2(n) as f64).ceil() as u64).min(binom2(n));
    let target = tiles_target(s, t, alpha, n);
    let seed = cell_seed(cell.seed, cell.index);
    let concrete = match generator {
        Generator::CrossoverMix if alpha < crossover_alpha(s, t)? => Generator::M,
        Generator::CrossoverMix => Generator::L,
        g => g,
    };
    let graph: Graph = match concrete {
        Generator::M => make_m(n, (target * s - 1).min(n))?,
        Generator::L => make_l(n, (target * (s + t) - 1).min(n))?,
        _ => random_graph_gnm(n, threshold_edges as usize, seed)?,
    };
    let pattern = Pattern::complete_bipartite(s, t)?;
    let tiles_found = match max_tiling_exact(&graph, &pattern, budget) {
        Ok(found) => found.tiling.len(),
        Err(Error::CopyCapExceeded { .. }) => max_tiling_greedy(&graph, &pattern, seed).len(),
        Err(e) => return Err(e),
    };
    Ok(SweepRow {
        cell: *cell,
        generator,
        edges: graph.edge_count(),
        threshold_edges,
        tiles_found,
        tiles_target: target,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSummary {
    pub total: usize,
    pub skipped: usize,
    pub written: usize,
}

/// Rows already complete in `out`: the header must match, and a trailing
/// partial line is dropped from the file.
fn resume_point(out: &Path) -> Result<Vec<String>> {
    let text = match fs::read_to_string(out) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => {
            fs::write(out, "")?;
            return Ok(Vec::new());
        }
    };
    if complete.lines().next() != Some(SWEEP_HEADER) {
        return Err(Error::InvalidParameter(format!("{} exists but is not a sweep CSV", out.display())));
    }
    if complete.len() != text.len() {
        fs::write(out, complete)?;
    }
    Ok(complete.lines().skip(1).map(str::to_string).collect())
}

/// Runs the cells not yet in `out`, appending rows in cell order.
/// Re-running a finished sweep writes nothing.
pub fn run_sweep(spec: &SweepSpec, out: &Path) -> Result<SweepSummary> {
    spec.check()?;
    let cells = spec.cells();
    let rows = resume_point(out)?;
    let done = rows.len();
    if done > cells.len() {
        return Err(Error::InvalidParameter(format!("{} has more rows than the sweep has cells", out.display())));
    }
    for (i, (row, cell)) in rows.iter().zip(&cells).enumerate() {
        let key = cell_key(cell, spec.generator);
        if row.strip_prefix(&key).is_none_or(|rest| !rest.starts_with(',')) {
            return Err(Error::InvalidParameter(format!(
                "{} row {} is not cell {key}; it belongs to a different sweep",
                out.display(),
                i + 1
            )));
        }
    }
    let mut file = OpenOptions::new().create(true).append(true).open(out)?;
    if done == 0 && file.metadata()?.len() == 0 {
        writeln!(file, "{SWEEP_HEADER}")?;
    }
    let mut written = 0;
    for chunk in cells[done..].chunks(CHUNK) {
        let rows: Vec<Result<SweepRow>> = chunk.par_iter().map(|c| run_cell(c, spec.generator, spec.budget)).collect();
        let mut text = String::new();
        for row in rows {
            text.push_str(&row?.to_csv());
            text.push('\n');
            written += 1;
        }
        file.write_all(text.as_bytes())?;
        file.flush()?;
    }
    Ok(SweepSummary { total: cells.len(), skipped: done, written })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(generator: Generator) -> SweepSpec {
        SweepSpec {
            patterns: vec![(1, 2)],
            alphas: vec![0.4, 0.8],
            ns: vec![9, 12],
            seeds: vec![0, 1],
            generator,
            budget: Budget::default(),
        }
    }

    #[test]
    fn m_rows_fall_short_of_target() {
        for cell in spec(Generator::M).cells() {
            let row = run_cell(&cell, Generator::M, Budget::default()).unwrap();
            assert!(row.tiles_found < row.tiles_target, "{}", row.to_csv());
        }
    }

    #[test]
    fn resume_and_idempotence() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("sweep.csv");
        let spec = spec(Generator::Gnm);
        let full = run_sweep(&spec, &out).unwrap();
        assert_eq!((full.total, full.skipped, full.written), (8, 0, 8));
        let reference = fs::read_to_string(&out).unwrap();
        assert_eq!(reference.lines().count(), 9);

        assert_eq!(run_sweep(&spec, &out).unwrap().written, 0);
        assert_eq!(fs::read_to_string(&out).unwrap(), reference);

        // cut after three rows plus half a line, then resume
        let keep: String = reference.lines().take(4).map(|l| format!("{l}\n")).collect();
        fs::write(&out, format!("{keep}1,2,0.")).unwrap();
        let resumed = run_sweep(&spec, &out).unwrap();
        assert_eq!((resumed.skipped, resumed.written), (3, 5));
        assert_eq!(fs::read_to_string(&out).unwrap(), reference);
    }

    #[test]
    fn rejects_foreign_files_and_bad_grids() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("other.csv");
        fs::write(&out, "a,b\n1,2\n").unwrap();
        assert!(run_sweep(&spec(Generator::L), &out).is_err());
        let mut bad = spec(Generator::L);
        bad.alphas = vec![1.5];
        assert!(bad.check().is_err());

        let mine = dir.path().join("mine.csv");
        run_sweep(&spec(Generator::L), &mine).unwrap();
        assert!(run_sweep(&spec(Generator::M), &mine).is_err());
    }
}
