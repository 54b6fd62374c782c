use std::fmt;

use super::augmentation::{apply_augmentation, find_augmentation};
use super::aux::find_f1_improvement;
use crate::error::{Error, Result};
use crate::graph::{capacity_cap, expand, ExpansionMap, Graph};
use crate::thresholds::epsilon_prime;
use crate::tiling::{max_tiling_greedy, retile, uncovered_bound, Pattern, Tiling};

#[derive(Debug, Clone, PartialEq)]
pub struct IterationConfig {
    /// Expansion factor per round.
    pub p: usize,
    /// Number of rounds.
    pub q: usize,
    pub alpha: f64,
    pub eps: f64,
    /// Seed of the greedy initial tiling.
    pub seed: u64,
    /// Stop at the first round with nothing left to try.
    pub stop_when_stalled: bool,
    /// Vertex cap for the final graph; `None` uses [`capacity_cap`].
    pub capacity: Option<usize>,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig { p: 2, q: 3, alpha: 0.5, eps: 0.1, seed: 0, stop_when_stalled: true, capacity: None }
    }
}

impl IterationConfig {
    /// `alpha' = (6 - 4 eps) / (6 - 3 eps) * alpha`.
    pub fn alpha_prime(&self) -> f64 {
        (6.0 - 4.0 * self.eps) / (6.0 - 3.0 * self.eps) * self.alpha
    }

    /// Coverage fraction at or below which a round tries to improve.
    pub fn improvement_threshold(&self) -> f64 {
        (1.0 - self.eps / 4.0) * self.alpha_prime()
    }
}

/// The expansion parameters of the asymptotic argument, far beyond desk
/// scale for any realistic `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperParameters {
    pub eps_prime: f64,
    /// `t^2 ceil(4C / eps')`, `None` on overflow.
    pub p: Option<u64>,
    /// `ceil(2t / eps')`, `None` on overflow.
    pub q: Option<u64>,
}

pub fn paper_parameters(s: usize, t: usize, alpha: f64, eps: f64) -> Result<PaperParameters> {
    let cfg = IterationConfig { alpha, eps, ..IterationConfig::default() };
    let eps_prime = epsilon_prime(s, t, cfg.alpha_prime(), eps / 4.0)?;
    let ceil = |x: f64| if x.is_finite() && x < 1.8e19 { Some(x.ceil() as u64) } else { None };
    let c = uncovered_bound(s, t) as f64;
    let p = ceil(4.0 * c / eps_prime).and_then(|k| k.checked_mul((t * t) as u64));
    let q = ceil(2.0 * t as f64 / eps_prime);
    Ok(PaperParameters { eps_prime, p, q })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Retile,
    F1,
    Augment,
    None,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Retile => "retile",
            Action::F1 => "f1",
            Action::Augment => "augment",
            Action::None => "none",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub round: usize,
    pub n: usize,
    pub covered: usize,
    pub fraction: f64,
    pub action: Action,
    /// Tile count after this step; not part of the CSV.
    pub tiles: usize,
}

impl TraceRow {
    fn new(round: usize, g: &Graph, f: &Tiling, action: Action) -> Self {
        let n = g.n();
        let covered = f.size();
        let fraction = if n == 0 { 0.0 } else { covered as f64 / n as f64 };
        TraceRow { round, n, covered, fraction, action, tiles: f.len() }
    }
}

pub fn trace_to_csv(trace: &[TraceRow]) -> String {
    let mut out = String::from("round,n,covered,fraction,action\n");
    for r in trace {
        out.push_str(&format!("{},{},{},{},{}\n", r.round, r.n, r.covered, r.fraction, r.action));
    }
    out
}

/// Checks each row against its predecessor: `f1` and `augment` rows
/// strictly raise the coverage fraction, `retile` rows lose at most
/// `C * tiles / n` where `tiles` is the predecessor's tile count and `n`
/// the new order. Compared on integers.
pub fn check_trace_contract(trace: &[TraceRow], s: usize, t: usize) -> std::result::Result<(), String> {
    let c = uncovered_bound(s, t) as u128;
    for (i, pair) in trace.windows(2).enumerate() {
        let (prev, row) = (&pair[0], &pair[1]);
        let (pc, pn, rc, rn) = (prev.covered as u128, prev.n as u128, row.covered as u128, row.n as u128);
        let ok = match row.action {
            // rc/rn > pc/pn
            Action::F1 | Action::Augment => rc * pn > pc * rn,
            // rc/rn >= pc/pn - c*tiles/rn  <=>  rc*pn + c*tiles*pn >= pc*rn
            Action::Retile => rc * pn + c * prev.tiles as u128 * pn >= pc * rn,
            Action::None => rc == pc && rn == pn,
        };
        if !ok {
            return Err(format!("row {} ({}) breaks the contract against row {i}", i + 1, row.action));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct IterationResult {
    pub graph: Graph,
    pub tiling: Tiling,
    pub trace: Vec<TraceRow>,
}

/// Runs the driver from a seeded greedy tiling.
pub fn iterate_expansion_improvement(g: &Graph, pattern: &Pattern, cfg: &IterationConfig) -> Result<IterationResult> {
    check_pattern(pattern)?;
    let initial = max_tiling_greedy(g, pattern, cfg.seed);
    iterate_expansion_improvement_from(g, pattern, initial, cfg)
}

fn check_pattern(pattern: &Pattern) -> Result<()> {
    if !pattern.is_complete_bipartite() {
        return Err(Error::InvalidParameter("the iteration driver needs a complete bipartite pattern".into()));
    }
    Ok(())
}

/// Each round compares the coverage fraction with
/// [`IterationConfig::improvement_threshold`]. At or below it (and only
/// when `s < t`) the round tries an F1 improvement and then an
/// augmentation, retiling the result back into `K_{s,t}` copies inside a
/// further expansion; above it the round only expands and retiles.
pub fn iterate_expansion_improvement_from(
    g: &Graph,
    pattern: &Pattern,
    initial: Tiling,
    cfg: &IterationConfig,
) -> Result<IterationResult> {
    check_pattern(pattern)?;
    let (s, t) = (pattern.s(), pattern.t());
    if cfg.p < 2 {
        return Err(Error::InvalidParameter(format!("expansion factor p = {} must be at least 2", cfg.p)));
    }
    if !(cfg.eps > 0.0 && cfg.eps < 1.0 && cfg.alpha > 0.0 && cfg.alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < eps < 1 and 0 < alpha <= 1, got {} and {}",
            cfg.eps, cfg.alpha
        )));
    }
    initial.validate_complete(g, s, t)?;

    let cap = cfg.capacity.unwrap_or_else(capacity_cap);
    let growth = (cfg.p.max(t) as u128).checked_pow(cfg.q as u32);
    let worst = growth.and_then(|x| x.checked_mul(g.n() as u128)).unwrap_or(u128::MAX);
    if worst > cap as u128 {
        return Err(Error::Capacity { requested: worst.min(usize::MAX as u128) as usize, cap });
    }

    let threshold = cfg.improvement_threshold();
    let mut graph = g.clone();
    let mut cur = initial;
    let mut trace = vec![TraceRow::new(0, &graph, &cur, Action::None)];

    for round in 1..=cfg.q {
        let fraction = trace.last().expect("nonempty").fraction;
        let wants_improvement = s < t && fraction <= threshold;
        if wants_improvement {
            if let Some(better) = find_f1_improvement(&graph, &cur)? {
                trace.push(TraceRow::new(round, &graph, &better, Action::F1));
                let (big, em) = expand(&graph, cfg.p)?;
                cur = retile(&better, &em, s, t)?;
                graph = big;
                trace.push(TraceRow::new(round, &graph, &cur, Action::Retile));
                continue;
            }
            if let Some(aug) = find_augmentation(&graph, &cur)? {
                let (mid, fnew) = apply_augmentation(&graph, &cur, &aug)?;
                trace.push(TraceRow::new(round, &mid, &fnew, Action::Augment));
                let (big, em) = match (cfg.p / t).max(1) {
                    1 => (mid.clone(), ExpansionMap { base_n: mid.n(), r: 1 }),
                    r => expand(&mid, r)?,
                };
                cur = retile(&fnew, &em, s, t)?;
                graph = big;
                trace.push(TraceRow::new(round, &graph, &cur, Action::Retile));
                continue;
            }
            trace.push(TraceRow::new(round, &graph, &cur, Action::None));
            if cfg.stop_when_stalled {
                break;
            }
        }
        let (big, em) = expand(&graph, cfg.p)?;
        cur = retile(&cur, &em, s, t)?;
        graph = big;
        trace.push(TraceRow::new(round, &graph, &cur, Action::Retile));
        if !wants_improvement && cfg.stop_when_stalled {
            break;
        }
    }
    Ok(IterationResult { graph, tiling: cur, trace })
}
