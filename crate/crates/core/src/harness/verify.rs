//! Verification suites behind `tilinglab verify`.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::samplers::{cell_seed, random_augment_instance};
use crate::augment::{apply_augmentation, find_augmentation, validate_augmentation};
use crate::error::Result;
use crate::graph::{make_complete_bipartite, random_graph_gnm, Graph};
use crate::matching::{matching_edge_bound, max_matching_bipartite, max_matching_general};
use crate::oracle::{brute_ex_matching, brute_matching_number, brute_min_color_class, max_edges_by_matching_number};
use crate::thresholds::{
    check_eq3_consistency, check_t_matches_constructions, crossover_alpha, erdos_gallai_ex, threshold_branches,
};
use crate::tiling::{color_classes, dominates, tile_complete_bipartite, uncovered_bound, Tile, TileTag, Tiling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    ErdosGallai,
    Lemma4,
    AugmentIdentity,
    Thresholds,
    MatchingOracle,
    ColorClasses,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::ErdosGallai => "erdos-gallai",
            Suite::Lemma4 => "lemma4",
            Suite::AugmentIdentity => "augment-identity",
            Suite::Thresholds => "thresholds",
            Suite::MatchingOracle => "matching-oracle",
            Suite::ColorClasses => "color-classes",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyLimits {
    pub max_n: usize,
    pub max_st: usize,
    pub max_ab: usize,
    pub cases: usize,
    pub seed: u64,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        VerifyLimits { max_n: 6, max_st: 4, max_ab: 60, cases: 500, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: u64,
    /// CSV header of the failure rows.
    pub header: &'static str,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, header: &'static str) -> Self {
        SuiteReport { suite, cases: 0, header, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failure_csv(&self) -> String {
        let mut out = format!("{}\n", self.header);
        for row in &self.failures {
            out.push_str(row);
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: PASS ({} cases)", self.suite.name(), self.cases)
        } else {
            format!("{}: FAIL ({} of {} cases failed)", self.suite.name(), self.failures.len(), self.cases)
        }
    }
}

pub fn run_suite(suite: Suite, limits: &VerifyLimits) -> Result<SuiteReport> {
    Ok(match suite {
        Suite::ErdosGallai => erdos_gallai(limits.max_n),
        Suite::Lemma4 => lemma4(limits.max_st, limits.max_ab),
        Suite::AugmentIdentity => augment_identity(limits.cases, limits.seed),
        Suite::Thresholds => thresholds(),
        Suite::MatchingOracle => matching_oracle(limits.cases, limits.seed),
        Suite::ColorClasses => color_class_suite(limits.cases.clamp(1, 200), limits.seed),
    })
}

/// Every labeled graph on `n <= max_n` vertices against the closed form,
/// for every `l <= n/2`. Cases count graphs times `l` values.
fn erdos_gallai(max_n: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::ErdosGallai, "n,l,brute,formula");
    for n in 2..=max_n.min(8) {
        let table = max_edges_by_matching_number(n);
        let graphs = 1u64 << (n * (n - 1) / 2);
        for l in 1..=n / 2 {
            report.cases += graphs;
            let brute = brute_ex_matching(&table, l);
            let formula = erdos_gallai_ex(n as u64, l as u64).expect("l in range");
            if brute != formula {
                report.failures.push(format!("{n},{l},{brute},{formula}"));
            }
        }
    }
    report
}

// A tiling of K_{a,b} is valid when every tile has one class inside 0..a
// and the other inside a..a+b.
fn complete_host_check(tiling: &Tiling, a: usize, b: usize, s: usize, t: usize) -> std::result::Result<(), String> {
    let mut seen = vec![false; a + b];
    for (i, k) in tiling.tiles.iter().enumerate() {
        if k.tag != (TileTag::Complete { small: s, large: t }) {
            return Err(format!("tile {i} is {}", k.tag));
        }
        let left = |vs: &[usize]| vs.iter().all(|&v| v < a);
        let right = |vs: &[usize]| vs.iter().all(|&v| v >= a && v < a + b);
        if !(left(&k.v1) && right(&k.v2) || right(&k.v1) && left(&k.v2)) {
            return Err(format!("tile {i} is not across the bipartition"));
        }
        for v in k.vertices() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} covered twice"));
            }
        }
    }
    Ok(())
}

fn lemma4(max_st: usize, max_ab: usize) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Lemma4, "s,t,a,b,uncovered,bound,detail");
    for s in 1..=max_st {
        for t in s..=max_st {
            let bound = uncovered_bound(s, t);
            for a in 1..=max_ab {
                for b in 1..=max_ab {
                    if !dominates(a, b, s, t).expect("positive sizes") {
                        continue;
                    }
                    report.cases += 1;
                    let outcome = tile_complete_bipartite(a, b, s, t)
                        .map_err(|e| e.to_string())
                        .and_then(|f| complete_host_check(&f, a, b, s, t).map(|_| a + b - f.size()));
                    match outcome {
                        Ok(uncovered) if uncovered <= bound => {}
                        Ok(uncovered) => report.failures.push(format!("{s},{t},{a},{b},{uncovered},{bound},")),
                        Err(e) => report.failures.push(format!("{s},{t},{a},{b},,{bound},{e}")),
                    }
                }
            }
        }
    }
    // full validation against the actual graph on a sparser grid
    for (a, b) in [(4, 5), (7, 13), (20, 33), (60, 60)] {
        for (s, t) in [(1, 2), (2, 3), (3, 4)] {
            if dominates(a, b, s, t).unwrap_or(false) {
                let f = tile_complete_bipartite(a, b, s, t).expect("dominating");
                if let Err(e) = f.validate_complete(&make_complete_bipartite(a, b), s, t) {
                    report.failures.push(format!("{s},{t},{a},{b},,,{e}"));
                }
            }
        }
    }
    report
}

fn augment_tags(s: usize, t: usize) -> [TileTag; 4] {
    [
        TileTag::Complete { small: s * t, large: t * t },
        TileTag::Complete { small: s * t - 1, large: (t - 1) * t },
        TileTag::Complete { small: s * t, large: (t - 1) * t },
        TileTag::Complete { small: 1, large: 1 },
    ]
}

fn check_identity(
    g: &Graph,
    f: &Tiling,
    aug: &crate::augment::Augmentation,
    s: usize,
    t: usize,
) -> std::result::Result<(), String> {
    let (big, fnew) = apply_augmentation(g, f, aug).map_err(|e| e.to_string())?;
    fnew.validate(&big, None).map_err(|e| e.to_string())?;
    let want = t * f.size() + aug.e0.len();
    if fnew.size() != want {
        return Err(format!("covered {} expected {want}", fnew.size()));
    }
    let tags = augment_tags(s, t);
    if let Some(k) = fnew.tiles.iter().find(|k| !tags.contains(&k.tag)) {
        return Err(format!("tile tagged {} outside the family", k.tag));
    }
    Ok(())
}

/// Planted random augmentations, the finder's own output on the same
/// graphs, and the hand-built two-tile instance.
fn augment_identity(cases: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::AugmentIdentity, "case,source,s,t,n,tiling_size,e0,detail");
    let hand = Graph::from_edges(7, [(0, 1), (0, 2), (3, 4), (3, 5), (0, 6), (1, 4)]).expect("simple");
    let hand_f = Tiling::new(vec![Tile::complete(vec![0], vec![1, 2]), Tile::complete(vec![3], vec![4, 5])]);
    let run = |report: &mut SuiteReport,
               case: usize,
               source: &str,
               g: &Graph,
               f: &Tiling,
               aug: &crate::augment::Augmentation,
               s,
               t| {
        report.cases += 1;
        let violations = validate_augmentation(g, f, aug);
        let outcome =
            if violations.is_empty() { check_identity(g, f, aug, s, t) } else { Err(format!("{violations:?}")) };
        if let Err(e) = outcome {
            report.failures.push(format!("{case},{source},{s},{t},{},{},{},\"{e}\"", g.n(), f.size(), aug.e0.len()));
        }
    };
    match find_augmentation(&hand, &hand_f) {
        Ok(Some(aug)) if aug.e0.len() == 1 => run(&mut report, 0, "hand", &hand, &hand_f, &aug, 1, 2),
        other => {
            report.cases += 1;
            report.failures.push(format!("0,hand,1,2,7,6,,\"finder returned {other:?}\""));
        }
    }
    for case in 0..cases {
        let inst = random_augment_instance(cell_seed(seed, case as u64));
        run(&mut report, case + 1, "planted", &inst.graph, &inst.tiling, &inst.aug, inst.s, inst.t);
        if let Ok(Some(found)) = find_augmentation(&inst.graph, &inst.tiling) {
            run(&mut report, case + 1, "found", &inst.graph, &inst.tiling, &found, inst.s, inst.t);
        }
    }
    report
}

/// The threshold grid: `1 <= s <= t <= 4`, nine values of `alpha`, three
/// values of `n`.
fn thresholds() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Thresholds, "s,t,alpha,n,check,residual,bound");
    let alphas: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    for s in 1..=4 {
        for t in s..=4 {
            for &alpha in &alphas {
                for n in [1_000u64, 3_000, 10_000] {
                    let bound = 3.0 * n as f64;
                    report.cases += 1;
                    match check_t_matches_constructions(s, t, alpha, n) {
                        Ok(c) if c.residual <= bound => {}
                        Ok(c) => {
                            report.failures.push(format!("{s},{t},{alpha},{n},construction,{},{bound}", c.residual))
                        }
                        Err(e) => report.failures.push(format!("{s},{t},{alpha},{n},construction,\"{e}\",{bound}")),
                    }
                    if s != t {
                        continue;
                    }
                    report.cases += 1;
                    match check_eq3_consistency(s, alpha, n) {
                        Ok(r) if r <= bound => {}
                        Ok(r) => report.failures.push(format!("{s},{t},{alpha},{n},eq3,{r},{bound}")),
                        Err(e) => report.failures.push(format!("{s},{t},{alpha},{n},eq3,\"{e}\",{bound}")),
                    }
                }
            }
            report.cases += 1;
            let star = crossover_alpha(s, t).expect("valid classes");
            let (m, l) = threshold_branches(s, t, star);
            if (m - l).abs() > 1e-12 {
                report.failures.push(format!("{s},{t},{star},,crossover,{},1e-12", (m - l).abs()));
            }
        }
    }
    report
}

fn random_bipartite(rng: &mut ChaCha8Rng) -> (Graph, Vec<usize>, Vec<usize>) {
    let (na, nb) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let p = rng.gen_range(0.1..0.9);
    let edges: Vec<(usize, usize)> =
        (0..na).flat_map(|u| (na..na + nb).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    let g = Graph::from_edges(na + nb, edges).expect("simple");
    (g, (0..na).collect(), (na..na + nb).collect())
}

/// General matcher against brute force on every graph with `n <= 6` and
/// on random graphs with `n <= 8`; bipartite matcher and the König edge
/// bound on random bipartite graphs.
fn matching_oracle(cases: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::MatchingOracle, "source,n,edges,matcher,brute");
    for n in 1..=6usize {
        let pairs = crate::oracle::pair_list(n);
        for mask in 0u64..1 << pairs.len() {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                .expect("simple");
            report.cases += 1;
            let (fast, brute) = (max_matching_general(&g), brute_matching_number(&g));
            if fast.len() != brute || !fast.is_valid_in(&g) {
                report.failures.push(format!("exhaustive,{n},{},{},{brute}", g.edge_count(), fast.len()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let g = random_graph_gnm(n, m, rng.gen()).expect("small");
        report.cases += 1;
        let (fast, brute) = (max_matching_general(&g), brute_matching_number(&g));
        if fast.len() != brute || !fast.is_valid_in(&g) {
            report.failures.push(format!("random,{n},{m},{},{brute}", fast.len()));
        }

        let (h, a, b) = random_bipartite(&mut rng);
        report.cases += 1;
        let nu = brute_matching_number(&h);
        let ok = match (max_matching_bipartite(&h, &a, &b), matching_edge_bound(&h, &a, &b)) {
            (Ok(mm), Ok(eb)) => mm.len() == nu && mm.is_valid_in(&h) && eb.holds && eb.nu == nu,
            _ => false,
        };
        if !ok {
            report.failures.push(format!("bipartite,{},{},?,{nu}", h.n(), h.edge_count()));
        }
    }
    report
}

/// A fixed corpus of random bipartite graphs with at most 12 vertices,
/// some components balanced and some with isolated vertices.
pub fn color_class_corpus(size: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|_| {
            let n = rng.gen_range(1..=12);
            let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let p = rng.gen_range(0.05..0.7);
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| side[u] != side[v])
                .filter(|_| rng.gen_bool(p))
                .collect();
            Graph::from_edges(n, edges).expect("simple")
        })
        .collect()
}

fn color_class_suite(size: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(Suite::ColorClasses, "graph,n,edges,s,brute");
    for (i, h) in color_class_corpus(size, seed).iter().enumerate() {
        report.cases += 1;
        let brute = brute_min_color_class(h);
        let got = color_classes(h).ok();
        let proper = got.as_ref().is_some_and(|c| {
            h.edges().all(|(u, v)| c.v1.binary_search(&u).is_ok() != c.v1.binary_search(&v).is_ok())
                && c.v1.len() + c.v2.len() == h.n()
        });
        if got.as_ref().map(|c| c.s) != brute || !proper {
            report.failures.push(format!("{i},{},{},{:?},{brute:?}", h.n(), h.edge_count(), got.map(|c| c.s)));
        }
    }
    report
}
