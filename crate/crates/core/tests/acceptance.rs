//! The ten acceptance criteria, each checked against the reference code in
//! `common` and reported on one PASS/FAIL line.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tilinglab::augment::{
    apply_augmentation, check_trace_contract, find_augmentation, find_f1_improvement, iterate_expansion_improvement,
    validate_augmentation, Action, Augmentation, IterationConfig, TraceRow,
};
use tilinglab::graph::{expand, make_complete_bipartite, make_l, make_m, random_graph_gnm, Graph};
use tilinglab::harness::samplers::random_augment_instance;
use tilinglab::harness::verify::color_class_corpus;
use tilinglab::matching::{matching_edge_bound, max_matching_general};
use tilinglab::regularity::{is_eps_regular_exact, is_eps_regular_sampled, slicing_check, SampledVerdict};
use tilinglab::thresholds::{
    check_eq3_consistency, check_t_matches_constructions, crossover_alpha, erdos_gallai_ex, threshold_branches,
    threshold_t,
};
use tilinglab::tiling::{
    color_classes, dominates, max_tiling_exact, max_tiling_greedy, retile, tile_complete_bipartite, Budget, Pattern,
    Tile, TileTag, Tiling,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn blocks(f: &Tiling) -> Vec<(&[usize], &[usize])> {
    f.tiles.iter().map(|k| (k.v1.as_slice(), k.v2.as_slice())).collect()
}

fn erdos_gallai() -> Outcome {
    let mut graphs = 0u64;
    let mut checks = 0;
    for n in 1..=7usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut best = vec![0u64; n / 2 + 1];
        for mask in 0u64..1 << pairs.len() {
            let mut adj = vec![0u64; n];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
            }
            let nu = common::matching_number(&adj, (1 << n) - 1);
            best[nu] = best[nu].max(mask.count_ones() as u64);
            graphs += 1;
        }
        for l in 1..=n / 2 {
            let brute = *best[..l].iter().max().unwrap();
            let lib = erdos_gallai_ex(n as u64, l as u64).map_err(|e| e.to_string())?;
            let own = common::erdos_gallai(n as u64, l as u64);
            if brute != lib || lib != own {
                return Err(format!("n={n} l={l}: brute {brute}, library {lib}, closed form {own}"));
            }
            checks += 1;
        }
    }
    Ok(format!("{graphs} graphs on n <= 7, {checks} (n, l) values"))
}

fn lemma4() -> Outcome {
    let mut pairs = 0;
    let mut worst = 0;
    for s in 1..=4 {
        for t in s..=4 {
            for a in 1..=60 {
                for b in 1..=60 {
                    let own = common::dominates(a, b, s, t);
                    if dominates(a, b, s, t).map_err(|e| e.to_string())? != own {
                        return Err(format!("domination disagrees on ({a},{b}) vs ({s},{t})"));
                    }
                    let result = tile_complete_bipartite(a, b, s, t);
                    if !own {
                        if result.is_ok() {
                            return Err(format!("({a},{b}) does not dominate ({s},{t}) but was tiled"));
                        }
                        continue;
                    }
                    let f = result.map_err(|e| format!("({a},{b},{s},{t}): {e}"))?;
                    let host = SidesOnly { a, b };
                    let covered = host.check(&f, s, t).map_err(|e| format!("({a},{b},{s},{t}): {e}"))?;
                    let uncovered = a + b - covered;
                    if uncovered > common::uncovered_cap(s, t) {
                        return Err(format!("({a},{b},{s},{t}) leaves {uncovered} uncovered"));
                    }
                    worst = worst.max(uncovered);
                    pairs += 1;
                }
            }
        }
    }
    // spot-check against real host graphs
    for (a, b, s, t) in [(5, 9, 1, 2), (17, 23, 2, 3), (40, 52, 3, 4), (60, 60, 4, 4)] {
        let f = tile_complete_bipartite(a, b, s, t).map_err(|e| e.to_string())?;
        common::check_complete_blocks(&make_complete_bipartite(a, b), &blocks(&f))?;
    }
    Ok(format!("{pairs} dominating (a, b, s, t), at most {worst} uncovered"))
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`, checked without building it.
struct SidesOnly {
    a: usize,
    b: usize,
}

impl SidesOnly {
    fn check(&self, f: &Tiling, s: usize, t: usize) -> Result<usize, String> {
        let mut seen = vec![false; self.a + self.b];
        let left = |v: &usize| *v < self.a;
        for (i, k) in f.tiles.iter().enumerate() {
            let sizes = (k.v1.len(), k.v2.len());
            if sizes != (s, t) && sizes != (t, s) {
                return Err(format!("tile {i} has classes {sizes:?}"));
            }
            let split =
                (k.v1.iter().all(left) && !k.v2.iter().any(left)) || (k.v2.iter().all(left) && !k.v1.iter().any(left));
            if !split {
                return Err(format!("tile {i} is not split across the sides"));
            }
            for &v in k.v1.iter().chain(&k.v2) {
                if v >= seen.len() || seen[v] {
                    return Err(format!("vertex {v} reused or out of range"));
                }
                seen[v] = true;
            }
        }
        Ok(seen.iter().filter(|&&x| x).count())
    }
}

fn family(s: usize, t: usize) -> [(usize, usize); 4] {
    [(s * t, t * t), (s * t - 1, (t - 1) * t), (s * t, (t - 1) * t), (1, 1)]
}

fn identity_holds(g: &Graph, f: &Tiling, aug: &Augmentation, s: usize, t: usize) -> Result<(), String> {
    let (big, fnew) = apply_augmentation(g, f, aug).map_err(|e| e.to_string())?;
    if big.n() != g.n() * t {
        return Err(format!("expansion has {} vertices, expected {}", big.n(), g.n() * t));
    }
    let covered = common::check_complete_blocks(&big, &blocks(&fnew))?;
    let want = t * f.size() + aug.e0.len();
    if covered != want || fnew.size() != want {
        return Err(format!("covered {covered}, expected {want}"));
    }
    let fam = family(s, t);
    for k in &fnew.tiles {
        let sizes = (k.v1.len(), k.v2.len());
        let tagged = match k.tag {
            TileTag::Complete { small, large } => (small, large),
            TileTag::Pattern => return Err("pattern-tagged tile".into()),
        };
        if !fam.contains(&sizes) || tagged != sizes {
            return Err(format!("tile with classes {sizes:?} tagged {}", k.tag));
        }
    }
    Ok(())
}

fn augmentation_identity() -> Outcome {
    // hand-built: two stars K_{1,2}, a leftover 6 hanging off centre 0, and
    // the edge 1-4 between the two V2 parts
    let hand = Graph::from_edges(7, [(0, 1), (0, 2), (3, 4), (3, 5), (0, 6), (1, 4)]).unwrap();
    let hand_f = Tiling::new(vec![Tile::complete(vec![0], vec![1, 2]), Tile::complete(vec![3], vec![4, 5])]);
    let aug =
        find_augmentation(&hand, &hand_f).map_err(|e| e.to_string())?.ok_or("no augmentation on hand instance")?;
    if aug.e0 != [(6, 0)] || aug.e1 != [(1, 4)] {
        return Err(format!("hand instance found {aug:?}"));
    }
    identity_holds(&hand, &hand_f, &aug, 1, 2)?;
    let e1_only = Augmentation { e0: vec![], e1: vec![(1, 4)] };
    identity_holds(&hand, &hand_f, &e1_only, 1, 2)?;
    // two K_{2,3} tiles joined by one V2 edge, leftover 10 on a V1 vertex
    let mut edges = vec![(3, 8), (0, 10)];
    for (v1, v2) in [([0, 1], [2, 3, 4]), ([5, 6], [7, 8, 9])] {
        for u in v1 {
            for w in v2 {
                edges.push((u, w));
            }
        }
    }
    let g23 = Graph::from_edges(11, edges).unwrap();
    let f23 = Tiling::new(vec![Tile::complete(vec![0, 1], vec![2, 3, 4]), Tile::complete(vec![5, 6], vec![7, 8, 9])]);
    identity_holds(&g23, &f23, &Augmentation { e0: vec![(10, 0)], e1: vec![(3, 8)] }, 2, 3)?;

    let mut cases = 3;
    let mut with_e0 = 0;
    for seed in 0..600u64 {
        let inst = random_augment_instance(seed ^ 0xacce_0003);
        if !validate_augmentation(&inst.graph, &inst.tiling, &inst.aug).is_empty() {
            return Err(format!("planted instance {seed} is not valid"));
        }
        identity_holds(&inst.graph, &inst.tiling, &inst.aug, inst.s, inst.t)
            .map_err(|e| format!("instance {seed}: {e}"))?;
        cases += 1;
        with_e0 += usize::from(!inst.aug.e0.is_empty());
        if let Some(found) = find_augmentation(&inst.graph, &inst.tiling).map_err(|e| e.to_string())? {
            identity_holds(&inst.graph, &inst.tiling, &found, inst.s, inst.t)
                .map_err(|e| format!("found on instance {seed}: {e}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} instances ({with_e0} planted with E0 nonempty), identity exact"))
}

fn f1_gain() -> Outcome {
    let mut cases = 0;
    let mut positive = 0;
    let patterns = [(1, 2), (1, 3), (2, 3), (2, 2)];
    for seed in 0..240u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf1);
        let (s, t) = patterns[seed as usize % patterns.len()];
        let n = rng.gen_range(8..=18);
        let m = rng.gen_range(n..=3 * n);
        let g = random_graph_gnm(n, m, seed).map_err(|e| e.to_string())?;
        let f = max_tiling_greedy(&g, &Pattern::complete_bipartite(s, t).unwrap(), seed);
        let owner = f.owner_map(n);
        let left: Vec<u64> = (0..n)
            .filter(|&x| owner[x].is_none())
            .map(|x| {
                f.tiles.iter().enumerate().fold(0u64, |acc, (k, tile)| {
                    if tile.v2.iter().any(|&y| g.has_edge(x, y)) {
                        acc | 1 << k
                    } else {
                        acc
                    }
                })
            })
            .collect();
        let nu = common::bipartite_nu(&left);
        let improved = find_f1_improvement(&g, &f).map_err(|e| e.to_string())?;
        let gain = match &improved {
            None => 0,
            Some(better) => {
                let covered =
                    common::check_complete_blocks(&g, &blocks(better)).map_err(|e| format!("seed {seed}: {e}"))?;
                covered - f.size()
            }
        };
        if gain != nu {
            return Err(format!("seed {seed}: gain {gain}, leftover-giant matching {nu}"));
        }
        cases += 1;
        positive += usize::from(nu > 0);
    }
    Ok(format!("{cases} instances, {positive} with positive gain"))
}

fn thresholds() -> Outcome {
    let mut cells = 0;
    let mut worst: f64 = 0.0;
    for s in 1..=4usize {
        for t in s..=4usize {
            for i in 1..=9 {
                let alpha = i as f64 / 10.0;
                let own_t = common::threshold(s, t, alpha);
                let lib_t = threshold_t(s, t, alpha).map_err(|e| e.to_string())?;
                if (own_t - lib_t).abs() > 1e-12 {
                    return Err(format!("T({s},{t},{alpha}) = {lib_t}, reference {own_t}"));
                }
                for n in [1_000u64, 3_000, 10_000] {
                    let bound = 3.0 * n as f64;
                    let xm = (alpha * n as f64 * s as f64 / (s + t) as f64).floor() as u64;
                    let xl = (alpha * n as f64).floor() as u64;
                    let best = common::m_edges(n, xm).max(common::l_edges(xl));
                    let own = (own_t * common::binom2(n) as f64 - best as f64).abs();
                    let lib = check_t_matches_constructions(s, t, alpha, n).map_err(|e| e.to_string())?.residual;
                    if own > bound || lib > bound {
                        return Err(format!("({s},{t}) alpha {alpha} n {n}: residuals {own} / {lib} > {bound}"));
                    }
                    worst = worst.max(own / n as f64).max(lib / n as f64);
                    // Eq. (3) side: matchings, T_{s,s} against ex(n, l x K2)
                    let l = (alpha * n as f64 / 2.0).floor() as u64;
                    let eg = common::erdos_gallai(n, l) as f64;
                    let own3 = (common::threshold(s, s, alpha) * common::binom2(n) as f64 - eg).abs();
                    let lib3 = check_eq3_consistency(s, alpha, n).map_err(|e| e.to_string())?;
                    if own3 > bound || lib3 > bound {
                        return Err(format!("matching residual at s {s} alpha {alpha} n {n}: {own3} / {lib3}"));
                    }
                    cells += 1;
                }
            }
            let star = crossover_alpha(s, t).map_err(|e| e.to_string())?;
            let (m, l) = threshold_branches(s, t, star);
            if (m - l).abs() > 1e-12 {
                return Err(format!("crossover ({s},{t}) at {star}: branches differ by {}", (m - l).abs()));
            }
        }
    }
    Ok(format!("{cells} grid cells, worst residual {worst:.3} n"))
}

fn non_containment() -> Outcome {
    let mut checked = 0;
    for (s, t) in [(1, 2), (2, 3)] {
        let pattern = Pattern::complete_bipartite(s, t).unwrap();
        for n in 1..=15usize {
            for k in 1..=n {
                let mut hosts = Vec::new();
                if k * s - 1 <= n {
                    hosts.push(("M", make_m(n, k * s - 1).unwrap()));
                }
                if k * (s + t) - 1 <= n {
                    hosts.push(("L", make_l(n, k * (s + t) - 1).unwrap()));
                }
                for (name, g) in hosts {
                    let found = max_tiling_exact(&g, &pattern, Budget::default()).map_err(|e| e.to_string())?;
                    if !found.optimal {
                        return Err(format!("{name}, n {n}, k {k}, ({s},{t}): search not completed"));
                    }
                    common::check_complete_blocks(&g, &blocks(&found.tiling))?;
                    if found.tiling.len() >= k {
                        return Err(format!("{name}, n {n}, k {k}, ({s},{t}): {} copies", found.tiling.len()));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (construction, n, k) cells, all below k"))
}

fn matching_oracle() -> Outcome {
    let mut graphs = 0;
    for n in 0..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..1 << pairs.len() {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                .unwrap();
            let m = max_matching_general(&g);
            if !m.is_valid_in(&g) || m.len() != common::nu(&g) {
                return Err(format!("n {n}, edge mask {mask:#x}: matcher {} vs {}", m.len(), common::nu(&g)));
            }
            graphs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..500 {
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let g = random_graph_gnm(n, m, i).unwrap();
        let got = max_matching_general(&g);
        if !got.is_valid_in(&g) || got.len() != common::nu(&g) {
            return Err(format!("random graph {i}: {} vs {}", got.len(), common::nu(&g)));
        }
    }
    let mut bipartite = 0;
    for i in 0..500u64 {
        let (a, b) = (rng.gen_range(1..=9), rng.gen_range(1..=9));
        let p = rng.gen_range(0.0..1.0);
        let edges: Vec<(usize, usize)> =
            (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        let g = Graph::from_edges(a + b, edges).unwrap();
        let (sa, sb): (Vec<usize>, Vec<usize>) = ((0..a).collect(), (a..a + b).collect());
        let bound = matching_edge_bound(&g, &sa, &sb).map_err(|e| e.to_string())?;
        let nu = common::nu(&g);
        if bound.nu != nu || g.edge_count() > nu * a.max(b) || !bound.holds {
            return Err(format!("bipartite instance {i}: nu {} vs {nu}, {} edges", bound.nu, g.edge_count()));
        }
        bipartite += 1;
    }
    Ok(format!("{graphs} exhaustive + 500 random graphs, {bipartite} bipartite edge-bound instances"))
}

/// A tiling whose tiles are complete bipartite blocks dominating `(s, t)`,
/// embedded with noise in a larger random graph.
fn random_star_tiling(rng: &mut ChaCha8Rng, s: usize, t: usize) -> (Graph, Tiling) {
    let tiles = rng.gen_range(1..=5);
    let mut sizes = Vec::new();
    while sizes.len() < tiles {
        let (a, b) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        if common::dominates(a, b, s, t) {
            sizes.push((a.min(b), a.max(b)));
        }
    }
    let n = sizes.iter().map(|&(a, b)| a + b).sum::<usize>() + rng.gen_range(0..=4);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;
    for (a, b) in sizes {
        let v1: Vec<usize> = perm[next..next + a].to_vec();
        let v2: Vec<usize> = perm[next + a..next + a + b].to_vec();
        next += a + b;
        for &u in &v1 {
            for &w in &v2 {
                edges.push((u.min(w), u.max(w)));
            }
        }
        out.push(Tile::complete(v1, v2));
    }
    for _ in 0..rng.gen_range(0..=n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    (Graph::from_edges(n, edges).unwrap(), Tiling::new(out))
}

/// Per-row contract, on exact integers.
fn trace_ok(trace: &[TraceRow], c: usize) -> Result<(), String> {
    for w in trace.windows(2) {
        let (p, r) = (&w[0], &w[1]);
        let (pc, pn, rc, rn) = (p.covered as u128, p.n as u128, r.covered as u128, r.n as u128);
        let ok = match r.action {
            Action::F1 | Action::Augment => rc * pn > pc * rn,
            Action::Retile => (rc + (c * p.tiles) as u128) * pn >= pc * rn,
            Action::None => rc == pc && rn == pn,
        };
        if !ok {
            return Err(format!("round {} ({}) breaks the contract", r.round, r.action));
        }
    }
    Ok(())
}

fn retiling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pats = [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 4)];
    for i in 0..200 {
        let (s, t) = pats[i % pats.len()];
        let (g, f) = random_star_tiling(&mut rng, s, t);
        let r = rng.gen_range(1..=4);
        let (big, em) = expand(&g, r).map_err(|e| e.to_string())?;
        let out = retile(&f, &em, s, t).map_err(|e| format!("instance {i}: {e}"))?;
        let covered = common::check_complete_blocks(&big, &blocks(&out)).map_err(|e| format!("instance {i}: {e}"))?;
        if out.tiles.iter().any(|k| (k.v1.len(), k.v2.len()) != (s, t)) {
            return Err(format!("instance {i}: retiled tile is not K_{{{s},{t}}}"));
        }
        if covered + f.len() * common::uncovered_cap(s, t) < f.size() * r {
            return Err(format!("instance {i}: covered {covered} < {} r - {} C", f.size(), f.len()));
        }
    }
    let mut rows = 0;
    let mut improving = 0;
    let dense = [(1, 2), (2, 2), (1, 3), (2, 3)];
    for i in 0..100u64 {
        let (s, t) = dense[i as usize % dense.len()];
        let n = rng.gen_range(10..=60);
        let m = (0.5 * (n * (n - 1) / 2) as f64) as usize + rng.gen_range(0..n);
        let g = random_graph_gnm(n, m, i).map_err(|e| e.to_string())?;
        let cfg = IterationConfig {
            p: 2,
            q: rng.gen_range(1..=3),
            alpha: 0.9,
            eps: 0.2,
            seed: i,
            stop_when_stalled: false,
            capacity: None,
        };
        let result = iterate_expansion_improvement(&g, &Pattern::complete_bipartite(s, t).unwrap(), &cfg)
            .map_err(|e| format!("dense instance {i}: {e}"))?;
        trace_ok(&result.trace, common::uncovered_cap(s, t)).map_err(|e| format!("dense instance {i}: {e}"))?;
        check_trace_contract(&result.trace, s, t).map_err(|e| format!("dense instance {i}: {e}"))?;
        common::check_complete_blocks(&result.graph, &blocks(&result.tiling))?;
        rows += result.trace.len();
        improving += result.trace.iter().filter(|r| matches!(r.action, Action::F1 | Action::Augment)).count();
    }
    Ok(format!("200 retilings within bound; 100 traces, {rows} rows, {improving} improving steps"))
}

fn color_classes_corpus() -> Outcome {
    let corpus = color_class_corpus(200, 0);
    let mut bipartite = 0;
    for (i, h) in corpus.iter().enumerate() {
        let want = common::min_color_class(h);
        match (color_classes(h), want) {
            (Ok(c), Some(s)) => {
                let proper = h.edges().all(|(u, v)| c.v1.contains(&u) != c.v1.contains(&v));
                if c.s != s || c.v1.len() != s || c.v1.len() + c.v2.len() != h.n() || !proper {
                    return Err(format!("graph {i}: s {} vs brute {s}", c.s));
                }
                bipartite += 1;
            }
            (Err(_), None) => {}
            (got, want) => return Err(format!("graph {i}: {:?} vs brute {want:?}", got.map(|c| c.s))),
        }
    }
    Ok(format!("{bipartite} of {} graphs bipartite, all minimal", corpus.len()))
}

fn random_pair(rng: &mut ChaCha8Rng, a: usize, b: usize, keep: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).filter(|_| rng.gen_bool(keep)).collect();
    Graph::from_edges(a + b, edges).unwrap()
}

fn regularity() -> Outcome {
    // dyadic eps values are exact in binary, so p/q comparisons match
    let grid: [(i128, i128); 5] = [(1, 8), (1, 4), (3, 8), (1, 2), (3, 4)];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut corpus = 0;
    for i in 0..120 {
        let (na, nb) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let keep = rng.gen_range(0.1..0.95);
        let g = random_pair(&mut rng, na, nb, keep);
        let a: Vec<usize> = (0..na).collect();
        let b: Vec<usize> = (na..na + nb).collect();
        let mut prev = false;
        for &(p, q) in &grid {
            let eps = p as f64 / q as f64;
            let v = is_eps_regular_exact(&g, &a, &b, eps).map_err(|e| e.to_string())?;
            let swapped = is_eps_regular_exact(&g, &b, &a, eps).map_err(|e| e.to_string())?;
            if v.regular != common::regular_brute(&g, &a, &b, p, q) {
                return Err(format!("pair {i}, eps {eps}: exact checker disagrees with enumeration"));
            }
            if v.regular != swapped.regular {
                return Err(format!("pair {i}, eps {eps}: not symmetric"));
            }
            if prev && !v.regular {
                return Err(format!("pair {i}: regular below eps {eps} but not at it"));
            }
            if let Some(w) = &v.witness {
                if !common::witness_breaks(&g, &a, &b, &w.x, &w.y, p, q) {
                    return Err(format!("pair {i}, eps {eps}: witness does not break the bound"));
                }
            }
            prev = v.regular;
        }
        corpus += 1;
    }

    let mut refutations = 0;
    for i in 0..200u64 {
        let n = rng.gen_range(4..=14);
        let keep = rng.gen_range(0.2..0.9);
        let g = random_pair(&mut rng, n, n, keep);
        let a: Vec<usize> = (0..n).collect();
        let b: Vec<usize> = (n..2 * n).collect();
        let (p, q) = grid[i as usize % grid.len()];
        match is_eps_regular_sampled(&g, &a, &b, p as f64 / q as f64, 64, i).map_err(|e| e.to_string())? {
            SampledVerdict::Refuted(w) => {
                if !common::witness_breaks(&g, &a, &b, &w.x, &w.y, p, q) {
                    return Err(format!("sampled refutation {i} does not re-verify"));
                }
                refutations += 1;
            }
            SampledVerdict::Unrefuted => {}
        }
    }

    // eps = 2/5 with halves: eps' = max(eps / (1/2), 2 eps) = 4/5
    let mut premises = 0;
    for seed in 0..60u64 {
        let mut local = ChaCha8Rng::seed_from_u64(seed);
        let g = random_pair(&mut local, 12, 12, 0.8);
        let a: Vec<usize> = (0..12).collect();
        let b: Vec<usize> = (12..24).collect();
        let r = slicing_check(&g, &a, &b, 0.4, &a[..6], &b[..6]).map_err(|e| e.to_string())?;
        if !r.premise() {
            continue;
        }
        premises += 1;
        let child = common::regular_brute(&g, &a[..6], &b[..6], 4, 5);
        let e = g.cross_edge_count(&a, &b) as i128;
        let e_sub = g.cross_edge_count(&a[..6], &b[..6]) as i128;
        // |e_sub/36 - e/144| < 2/5
        let gap_ok = (e_sub * 4 - e).abs() * 5 < 2 * 144;
        if !(r.conclusion() && child && gap_ok) {
            return Err(format!("slicing sample {seed}: premise holds, conclusion fails"));
        }
    }
    if premises == 0 {
        return Err("no slicing sample met the premise".into());
    }
    Ok(format!(
        "{corpus} pairs x 5 eps exact, {refutations} sampled refutations re-verified, {premises} slicing premises"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("erdos-gallai exhaustive", erdos_gallai),
        ("complete bipartite tiling", lemma4),
        ("augmentation identity", augmentation_identity),
        ("f1 improvement gain", f1_gain),
        ("threshold consistency", thresholds),
        ("lower-bound non-containment", non_containment),
        ("matching oracle", matching_oracle),
        ("retiling bound and trace contract", retiling),
        ("color classes", color_classes_corpus),
        ("regularity checkers", regularity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
