//! Browser front end for three operations of the tilinglab core: the
//! threshold curve, tiling a small generated graph, and the near-perfect
//! tiling of a complete bipartite graph. The plain functions are usable
//! from Rust; the `#[wasm_bindgen]` wrappers turn their errors into
//! `JsError`s.

use tilinglab::graph::{make_complete_bipartite, make_l, make_m, random_graph_gnm, Graph};
use tilinglab::thresholds::{crossover_alpha, threshold_branches};
use tilinglab::tiling::{
    max_tiling_exact, max_tiling_greedy, tile_complete_bipartite, uncovered_bound, Budget, Pattern, Tiling,
};
use wasm_bindgen::prelude::*;

/// Largest graph the page will tile.
pub const MAX_DEMO_N: usize = 40;

/// Larger budgets would freeze the tab.
const DEMO_BUDGET: Budget = Budget { copy_cap: 50_000, node_limit: 2_000_000 };

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    alphas: Vec<f64>,
    m_branch: Vec<f64>,
    l_branch: Vec<f64>,
    crossover: f64,
}

#[wasm_bindgen]
impl Curve {
    pub fn alphas(&self) -> Vec<f64> {
        self.alphas.clone()
    }

    pub fn m_branch(&self) -> Vec<f64> {
        self.m_branch.clone()
    }

    pub fn l_branch(&self) -> Vec<f64> {
        self.l_branch.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn crossover(&self) -> f64 {
        self.crossover
    }
}

/// Both branches of `T_{s,t}` at `samples` evenly spaced points of `(0, 1)`.
pub fn curve(s: usize, t: usize, samples: usize) -> Result<Curve, String> {
    if !(2..=2000).contains(&samples) {
        return Err(format!("samples must be in 2..=2000, got {samples}"));
    }
    let crossover = crossover_alpha(s, t).map_err(|e| e.to_string())?;
    let alphas: Vec<f64> = (1..=samples).map(|i| i as f64 / (samples + 1) as f64).collect();
    let (m_branch, l_branch) = alphas.iter().map(|&a| threshold_branches(s, t, a)).unzip();
    Ok(Curve { alphas, m_branch, l_branch, crossover })
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Tiled {
    n: usize,
    edges: Vec<u32>,
    owner: Vec<i32>,
    side: Vec<u8>,
    tiles: usize,
    optimal: bool,
}

#[wasm_bindgen]
impl Tiled {
    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge endpoints, two entries per edge.
    pub fn edges(&self) -> Vec<u32> {
        self.edges.clone()
    }

    /// Tile index of each vertex, `-1` when uncovered.
    pub fn owner(&self) -> Vec<i32> {
        self.owner.clone()
    }

    /// `1` for the smaller class of its tile, `2` for the larger, `0` when
    /// uncovered.
    pub fn side(&self) -> Vec<u8> {
        self.side.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn tiles(&self) -> usize {
        self.tiles
    }

    #[wasm_bindgen(getter)]
    pub fn covered(&self) -> usize {
        self.owner.iter().filter(|&&o| o >= 0).count()
    }

    /// False when the search gave up and the count is only a lower bound.
    #[wasm_bindgen(getter)]
    pub fn optimal(&self) -> bool {
        self.optimal
    }
}

fn view(g: &Graph, f: &Tiling, optimal: bool, with_edges: bool) -> Tiled {
    let mut owner = vec![-1; g.n()];
    let mut side = vec![0; g.n()];
    for (i, tile) in f.tiles.iter().enumerate() {
        for &v in &tile.v1 {
            owner[v] = i as i32;
            side[v] = 1;
        }
        for &v in &tile.v2 {
            owner[v] = i as i32;
            side[v] = 2;
        }
    }
    let edges = if with_edges { g.edges().flat_map(|(u, v)| [u as u32, v as u32]).collect() } else { Vec::new() };
    Tiled { n: g.n(), edges, owner, side, tiles: f.len(), optimal }
}

/// Builds `M(n, param)`, `L(n, param)` or a random graph with `param`
/// edges, and tiles it with `K_{s,t}`: exactly when the search fits the
/// demo budget, greedily otherwise.
pub fn tile_graph(kind: &str, n: usize, param: usize, s: usize, t: usize, seed: u64) -> Result<Tiled, String> {
    if n > MAX_DEMO_N {
        return Err(format!("the demo tiles graphs with at most {MAX_DEMO_N} vertices"));
    }
    let g = match kind {
        "m" => make_m(n, param),
        "l" => make_l(n, param),
        "gnm" => random_graph_gnm(n, param, seed),
        _ => return Err(format!("unknown graph kind {kind:?}")),
    }
    .map_err(|e| e.to_string())?;
    let pattern = Pattern::complete_bipartite(s, t).map_err(|e| e.to_string())?;
    match max_tiling_exact(&g, &pattern, DEMO_BUDGET) {
        Ok(found) => Ok(view(&g, &found.tiling, found.optimal, true)),
        Err(_) => Ok(view(&g, &max_tiling_greedy(&g, &pattern, seed), false, true)),
    }
}

/// The constructive near-perfect `K_{s,t}`-tiling of `K_{a,b}`. Edges are
/// left out; the page draws the two sides as columns.
pub fn tile_kab(a: usize, b: usize, s: usize, t: usize) -> Result<Tiled, String> {
    if a + b > 400 {
        return Err("a + b must be at most 400".into());
    }
    let f = tile_complete_bipartite(a, b, s, t).map_err(|e| e.to_string())?;
    Ok(view(&make_complete_bipartite(a, b), &f, true, false))
}

#[wasm_bindgen(js_name = thresholdCurve)]
pub fn threshold_curve_js(s: usize, t: usize, samples: usize) -> Result<Curve, JsError> {
    curve(s, t, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = tileGraph)]
pub fn tile_graph_js(kind: &str, n: usize, param: usize, s: usize, t: usize, seed: u32) -> Result<Tiled, JsError> {
    tile_graph(kind, n, param, s, t, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = tileCompleteBipartite)]
pub fn tile_kab_js(a: usize, b: usize, s: usize, t: usize) -> Result<Tiled, JsError> {
    tile_kab(a, b, s, t).map_err(|e| JsError::new(&e))
}

/// Vertices left uncovered in the worst case by [`tile_kab`].
#[wasm_bindgen(js_name = uncoveredBound)]
pub fn uncovered_bound_js(s: usize, t: usize) -> usize {
    uncovered_bound(s, t)
}
