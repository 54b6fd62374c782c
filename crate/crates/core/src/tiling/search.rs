use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Pattern, Tile, Tiling};
use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::graph::Graph;

const MEMO_LIMIT: usize = 1 << 21;

/// Limits for [`max_tiling_exact`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of distinct copies to enumerate.
    pub copy_cap: usize,
    /// Maximum number of search nodes before giving up on optimality.
    pub node_limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { copy_cap: 200_000, node_limit: 20_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTiling {
    pub tiling: Tiling,
    /// False when the node budget ran out; `tiling` is then the best found.
    pub optimal: bool,
    pub nodes: u64,
}

// BFS order from `start`, then the remaining components from their lowest
// vertex, so every vertex after a component's first has an earlier
// neighbour.
fn search_order(h: &Graph, start: usize) -> Vec<usize> {
    let mut seen = vec![false; h.n()];
    let mut order = Vec::with_capacity(h.n());
    for root in std::iter::once(start).chain(0..h.n()) {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in h.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

/// Backtracking subgraph-monomorphism search for the pattern in the host.
struct Embedder<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    available: Option<&'a [bool]>,
    anchor: Option<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Embedder<'a> {
    fn new(
        host: &'a Graph,
        pattern: &'a Graph,
        start: usize,
        available: Option<&'a [bool]>,
        anchor: Option<usize>,
    ) -> Self {
        let order = search_order(pattern, start);
        let mut position = vec![0; pattern.n()];
        for (i, &h) in order.iter().enumerate() {
            position[h] = i;
        }
        let earlier = order
            .iter()
            .enumerate()
            .map(|(i, &h)| pattern.neighbors(h).iter().copied().filter(|&x| position[x] < i).collect())
            .collect();
        Embedder {
            host,
            pattern,
            order,
            earlier,
            available,
            anchor,
            image: vec![usize::MAX; pattern.n()],
            used: vec![false; host.n()],
        }
    }

    fn fits(&self, depth: usize, v: usize) -> bool {
        let h = self.order[depth];
        !self.used[v]
            && self.available.is_none_or(|a| a[v])
            && self.host.degree(v) >= self.pattern.degree(h)
            && self.earlier[depth].iter().all(|&x| self.host.has_edge(self.image[x], v))
    }

    /// Calls `visit` on every embedding until it returns `false`. Returns
    /// `false` if stopped early.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.image);
        }
        let h = self.order[depth];
        let candidates: Vec<usize> = match (depth, self.anchor, self.earlier[depth].first()) {
            (0, Some(a), _) => vec![a],
            (_, _, Some(&p)) => self.host.neighbors(self.image[p]).to_vec(),
            _ => (0..self.host.n()).collect(),
        };
        for v in candidates {
            if !self.fits(depth, v) {
                continue;
            }
            self.image[h] = v;
            self.used[v] = true;
            let go_on = self.run(depth + 1, visit);
            self.used[v] = false;
            self.image[h] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn busiest_vertex(h: &Graph) -> usize {
    (0..h.n()).max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v))).unwrap_or(0)
}

/// All copies of the pattern in `g`, one per distinct vertex set, sorted by
/// their sorted vertex lists. Fails once more than `cap` copies exist.
pub fn enumerate_copies(g: &Graph, p: &Pattern, cap: usize) -> Result<Vec<Tile>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut overflow = false;
    let mut push = |tile: Tile| -> bool {
        if seen.insert(tile.vertex_set()) {
            if out.len() == cap {
                overflow = true;
                return false;
            }
            out.push(tile);
        }
        true
    };

    if p.is_complete_bipartite() {
        let mut v1 = Vec::new();
        complete_copies(g, p.s(), p.t(), 0, &mut v1, &[], &mut push);
    } else if p.order() > 0 {
        let mut emb = Embedder::new(g, p.graph(), busiest_vertex(p.graph()), None, None);
        emb.run(0, &mut |image| push(Tile::from_embedding(p, image.to_vec())));
    }
    if overflow {
        return Err(Error::CopyCapExceeded { cap });
    }
    out.sort_by_cached_key(Tile::vertex_set);
    Ok(out)
}

// Chooses the s-side in increasing order, keeping the common
// neighbourhood; prunes once fewer than t common neighbours remain.
fn complete_copies(
    g: &Graph,
    s: usize,
    t: usize,
    from: usize,
    v1: &mut Vec<usize>,
    common: &[usize],
    emit: &mut dyn FnMut(Tile) -> bool,
) -> bool {
    if v1.len() == s {
        let mut pick = Vec::with_capacity(t);
        return combinations(common, t, 0, &mut pick, &mut |v2| emit(Tile::complete(v1.clone(), v2.to_vec())));
    }
    for v in from..g.n() {
        if g.degree(v) < t {
            continue;
        }
        let next: Vec<usize> = if v1.is_empty() {
            g.neighbors(v).to_vec()
        } else {
            common.iter().copied().filter(|&w| g.has_edge(v, w)).collect()
        };
        if next.len() < t {
            continue;
        }
        v1.push(v);
        let go_on = complete_copies(g, s, t, v + 1, v1, &next, emit);
        v1.pop();
        if !go_on {
            return false;
        }
    }
    true
}

fn combinations(
    items: &[usize],
    k: usize,
    from: usize,
    pick: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if pick.len() == k {
        return f(pick);
    }
    let need = k - pick.len();
    for i in from..items.len() {
        if items.len() - i < need {
            break;
        }
        pick.push(items[i]);
        let go_on = combinations(items, k, i + 1, pick, f);
        pick.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Finds one copy of the pattern using only `available` vertices, through
/// `anchor` when given.
pub fn find_copy(g: &Graph, p: &Pattern, available: &[bool], anchor: Option<usize>) -> Option<Tile> {
    let starts: Vec<usize> = match anchor {
        Some(a) if !available[a] => return None,
        Some(_) => (0..p.order()).collect(),
        None => vec![busiest_vertex(p.graph())],
    };
    for start in starts {
        let mut found = None;
        let mut emb = Embedder::new(g, p.graph(), start, Some(available), anchor);
        emb.run(0, &mut |image| {
            found = Some(image.to_vec());
            false
        });
        if let Some(image) = found {
            return Some(Tile::from_embedding(p, image));
        }
    }
    None
}

/// True when no copy of the pattern fits in the uncovered vertices.
pub fn is_maximal(g: &Graph, p: &Pattern, tiling: &Tiling) -> bool {
    let mut available = vec![true; g.n()];
    for v in tiling.covered() {
        available[v] = false;
    }
    find_copy(g, p, &available, None).is_none()
}

/// Maximal (not maximum) tiling: visits vertices in a seeded random order
/// and extracts any copy through each still-uncovered vertex.
pub fn max_tiling_greedy(g: &Graph, p: &Pattern, seed: u64) -> Tiling {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut available = vec![true; g.n()];
    let mut tiles = Vec::new();
    for v in order {
        if !available[v] {
            continue;
        }
        if let Some(tile) = find_copy(g, p, &available, Some(v)) {
            for u in tile.vertices() {
                available[u] = false;
            }
            tiles.push(tile);
        }
    }
    Tiling::new(tiles)
}

/// Maximum tiling by branch and bound over the enumerated copies: branch
/// on the lowest vertex still coverable, trying its copies in
/// lexicographic order and then leaving it uncovered. The bound is
/// `floor(coverable / |H|)`; residual states already reached with at least
/// as many tiles are cut.
pub fn max_tiling_exact(g: &Graph, p: &Pattern, budget: Budget) -> Result<ExactTiling> {
    let copies = enumerate_copies(g, p, budget.copy_cap)?;
    let sets: Vec<Bitset> = copies.iter().map(|c| Bitset::from_slice(g.n(), &c.vertex_set())).collect();
    let mut search = PackingSearch {
        sets: &sets,
        n: g.n(),
        order: p.order().max(1),
        limit: budget.node_limit,
        nodes: 0,
        exhausted: false,
        best: Vec::new(),
        chosen: Vec::new(),
        memo: HashMap::new(),
        ceiling: 0,
    };
    search.run();
    let tiling = Tiling::new(search.best.iter().map(|&i| copies[i].clone()).collect());
    Ok(ExactTiling { tiling, optimal: !search.exhausted, nodes: search.nodes })
}

struct PackingSearch<'a> {
    sets: &'a [Bitset],
    n: usize,
    order: usize,
    limit: u64,
    nodes: u64,
    exhausted: bool,
    best: Vec<usize>,
    chosen: Vec<usize>,
    memo: HashMap<Bitset, usize>,
    ceiling: usize,
}

impl PackingSearch<'_> {
    fn run(&mut self) {
        let all: Vec<usize> = (0..self.sets.len()).collect();
        self.ceiling = self.union(&all).count() / self.order;

        // first-fit incumbent in lexicographic order
        let mut taken = Bitset::new(self.n);
        for (i, set) in self.sets.iter().enumerate() {
            if !set.intersects(&taken) {
                taken.union_with(set);
                self.best.push(i);
            }
        }
        self.dfs(&all);
    }

    fn union(&self, avail: &[usize]) -> Bitset {
        let mut u = Bitset::new(self.n);
        for &c in avail {
            u.union_with(&self.sets[c]);
        }
        u
    }

    fn finished(&self) -> bool {
        self.exhausted || self.best.len() >= self.ceiling
    }

    fn dfs(&mut self, avail: &[usize]) {
        if self.finished() {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            self.exhausted = true;
            return;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if avail.is_empty() {
            return;
        }
        let union = self.union(avail);
        if self.chosen.len() + union.count() / self.order <= self.best.len() {
            return;
        }
        let full = self.memo.len() >= MEMO_LIMIT;
        match self.memo.get_mut(&union) {
            Some(seen) if *seen >= self.chosen.len() => return,
            Some(seen) => *seen = self.chosen.len(),
            None if !full => {
                self.memo.insert(union.clone(), self.chosen.len());
            }
            None => {}
        }

        let sets = self.sets;
        let v = union.first().expect("nonempty union");
        for &c in avail.iter().filter(|&&c| sets[c].contains(v)) {
            let next: Vec<usize> = avail.iter().copied().filter(|&d| !sets[d].intersects(&sets[c])).collect();
            self.chosen.push(c);
            self.dfs(&next);
            self.chosen.pop();
            if self.finished() {
                return;
            }
        }
        let next: Vec<usize> = avail.iter().copied().filter(|&d| !sets[d].contains(v)).collect();
        self.dfs(&next);
    }
}
