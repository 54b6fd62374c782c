//! Tilings by bipartite patterns: the data model, color classes of a
//! pattern, the constructive tiling of `K_{a,b}`, exact and greedy maximum
//! tilings, and retiling through expansions.

mod complete;
mod retile;
mod search;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

pub use complete::{lemma4_counts, tile_complete_bipartite, uncovered_bound};
pub use retile::retile;
pub use search::{enumerate_copies, find_copy, is_maximal, max_tiling_exact, max_tiling_greedy, Budget, ExactTiling};

use crate::error::{Error, Result};
use crate::graph::{make_complete_bipartite, Graph};

/// A proper 2-coloring of a bipartite graph whose first class is as small
/// as possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClasses {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub s: usize,
    pub t: usize,
}

/// Colors each component by BFS and puts its smaller side into `V1`. For
/// balanced components the side holding the component's lowest vertex
/// goes to `V1`, which makes `V1` the lexicographically least minimizer.
/// Isolated vertices land in `V2`.
pub fn color_classes(h: &Graph) -> Result<ColorClasses> {
    let n = h.n();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut v1 = Vec::new();
    let mut v2 = Vec::new();
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut sides: [Vec<usize>; 2] = [vec![root], Vec::new()];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in h.neighbors(u) {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    parent[v] = u;
                    sides[color[v] as usize].push(v);
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return Err(Error::NotBipartite { walk: odd_walk(&parent, u, v) });
                }
            }
        }
        let [root_side, other] = sides;
        if root_side.len() <= other.len() {
            v1.extend(root_side);
            v2.extend(other);
        } else {
            v1.extend(other);
            v2.extend(root_side);
        }
    }
    v1.sort_unstable();
    v2.sort_unstable();
    Ok(ColorClasses { s: v1.len(), t: v2.len(), v1, v2 })
}

// Closed walk u -> ... -> lca -> ... -> v -> u through the BFS tree.
fn odd_walk(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let to_root = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = to_root(u);
    let pv = to_root(v);
    let lca = *pu.iter().find(|x| pv.contains(x)).expect("same component");
    let mut walk: Vec<usize> = pu.iter().copied().take_while(|&x| x != lca).collect();
    walk.push(lca);
    let back: Vec<usize> = pv.iter().copied().take_while(|&x| x != lca).collect();
    walk.extend(back.into_iter().rev());
    walk.push(u);
    walk
}

/// Whether `(a, b)` dominates `(s, t)`, i.e. `max(a,b)/min(a,b) <=
/// max(s,t)/min(s,t)`, decided by integer cross-multiplication.
pub fn dominates(a: usize, b: usize, s: usize, t: usize) -> Result<bool> {
    if a == 0 || b == 0 || s == 0 || t == 0 {
        return Err(Error::InvalidParameter(format!("domination needs positive sizes, got ({a}, {b}) vs ({s}, {t})")));
    }
    let (lo_ab, hi_ab) = (a.min(b) as u128, a.max(b) as u128);
    let (lo_st, hi_st) = (s.min(t) as u128, s.max(t) as u128);
    Ok(hi_ab * lo_st <= hi_st * lo_ab)
}

/// Covered-vertex count `x` of a maximum `H`-tiling given the covered
/// count `x'` for `H'`, where `H'` is `H` with its isolated vertices
/// removed: `x = min{ |H| floor(n/|H|), x' |H| / |H'| }`.
pub fn isolated_vertex_relation(order_h: usize, order_h_prime: usize, n: usize, x_prime: usize) -> Result<usize> {
    if order_h_prime == 0 || order_h_prime > order_h {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= |H'| <= |H|, got |H'| = {order_h_prime}, |H| = {order_h}"
        )));
    }
    if !x_prime.is_multiple_of(order_h_prime) {
        return Err(Error::InvalidParameter(format!("x' = {x_prime} is not a multiple of |H'| = {order_h_prime}")));
    }
    Ok((order_h * (n / order_h)).min(x_prime / order_h_prime * order_h))
}

/// A bipartite pattern without isolated vertices, with its minimizing
/// coloring fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    graph: Graph,
    classes: ColorClasses,
    complete: bool,
}

impl Pattern {
    pub fn new(graph: Graph) -> Result<Self> {
        let isolated = graph.isolated_vertices();
        if !isolated.is_empty() {
            return Err(Error::IsolatedVertices(isolated));
        }
        let classes = color_classes(&graph)?;
        let complete = graph.edge_count() == classes.s * classes.t;
        Ok(Pattern { graph, classes, complete })
    }

    /// `K_{s,t}` with `V1 = 0..s`.
    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self> {
        if s == 0 || s > t {
            return Err(Error::InvalidParameter(format!("need 1 <= s <= t, got s = {s}, t = {t}")));
        }
        Pattern::new(make_complete_bipartite(s, t))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn classes(&self) -> &ColorClasses {
        &self.classes
    }

    pub fn s(&self) -> usize {
        self.classes.s
    }

    pub fn t(&self) -> usize {
        self.classes.t
    }

    pub fn order(&self) -> usize {
        self.graph.n()
    }

    pub fn is_complete_bipartite(&self) -> bool {
        self.complete
    }

    pub fn tag(&self) -> TileTag {
        if self.complete {
            TileTag::Complete { small: self.s(), large: self.t() }
        } else {
            TileTag::Pattern
        }
    }
}

/// Which family member a tile is a copy of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TileTag {
    /// `K_{small,large}`; `K_2` is `Complete { small: 1, large: 1 }`.
    Complete { small: usize, large: usize },
    /// A general pattern `H`, carried with its embedding.
    Pattern,
}

impl fmt::Display for TileTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TileTag::Complete { small, large } => write!(f, "K{small},{large}"),
            TileTag::Pattern => write!(f, "H"),
        }
    }
}

impl FromStr for TileTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "H" {
            return Ok(TileTag::Pattern);
        }
        let bad = || Error::InvalidParameter(format!("bad tile tag {s:?}"));
        let (a, b) = s.strip_prefix('K').and_then(|r| r.split_once(',')).ok_or_else(bad)?;
        Ok(TileTag::Complete { small: a.parse().map_err(|_| bad())?, large: b.parse().map_err(|_| bad())? })
    }
}

/// One copy in a tiling: `v1` is the image of the small class, `v2` of
/// the large class. Both are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub tag: TileTag,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    /// For [`TileTag::Pattern`] tiles: host vertex of each pattern vertex.
    pub embedding: Option<Vec<usize>>,
}

impl Tile {
    pub fn complete(mut v1: Vec<usize>, mut v2: Vec<usize>) -> Self {
        v1.sort_unstable();
        v2.sort_unstable();
        Tile { tag: TileTag::Complete { small: v1.len(), large: v2.len() }, v1, v2, embedding: None }
    }

    pub fn from_embedding(pattern: &Pattern, embedding: Vec<usize>) -> Self {
        let image = |class: &[usize]| {
            let mut out: Vec<usize> = class.iter().map(|&h| embedding[h]).collect();
            out.sort_unstable();
            out
        };
        let v1 = image(&pattern.classes.v1);
        let v2 = image(&pattern.classes.v2);
        if pattern.complete {
            Tile::complete(v1, v2)
        } else {
            Tile { tag: TileTag::Pattern, v1, v2, embedding: Some(embedding) }
        }
    }

    pub fn order(&self) -> usize {
        self.v1.len() + self.v2.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.v1.iter().chain(&self.v2).copied()
    }

    /// Sorted vertex set.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.vertices().collect();
        all.sort_unstable();
        all
    }

    fn check(&self, g: &Graph, pattern: Option<&Pattern>) -> std::result::Result<(), String> {
        if let Some(v) = self.vertices().find(|&v| v >= g.n()) {
            return Err(format!("vertex {v} out of range"));
        }
        match self.tag {
            TileTag::Complete { small, large } => {
                if (self.v1.len(), self.v2.len()) != (small, large) {
                    return Err(format!(
                        "tile tagged {} has classes {} and {}",
                        self.tag,
                        self.v1.len(),
                        self.v2.len()
                    ));
                }
                for &u in &self.v1 {
                    if let Some(&v) = self.v2.iter().find(|&&v| !g.has_edge(u, v)) {
                        return Err(format!("missing edge ({u}, {v}) in {} tile", self.tag));
                    }
                }
            }
            TileTag::Pattern => {
                let pattern = pattern.ok_or("pattern tile without a pattern to check against")?;
                let emb = self.embedding.as_ref().ok_or("pattern tile without embedding")?;
                if emb.len() != pattern.order() {
                    return Err("embedding length differs from pattern order".into());
                }
                let rebuilt = Tile::from_embedding(pattern, emb.clone());
                if (rebuilt.v1.as_slice(), rebuilt.v2.as_slice()) != (self.v1.as_slice(), self.v2.as_slice()) {
                    return Err("embedding does not map the color classes onto v1/v2".into());
                }
                if let Some((a, b)) = pattern.graph.edges().find(|&(a, b)| !g.has_edge(emb[a], emb[b])) {
                    return Err(format!("pattern edge ({a}, {b}) not mapped onto a host edge"));
                }
            }
        }
        Ok(())
    }
}

/// Vertex-disjoint tiles. The size `|F|` is the number of covered vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tiling {
    pub tiles: Vec<Tile>,
}

impl Tiling {
    pub fn new(tiles: Vec<Tile>) -> Self {
        Tiling { tiles }
    }

    /// Number of covered vertices.
    pub fn size(&self) -> usize {
        self.tiles.iter().map(Tile::order).sum()
    }

    /// Number of tiles.
    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn covered(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.tiles.iter().flat_map(Tile::vertices).collect();
        all.sort_unstable();
        all
    }

    /// `V1(F)`, sorted.
    pub fn v1_union(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.tiles.iter().flat_map(|k| k.v1.iter().copied()).collect();
        all.sort_unstable();
        all
    }

    /// `V2(F)`, sorted.
    pub fn v2_union(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.tiles.iter().flat_map(|k| k.v2.iter().copied()).collect();
        all.sort_unstable();
        all
    }

    /// For each host vertex, the index of the tile covering it.
    pub fn owner_map(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, tile) in self.tiles.iter().enumerate() {
            for v in tile.vertices() {
                if v < n {
                    owner[v] = Some(i);
                }
            }
        }
        owner
    }

    /// Checks disjointness and that every tile is a copy of its tag in `g`.
    /// Pattern tiles need `pattern`.
    pub fn validate(&self, g: &Graph, pattern: Option<&Pattern>) -> Result<()> {
        let mut seen = vec![false; g.n()];
        for (i, tile) in self.tiles.iter().enumerate() {
            tile.check(g, pattern).map_err(|e| Error::InvalidTiling(format!("tile {i}: {e}")))?;
            for v in tile.vertices() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidTiling(format!("vertex {v} is covered twice")));
                }
            }
        }
        Ok(())
    }

    /// Checks that every tile is a `K_{s,t}` with the given orientation.
    pub fn validate_complete(&self, g: &Graph, s: usize, t: usize) -> Result<()> {
        self.validate(g, None)?;
        let want = TileTag::Complete { small: s, large: t };
        match self.tiles.iter().position(|k| k.tag != want) {
            Some(i) => Err(Error::InvalidTiling(format!("tile {i} is {}, expected {want}", self.tiles[i].tag))),
            None => Ok(()),
        }
    }

    /// One line per tile: `tag | v1: i j | v2: k l`.
    pub fn to_text(&self) -> String {
        let join = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        for tile in &self.tiles {
            out.push_str(&format!("{} | v1: {} | v2: {}\n", tile.tag, join(&tile.v1), join(&tile.v2)));
        }
        out
    }

    /// Parses [`Tiling::to_text`] output. Pattern tiles come back without
    /// their embedding.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut tiles = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let bad = || Error::Parse { line: i + 1, kind: crate::error::ParseErrorKind::MalformedLine };
            let mut parts = line.split(" | ");
            let tag: TileTag = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let mut class = |prefix: &str| -> Result<Vec<usize>> {
                let body = parts.next().and_then(|p| p.strip_prefix(prefix)).ok_or_else(bad)?;
                body.split_whitespace().map(|x| x.parse().map_err(|_| bad())).collect()
            };
            let v1 = class("v1:")?;
            let v2 = class("v2:")?;
            tiles.push(Tile { tag, v1, v2, embedding: None });
        }
        Ok(Tiling { tiles })
    }
}
