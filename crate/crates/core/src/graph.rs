//! Simple undirected graphs on dense vertex ids `0..n`, the extremal
//! constructions `M(n, x)` and `L(n, x)`, r-expansions, and the edge-list
//! text format.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, ParseErrorKind, Result};

/// Default cap on the vertex count of constructed graphs.
pub const DEFAULT_MAX_N: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "TILINGLAB_MAX_N";

const DENSE_LIMIT: usize = 4096;

/// The active vertex cap: `TILINGLAB_MAX_N` if set to a valid number,
/// otherwise [`DEFAULT_MAX_N`].
pub fn capacity_cap() -> usize {
    std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_N)
}

/// Fails with [`Error::Capacity`] when `requested` exceeds [`capacity_cap`].
pub fn check_capacity(requested: usize) -> Result<()> {
    let cap = capacity_cap();
    if requested > cap {
        return Err(Error::Capacity { requested, cap });
    }
    Ok(())
}

#[derive(Debug, Clone)]
enum Membership {
    Dense { words: usize, bits: Vec<u64> },
    Hashed(HashSet<u64>),
}

impl Membership {
    fn build(n: usize, adj: &[Vec<usize>]) -> Self {
        if n <= DENSE_LIMIT {
            let words = n.div_ceil(64);
            let mut bits = vec![0u64; words * n];
            for (u, nbrs) in adj.iter().enumerate() {
                for &v in nbrs {
                    bits[u * words + v / 64] |= 1 << (v % 64);
                }
            }
            Membership::Dense { words, bits }
        } else {
            let mut set = HashSet::new();
            for (u, nbrs) in adj.iter().enumerate() {
                for &v in nbrs {
                    if u < v {
                        set.insert(pair_key(u, v));
                    }
                }
            }
            Membership::Hashed(set)
        }
    }

    fn contains(&self, u: usize, v: usize) -> bool {
        match self {
            Membership::Dense { words, bits } => bits[u * words + v / 64] >> (v % 64) & 1 == 1,
            Membership::Hashed(set) => set.contains(&pair_key(u.min(v), u.max(v))),
        }
    }
}

fn pair_key(u: usize, v: usize) -> u64 {
    ((u as u64) << 32) | v as u64
}

/// A simple undirected graph. Immutable once built.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<usize>>,
    membership: Membership,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list, rejecting loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            if !seen.insert(pair_key(u.min(v), u.max(v))) {
                return Err(Error::InvalidParameter(format!("duplicate edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    // Adjacency must be symmetric and loop-free; lists get sorted here.
    fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let n = adj.len();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let membership = Membership::build(n, &adj);
        Graph { n, m, adj, membership }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && u != v && self.membership.contains(u, v)
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Applies the vertex relabeling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "relabeling has length {} but the graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Vertex-disjoint union; `other` is shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|nbrs| nbrs.iter().map(|&v| v + shift).collect::<Vec<_>>()));
        Graph::from_adjacency(adj)
    }

    /// Number of edges with one endpoint in `a` and the other in `b`.
    /// Assumes the sets are disjoint.
    pub fn cross_edge_count(&self, a: &[usize], b: &[usize]) -> usize {
        a.iter().map(|&u| b.iter().filter(|&&v| self.has_edge(u, v)).count()).sum()
    }
}

/// `K_{a,b}` with side A = `0..a` and side B = `a..a+b`.
pub fn make_complete_bipartite(a: usize, b: usize) -> Graph {
    let mut adj = vec![Vec::new(); a + b];
    for u in 0..a {
        for v in a..a + b {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    Graph::from_adjacency(adj)
}

/// `K_n`.
pub fn make_complete(n: usize) -> Graph {
    make_m(n, n).expect("x = n is always in range")
}

/// `M(n, x)`: a clique on `0..x` joined completely to an independent set
/// on `x..n`.
pub fn make_m(n: usize, x: usize) -> Result<Graph> {
    if x > n {
        return Err(Error::InvalidParameter(format!("M(n, x) needs x <= n, got x = {x}, n = {n}")));
    }
    check_capacity(n)?;
    let mut adj = vec![Vec::new(); n];
    for u in 0..x {
        for v in u + 1..n {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// `L(n, x)`: a clique on `0..x` plus `n - x` isolated vertices.
pub fn make_l(n: usize, x: usize) -> Result<Graph> {
    if x > n {
        return Err(Error::InvalidParameter(format!("L(n, x) needs x <= n, got x = {x}, n = {n}")));
    }
    check_capacity(n)?;
    let mut adj = vec![Vec::new(); n];
    for u in 0..x {
        for v in u + 1..x {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Closed-form `e(M(n, x)) = x(n - x) + C(x, 2)`.
pub fn m_edge_count(n: u64, x: u64) -> u64 {
    x * (n - x) + x * x.saturating_sub(1) / 2
}

/// Closed-form `e(L(n, x)) = C(x, 2)`.
pub fn l_edge_count(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn make_path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    Graph::from_adjacency(adj)
}

/// Projection from an r-expansion back to its base graph. Copy `j` of
/// base vertex `v` has id `v * r + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionMap {
    pub base_n: usize,
    pub r: usize,
}

impl ExpansionMap {
    pub fn expanded_id(&self, v: usize, copy: usize) -> usize {
        debug_assert!(v < self.base_n && copy < self.r);
        v * self.r + copy
    }

    pub fn project(&self, id: usize) -> usize {
        id / self.r
    }

    /// All expanded ids over base vertex `v`.
    pub fn fiber(&self, v: usize) -> std::ops::Range<usize> {
        v * self.r..(v + 1) * self.r
    }

    /// Lifts a vertex list to the union of its fibers, ascending when the
    /// input is ascending.
    pub fn lift(&self, vertices: &[usize]) -> Vec<usize> {
        vertices.iter().flat_map(|&v| self.fiber(v)).collect()
    }
}

/// The r-expansion: each vertex becomes `r` independent copies and each
/// edge a complete bipartite graph between the copy sets.
pub fn expand(g: &Graph, r: usize) -> Result<(Graph, ExpansionMap)> {
    if r == 0 {
        return Err(Error::InvalidParameter("expansion factor must be at least 1".into()));
    }
    let requested = g.n().checked_mul(r).ok_or(Error::Capacity { requested: usize::MAX, cap: capacity_cap() })?;
    check_capacity(requested)?;
    let map = ExpansionMap { base_n: g.n(), r };
    let mut adj = Vec::with_capacity(requested);
    for u in 0..g.n() {
        let lifted = map.lift(g.neighbors(u));
        for _ in 0..r {
            adj.push(lifted.clone());
        }
    }
    Ok((Graph::from_adjacency(adj), map))
}

/// Uniform random graph with exactly `m` edges, deterministic in `seed`.
pub fn random_graph_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    check_capacity(n)?;
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(Error::InvalidParameter(format!(
            "m = {m} exceeds the {total} vertex pairs of an {n}-vertex graph"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, total, m).into_vec();
    picked.sort_unstable();
    Graph::from_edges(n, picked.into_iter().map(|k| pair_from_index(n, k)))
}

// Inverse of the lexicographic enumeration of pairs u < v.
fn pair_from_index(n: usize, k: usize) -> (usize, usize) {
    // offset(u) = number of pairs whose first element is < u
    let offset = |u: usize| u * (2 * n - u - 1) / 2;
    let (mut lo, mut hi) = (0, n - 1);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if offset(mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, lo + 1 + (k - offset(lo)))
}

/// Canonical edge-list text: header `n m`, then one `u v` line per edge
/// with `u < v` in lexicographic order, every line LF-terminated.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn parse_pair(line: &str, lineno: usize, kind: ParseErrorKind) -> Result<(usize, usize)> {
    let err = || Error::Parse { line: lineno, kind: kind.clone() };
    if line.starts_with(' ') || line.ends_with(' ') || line.ends_with('\r') {
        return Err(Error::Parse { line: lineno, kind: ParseErrorKind::TrailingWhitespace });
    }
    let mut parts = line.split(' ');
    let a = parts.next().ok_or_else(err)?;
    let b = parts.next().ok_or_else(err)?;
    if parts.next().is_some() {
        return Err(err());
    }
    Ok((parse_number(a).ok_or_else(err)?, parse_number(b).ok_or_else(err)?))
}

fn parse_number(tok: &str) -> Option<usize> {
    let canonical = !tok.is_empty() && tok.bytes().all(|c| c.is_ascii_digit()) && (tok == "0" || !tok.starts_with('0'));
    if canonical {
        tok.parse().ok()
    } else {
        None
    }
}

/// Parses the edge-list format written by [`write_edge_list`]. The final
/// newline is optional. Errors carry 1-based line numbers.
pub fn read_edge_list(text: &str) -> Result<Graph> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or("");
    let (n, m) = parse_pair(header, 1, ParseErrorKind::MalformedHeader)?;
    check_capacity(n)?;

    let mut adj = vec![Vec::new(); n];
    let mut prev: Option<(usize, usize)> = None;
    let mut found = 0;
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let (u, v) = parse_pair(line, lineno, ParseErrorKind::MalformedLine)?;
        let fail = |kind| Err(Error::Parse { line: lineno, kind });
        if u == v {
            return fail(ParseErrorKind::Loop);
        }
        for endpoint in [u, v] {
            if endpoint >= n {
                return fail(ParseErrorKind::EndpointOutOfRange { endpoint, n });
            }
        }
        if u > v {
            return fail(ParseErrorKind::Unsorted);
        }
        if let Some(p) = prev {
            if p == (u, v) {
                return fail(ParseErrorKind::DuplicateEdge);
            }
            if p > (u, v) {
                return fail(ParseErrorKind::Unsorted);
            }
        }
        prev = Some((u, v));
        adj[u].push(v);
        adj[v].push(u);
        found += 1;
    }
    if found != m {
        return Err(Error::Parse { line: found + 2, kind: ParseErrorKind::EdgeCountMismatch { declared: m, found } });
    }
    Ok(Graph::from_adjacency(adj))
}
