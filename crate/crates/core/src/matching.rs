//! Maximum-cardinality matchings: Hopcroft–Karp for bipartite hosts and
//! Edmonds' blossom contraction for general graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// A set of vertex-disjoint edges, stored as `(u, v)` with `u < v`,
/// sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Normalizes and sorts the edges. Disjointness is not checked here;
    /// see [`Matching::is_valid_in`].
    pub fn from_edges(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        Matching { edges }
    }

    fn from_mates(mate: &[usize]) -> Self {
        Matching::from_edges(mate.iter().enumerate().filter(|&(u, &v)| v != NONE && u < v).map(|(u, &v)| (u, v)))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Endpoints pairwise distinct and every edge present in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) || seen[u] || seen[v] {
                return false;
            }
            seen[u] = true;
            seen[v] = true;
        }
        true
    }
}

fn check_sides(g: &Graph, a: &[usize], b: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut side = vec![0u8; g.n()];
    for (mark, set) in [(1u8, a), (2u8, b)] {
        for &v in set {
            if v >= g.n() {
                return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
            }
            if side[v] != 0 {
                return Err(Error::InvalidParameter(format!("vertex {v} listed twice in the sides")));
            }
            side[v] = mark;
        }
    }
    for (u, v) in g.edges() {
        if side[u] != 0 && side[u] == side[v] {
            return Err(Error::InvalidParameter(format!("edge ({u}, {v}) lies inside one side of the bipartition")));
        }
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    Ok((a, b))
}

/// Maximum matching of `G[A, B]` by Hopcroft–Karp. Vertices outside
/// `A ∪ B` are ignored; an edge inside `A` or inside `B` is an error.
pub fn max_matching_bipartite(g: &Graph, a: &[usize], b: &[usize]) -> Result<Matching> {
    let (a, b) = check_sides(g, a, b)?;
    let mut b_index = vec![NONE; g.n()];
    for (j, &v) in b.iter().enumerate() {
        b_index[v] = j;
    }
    let adj: Vec<Vec<usize>> = a
        .iter()
        .map(|&u| g.neighbors(u).iter().filter_map(|&v| Some(b_index[v]).filter(|&j| j != NONE)).collect())
        .collect();

    let mut hk = HopcroftKarp::new(adj, b.len());
    hk.run();
    Ok(Matching::from_edges(hk.mate_a.iter().enumerate().filter(|&(_, &j)| j != NONE).map(|(i, &j)| (a[i], b[j]))))
}

struct HopcroftKarp {
    adj: Vec<Vec<usize>>,
    mate_a: Vec<usize>,
    mate_b: Vec<usize>,
    dist: Vec<usize>,
}

impl HopcroftKarp {
    fn new(adj: Vec<Vec<usize>>, nb: usize) -> Self {
        let na = adj.len();
        HopcroftKarp { adj, mate_a: vec![NONE; na], mate_b: vec![NONE; nb], dist: vec![NONE; na] }
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for (i, d) in self.dist.iter_mut().enumerate() {
            if self.mate_a[i] == NONE {
                *d = 0;
                queue.push_back(i);
            } else {
                *d = NONE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &j in &self.adj[u] {
                let w = self.mate_b[j];
                if w == NONE {
                    found = true;
                } else if self.dist[w] == NONE {
                    self.dist[w] = self.dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        for k in 0..self.adj[u].len() {
            let j = self.adj[u][k];
            let w = self.mate_b[j];
            if w == NONE || (self.dist[w] == self.dist[u] + 1 && self.dfs(w)) {
                self.mate_a[u] = j;
                self.mate_b[j] = u;
                return true;
            }
        }
        self.dist[u] = NONE;
        false
    }

    fn run(&mut self) {
        while self.bfs() {
            for u in 0..self.adj.len() {
                if self.mate_a[u] == NONE {
                    self.dfs(u);
                }
            }
        }
    }
}

/// Maximum-cardinality matching of an arbitrary graph (Edmonds).
pub fn max_matching_general(g: &Graph) -> Matching {
    let mut blossom = Blossom::new(g);
    blossom.greedy_start();
    for root in 0..g.n() {
        if blossom.mate[root] == NONE {
            if let Some(end) = blossom.find_augmenting_path(root) {
                blossom.augment(end);
            }
        }
    }
    Matching::from_mates(&blossom.mate)
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn greedy_start(&mut self) {
        for u in 0..self.g.n() {
            if self.mate[u] != NONE {
                continue;
            }
            if let Some(&v) = self.g.neighbors(u).iter().find(|&&v| self.mate[v] == NONE) {
                self.mate[u] = v;
                self.mate[v] = u;
            }
        }
    }

    fn lowest_common_ancestor(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // odd cycle: contract the blossom onto its base
                    let cur = self.lowest_common_ancestor(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut u: usize) {
        while u != NONE {
            let pv = self.parent[u];
            let ppv = self.mate[pv];
            self.mate[u] = pv;
            self.mate[pv] = u;
            u = ppv;
        }
    }
}

/// Result of the König-corollary check `e(G[A,B]) <= nu * max(|A|, |B|)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeBound {
    pub nu: usize,
    pub bound: usize,
    pub edges: usize,
    pub holds: bool,
}

pub fn matching_edge_bound(g: &Graph, a: &[usize], b: &[usize]) -> Result<EdgeBound> {
    let nu = max_matching_bipartite(g, a, b)?.len();
    let bound = nu * a.len().max(b.len());
    let edges = g.cross_edge_count(a, b);
    Ok(EdgeBound { nu, bound, edges, holds: edges <= bound })
}
