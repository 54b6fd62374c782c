//! Reference implementations used only by the integration tests. They
//! share no code with the library beyond the `Graph` container.

#![allow(dead_code)]

use tilinglab::graph::Graph;

pub fn adjacency(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect()
}

/// Matching number by recursion on the lowest alive vertex.
pub fn matching_number(adj: &[u64], alive: u64) -> usize {
    if alive == 0 {
        return 0;
    }
    let v = alive.trailing_zeros();
    let rest = alive & !(1u64 << v);
    let mut best = matching_number(adj, rest);
    let mut nbrs = adj[v as usize] & rest;
    let cap = (alive.count_ones() / 2) as usize;
    while nbrs != 0 && best < cap {
        let u = nbrs.trailing_zeros();
        nbrs &= nbrs - 1;
        best = best.max(1 + matching_number(adj, rest & !(1u64 << u)));
    }
    best
}

pub fn nu(g: &Graph) -> usize {
    assert!(g.n() < 64);
    matching_number(&adjacency(g), (1u64 << g.n()) - 1)
}

/// Maximum matching of a bipartite graph given as left-to-right adjacency
/// masks, by trying every assignment of left vertices.
pub fn bipartite_nu(left: &[u64]) -> usize {
    fn go(left: &[u64], used: u64) -> usize {
        let Some((&first, rest)) = left.split_first() else { return 0 };
        let mut best = go(rest, used);
        let mut free = first & !used;
        while free != 0 {
            let r = free.trailing_zeros();
            free &= free - 1;
            best = best.max(1 + go(rest, used | 1 << r));
        }
        best
    }
    go(left, 0)
}

pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `max{(l-1)(n-l+1) + C(l-1,2), C(2l-1,2)}`.
pub fn erdos_gallai(n: u64, l: u64) -> u64 {
    ((l - 1) * (n - l + 1) + binom2(l - 1)).max(binom2(2 * l - 1))
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `max{2 sa (1 - sa/2), a^2}` with `sa = sigma alpha`, `sigma = s/(s+t)`.
pub fn threshold(s: usize, t: usize, alpha: f64) -> f64 {
    let g = gcd(s, t);
    let sigma = (s / g) as f64 / ((s + t) / g) as f64;
    let sa = sigma * alpha;
    (2.0 * sa * (1.0 - sa / 2.0)).max(alpha * alpha)
}

pub fn m_edges(n: u64, x: u64) -> u64 {
    x * (n - x) + binom2(x)
}

pub fn l_edges(x: u64) -> u64 {
    binom2(x)
}

/// `max(a,b)/min(a,b) <= max(s,t)/min(s,t)` by cross-multiplication.
pub fn dominates(a: usize, b: usize, s: usize, t: usize) -> bool {
    a.max(b) * s.min(t) <= t.max(s) * a.min(b)
}

pub fn uncovered_cap(s: usize, t: usize) -> usize {
    if s < t {
        2 * (s + t - 1)
    } else {
        2 * (s - 1)
    }
}

/// Checks that the blocks are pairwise disjoint, in range, and that each
/// `(v1, v2)` spans a complete bipartite subgraph of `g`. Returns the
/// number of covered vertices.
pub fn check_complete_blocks(g: &Graph, blocks: &[(&[usize], &[usize])]) -> Result<usize, String> {
    let mut seen = vec![false; g.n()];
    let mut covered = 0;
    for (i, (v1, v2)) in blocks.iter().enumerate() {
        for &v in v1.iter().chain(v2.iter()) {
            if v >= g.n() || seen[v] {
                return Err(format!("block {i} reuses or overruns vertex {v}"));
            }
            seen[v] = true;
            covered += 1;
        }
        for &u in v1.iter() {
            for &w in v2.iter() {
                if !g.has_edge(u, w) {
                    return Err(format!("block {i} misses edge {u}-{w}"));
                }
            }
        }
    }
    Ok(covered)
}

/// Smallest first class over all proper 2-colorings, `None` when `h` has
/// an odd cycle.
pub fn min_color_class(h: &Graph) -> Option<usize> {
    let edges: Vec<(usize, usize)> = h.edges().collect();
    let mut best: Option<usize> = None;
    for mask in 0u32..1 << h.n() {
        if edges.iter().all(|&(u, v)| (mask >> u) & 1 != (mask >> v) & 1) {
            let k = mask.count_ones() as usize;
            best = Some(best.map_or(k, |b| b.min(k)));
        }
    }
    best
}

/// `|d(X,Y) - d(A,B)| < p/q` for every `X ⊆ A`, `Y ⊆ B` with
/// `|X| > (p/q)|A|` and `|Y| > (p/q)|B|`, over all subset pairs.
pub fn regular_brute(g: &Graph, a: &[usize], b: &[usize], p: i128, q: i128) -> bool {
    let (na, nb) = (a.len() as i128, b.len() as i128);
    let e = g.cross_edge_count(a, b) as i128;
    let adj = adjacency(g);
    let bmask_of = |y: u32| -> u64 { (0..b.len()).filter(|j| y >> j & 1 == 1).fold(0, |m, j| m | 1 << b[j]) };
    for xm in 1u32..1 << a.len() {
        let xs = xm.count_ones() as i128;
        if xs * q <= p * na {
            continue;
        }
        for ym in 1u32..1 << b.len() {
            let ys = ym.count_ones() as i128;
            if ys * q <= p * nb {
                continue;
            }
            let bm = bmask_of(ym);
            let exy: i128 =
                (0..a.len()).filter(|i| xm >> i & 1 == 1).map(|i| (adj[a[i]] & bm).count_ones() as i128).sum();
            // |exy/(xs ys) - e/(na nb)| < p/q
            let diff = (exy * na * nb - e * xs * ys).abs();
            if diff * q >= p * xs * ys * na * nb {
                return false;
            }
        }
    }
    true
}

/// `|e(X,Y)/(|X||Y|) - e(A,B)/(|A||B|)| >= p/q` with both subsets large.
pub fn witness_breaks(g: &Graph, a: &[usize], b: &[usize], x: &[usize], y: &[usize], p: i128, q: i128) -> bool {
    let (na, nb, xs, ys) = (a.len() as i128, b.len() as i128, x.len() as i128, y.len() as i128);
    let inside = |s: &[usize], of: &[usize]| s.iter().all(|v| of.contains(v));
    let mut distinct = x.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut ydistinct = y.to_vec();
    ydistinct.sort_unstable();
    ydistinct.dedup();
    if distinct.len() != x.len() || ydistinct.len() != y.len() || !inside(x, a) || !inside(y, b) {
        return false;
    }
    if xs * q <= p * na || ys * q <= p * nb {
        return false;
    }
    let e = g.cross_edge_count(a, b) as i128;
    let exy = g.cross_edge_count(x, y) as i128;
    (exy * na * nb - e * xs * ys).abs() * q >= p * xs * ys * na * nb
}
