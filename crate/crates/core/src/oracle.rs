//! Brute-force references for desk-scale verification. Everything here is
//! exponential and written for clarity, not speed.

use crate::graph::Graph;

/// Maximum matching size by recursion on the lowest live vertex.
/// Needs `n <= 64`.
pub fn brute_matching_number(g: &Graph) -> usize {
    assert!(g.n() <= 64, "brute matching needs n <= 64");
    let adj: Vec<u64> = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
    nu_masked(&adj, if g.n() == 64 { u64::MAX } else { (1 << g.n()) - 1 })
}

fn nu_masked(adj: &[u64], alive: u64) -> usize {
    if alive == 0 {
        return 0;
    }
    let v = alive.trailing_zeros() as usize;
    let rest = alive & !(1 << v);
    let mut best = nu_masked(adj, rest);
    let mut partners = adj[v] & rest;
    while partners != 0 {
        let u = partners.trailing_zeros();
        partners &= partners - 1;
        best = best.max(1 + nu_masked(adj, rest & !(1 << u)));
        if best == (alive.count_ones() / 2) as usize {
            break;
        }
    }
    best
}

/// Vertex pairs of `K_n` in the order used by edge masks: `(0,1), (0,2),
/// ..., (n-2, n-1)`.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// For every labeled graph on `n` vertices, records its edge count under
/// its matching number. Entry `k` of the result is the largest edge count
/// of a graph with matching number exactly `k`.
pub fn max_edges_by_matching_number(n: usize) -> Vec<u64> {
    assert!(n <= 8, "exhaustive scan needs n <= 8");
    let pairs = pair_list(n);
    let mut best = vec![0u64; n / 2 + 1];
    for mask in 0u64..1 << pairs.len() {
        let mut adj = vec![0u64; n];
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (u, v) = pairs[i];
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let nu = nu_masked(&adj, (1 << n) - 1);
        best[nu] = best[nu].max(mask.count_ones() as u64);
    }
    best
}

/// Largest edge count of an `n`-vertex graph with no `l` independent
/// edges, read off [`max_edges_by_matching_number`].
pub fn brute_ex_matching(table: &[u64], l: usize) -> u64 {
    table[..l.min(table.len())].iter().copied().max().unwrap_or(0)
}

/// Smallest first class over all proper 2-colorings, `None` when the
/// graph is not bipartite. Needs `n <= 24`.
pub fn brute_min_color_class(h: &Graph) -> Option<usize> {
    assert!(h.n() <= 24, "brute coloring needs n <= 24");
    let edges: Vec<(usize, usize)> = h.edges().collect();
    (0u32..1 << h.n())
        .filter(|mask| edges.iter().all(|&(u, v)| (mask >> u & 1) != (mask >> v & 1)))
        .map(|mask| mask.count_ones() as usize)
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle, make_path};

    #[test]
    fn small_matching_numbers() {
        assert_eq!(brute_matching_number(&make_complete(5)), 2);
        assert_eq!(brute_matching_number(&make_cycle(7).unwrap()), 3);
        assert_eq!(brute_matching_number(&make_path(4)), 2);
        assert_eq!(brute_matching_number(&Graph::empty(4)), 0);
    }

    #[test]
    fn extremal_table_for_four_vertices() {
        // nu = 0 only for the empty graph, nu = 1 at most a triangle or
        // star (3 edges), nu = 2 up to K4
        assert_eq!(max_edges_by_matching_number(4), vec![0, 3, 6]);
        assert_eq!(brute_ex_matching(&[0, 3, 6], 2), 3);
    }

    #[test]
    fn coloring_examples() {
        assert_eq!(brute_min_color_class(&make_path(3)), Some(1));
        assert_eq!(brute_min_color_class(&make_cycle(5).unwrap()), None);
        assert_eq!(brute_min_color_class(&Graph::empty(3)), Some(0));
    }
}
