use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matching::max_matching_bipartite;
use crate::tiling::{Tile, Tiling};

/// A node of the auxiliary graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuxNode {
    /// Index into [`AuxiliaryGraph::leftover`].
    Leftover(usize),
    /// The `V1` part of tile `k`.
    Lilliput(usize),
    /// The `V2` part of tile `k`.
    Giant(usize),
}

/// Uncovered vertices plus one lilliput and one giant per tile. Node ids
/// are `0..m` for leftovers, then `m..m+r` for lilliputs, then
/// `m+r..m+2r` for giants; lilliput `k` and giant `k` are coupled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryGraph {
    /// `V(G) - V(F)` in increasing order.
    pub leftover: Vec<usize>,
    pub tile_count: usize,
    graph: Graph,
}

impl AuxiliaryGraph {
    pub fn node(&self, kind: AuxNode) -> usize {
        let m = self.leftover.len();
        match kind {
            AuxNode::Leftover(i) => i,
            AuxNode::Lilliput(k) => m + k,
            AuxNode::Giant(k) => m + self.tile_count + k,
        }
    }

    pub fn kind(&self, node: usize) -> AuxNode {
        let m = self.leftover.len();
        let r = self.tile_count;
        if node < m {
            AuxNode::Leftover(node)
        } else if node < m + r {
            AuxNode::Lilliput(node - m)
        } else {
            AuxNode::Giant(node - m - r)
        }
    }

    pub fn leftover_nodes(&self) -> Vec<usize> {
        (0..self.leftover.len()).collect()
    }

    pub fn lilliput_nodes(&self) -> Vec<usize> {
        (0..self.tile_count).map(|k| self.node(AuxNode::Lilliput(k))).collect()
    }

    pub fn giant_nodes(&self) -> Vec<usize> {
        (0..self.tile_count).map(|k| self.node(AuxNode::Giant(k))).collect()
    }

    /// Leftover number `i` has a neighbour in `V1` of tile `k`.
    pub fn leftover_lilliput(&self, i: usize, k: usize) -> bool {
        self.graph.has_edge(i, self.node(AuxNode::Lilliput(k)))
    }

    /// Leftover number `i` has a neighbour in `V2` of tile `k`.
    pub fn leftover_giant(&self, i: usize, k: usize) -> bool {
        self.graph.has_edge(i, self.node(AuxNode::Giant(k)))
    }

    /// Some edge of `G` joins `V2` of tile `k` and `V2` of tile `l`.
    pub fn giant_giant(&self, k: usize, l: usize) -> bool {
        self.graph.has_edge(self.node(AuxNode::Giant(k)), self.node(AuxNode::Giant(l)))
    }

    pub fn as_graph(&self) -> &Graph {
        &self.graph
    }

    /// Same node set, keeping the edges whose endpoint kinds pass `keep`
    /// (called with the lower node id first).
    pub fn restricted(&self, keep: impl Fn(AuxNode, AuxNode) -> bool) -> Graph {
        let edges = self.graph.edges().filter(|&(a, b)| keep(self.kind(a), self.kind(b)));
        Graph::from_edges(self.graph.n(), edges).expect("subset of a simple graph")
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Free,
    V1(usize),
    V2(usize),
}

fn sides(n: usize, f: &Tiling) -> Vec<Side> {
    let mut side = vec![Side::Free; n];
    for (k, tile) in f.tiles.iter().enumerate() {
        for &v in &tile.v1 {
            side[v] = Side::V1(k);
        }
        for &v in &tile.v2 {
            side[v] = Side::V2(k);
        }
    }
    side
}

pub fn build_auxiliary(g: &Graph, f: &Tiling) -> Result<AuxiliaryGraph> {
    f.validate(g, None)?;
    let side = sides(g.n(), f);
    let leftover: Vec<usize> = (0..g.n()).filter(|&v| side[v] == Side::Free).collect();
    let m = leftover.len();
    let r = f.len();
    let mut edges = BTreeSet::new();
    for (i, &x) in leftover.iter().enumerate() {
        for &w in g.neighbors(x) {
            match side[w] {
                Side::V1(k) => edges.insert((i, m + k)),
                Side::V2(k) => edges.insert((i, m + r + k)),
                Side::Free => false,
            };
        }
    }
    for (k, tile) in f.tiles.iter().enumerate() {
        for &v in &tile.v2 {
            for &w in g.neighbors(v) {
                if let Side::V2(l) = side[w] {
                    if l > k {
                        edges.insert((m + r + k, m + r + l));
                    }
                }
            }
        }
    }
    let graph = Graph::from_edges(m + 2 * r, edges)?;
    Ok(AuxiliaryGraph { leftover, tile_count: r, graph })
}

/// Lowest vertex of `part` adjacent to `x`.
pub(crate) fn lowest_neighbor_in(g: &Graph, x: usize, part: &[usize]) -> Option<usize> {
    part.iter().copied().find(|&y| g.has_edge(x, y))
}

/// Matches leftovers to giants; for each matched pair `(x, V2(K))` moves
/// the lowest `y` in `N(x) ∩ V2(K)` out of `K` into a new `K_2` tile
/// `{x, y}`. Returns `None` when the matching is empty. The gain over
/// `|F|` equals the matching size.
pub fn find_f1_improvement(g: &Graph, f: &Tiling) -> Result<Option<Tiling>> {
    if let Some(k) = f.tiles.iter().position(|k| k.v2.len() < 2) {
        return Err(Error::InvalidParameter(format!("tile {k} has fewer than two vertices in V2")));
    }
    let aux = build_auxiliary(g, f)?;
    let sub = aux.restricted(|a, b| matches!((a, b), (AuxNode::Leftover(_), AuxNode::Giant(_))));
    let matching = max_matching_bipartite(&sub, &aux.leftover_nodes(), &aux.giant_nodes())?;
    if matching.is_empty() {
        return Ok(None);
    }
    let mut tiles = f.tiles.clone();
    let mut extra = Vec::new();
    for &(a, b) in matching.edges() {
        let (AuxNode::Leftover(i), AuxNode::Giant(k)) = (aux.kind(a), aux.kind(b)) else {
            unreachable!("leftover ids precede giant ids");
        };
        let x = aux.leftover[i];
        let y = lowest_neighbor_in(g, x, &f.tiles[k].v2).expect("aux edge has a witness");
        let v2: Vec<usize> = tiles[k].v2.iter().copied().filter(|&v| v != y).collect();
        tiles[k] = Tile::complete(tiles[k].v1.clone(), v2);
        extra.push(Tile::complete(vec![x], vec![y]));
    }
    tiles.extend(extra);
    Ok(Some(Tiling::new(tiles)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_path, random_graph_gnm};
    use crate::matching::max_matching_general;
    use crate::tiling::{max_tiling_greedy, Pattern, TileTag};

    fn p5_instance() -> (Graph, Tiling) {
        (make_path(5), Tiling::new(vec![Tile::complete(vec![2], vec![1, 3])]))
    }

    #[test]
    fn disconnected_leftover_has_no_edges() {
        let g = make_path(3).disjoint_union(&make_path(2));
        let f = Tiling::new(vec![Tile::complete(vec![1], vec![0, 2])]);
        let aux = build_auxiliary(&g, &f).unwrap();
        assert_eq!(aux.leftover, vec![3, 4]);
        assert_eq!(aux.tile_count, 1);
        assert_eq!(aux.as_graph().edge_count(), 0);
        assert_eq!(find_f1_improvement(&g, &f).unwrap(), None);
    }

    #[test]
    fn path_instance_edges_follow_orientation() {
        let (g, f) = p5_instance();
        let aux = build_auxiliary(&g, &f).unwrap();
        assert_eq!(aux.leftover, vec![0, 4]);
        assert!(aux.leftover_giant(0, 0) && aux.leftover_giant(1, 0));
        assert!(!aux.leftover_lilliput(0, 0) && !aux.leftover_lilliput(1, 0));
    }

    #[test]
    fn path_instance_improves_by_one() {
        let (g, f) = p5_instance();
        let improved = find_f1_improvement(&g, &f).unwrap().unwrap();
        improved.validate(&g, None).unwrap();
        assert_eq!(improved.size(), 4);
        assert_eq!(improved.tiles[0], Tile::complete(vec![2], vec![3]));
        assert_eq!(improved.tiles[1], Tile::complete(vec![0], vec![1]));
    }

    #[test]
    fn single_cross_edge_gives_one_giant_edge() {
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (3, 4), (3, 5), (2, 5)]).unwrap();
        let f = Tiling::new(vec![Tile::complete(vec![0], vec![1, 2]), Tile::complete(vec![3], vec![4, 5])]);
        let aux = build_auxiliary(&g, &f).unwrap();
        assert!(aux.giant_giant(0, 1) && aux.giant_giant(1, 0));
        assert_eq!(aux.as_graph().edge_count(), 1);

        let g = Graph::from_edges(6, [(0, 1), (0, 2), (3, 4), (3, 5), (0, 3)]).unwrap();
        assert!(!build_auxiliary(&g, &f).unwrap().giant_giant(0, 1));
    }

    #[test]
    fn predicates_agree_with_direct_recomputation() {
        for seed in 0..80u64 {
            let g = random_graph_gnm(14, 20 + seed as usize % 30, seed).unwrap();
            let f = max_tiling_greedy(&g, &Pattern::complete_bipartite(1, 2).unwrap(), seed);
            let aux = build_auxiliary(&g, &f).unwrap();
            let meets = |x: usize, part: &[usize]| g.neighbors(x).iter().any(|w| part.contains(w));
            for (i, &x) in aux.leftover.iter().enumerate() {
                for j in 0..aux.leftover.len() {
                    assert!(!aux.as_graph().has_edge(i, j));
                }
                for (k, tile) in f.tiles.iter().enumerate() {
                    assert_eq!(aux.leftover_lilliput(i, k), meets(x, &tile.v1));
                    assert_eq!(aux.leftover_giant(i, k), meets(x, &tile.v2));
                }
            }
            for k in 0..f.len() {
                for l in 0..f.len() {
                    let direct = k != l && f.tiles[k].v2.iter().any(|&a| meets(a, &f.tiles[l].v2));
                    assert_eq!(aux.giant_giant(k, l), direct, "seed {seed}");
                    assert!(!aux.as_graph().has_edge(aux.node(AuxNode::Lilliput(k)), aux.node(AuxNode::Lilliput(l))));
                }
            }
        }
    }

    #[test]
    fn gain_equals_matching_size() {
        for seed in 0..100u64 {
            let g = random_graph_gnm(16, 18 + seed as usize % 25, seed).unwrap();
            let f = max_tiling_greedy(&g, &Pattern::complete_bipartite(1, 3).unwrap(), seed);
            let aux = build_auxiliary(&g, &f).unwrap();
            // general matcher on the leftover-giant subgraph as a second opinion
            let sub = Graph::from_edges(
                aux.as_graph().n(),
                aux.as_graph().edges().filter(|&(a, b)| a < aux.leftover.len() && b >= aux.leftover.len() + f.len()),
            )
            .unwrap();
            let nu = max_matching_general(&sub).len();
            match find_f1_improvement(&g, &f).unwrap() {
                None => assert_eq!(nu, 0),
                Some(better) => {
                    better.validate(&g, None).unwrap();
                    assert_eq!(better.size(), f.size() + nu);
                    for tile in &better.tiles {
                        assert!(matches!(
                            tile.tag,
                            TileTag::Complete { small: 1, large: 3 }
                                | TileTag::Complete { small: 1, large: 2 }
                                | TileTag::Complete { small: 1, large: 1 }
                        ));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_invalid_tiling() {
        let (g, _) = p5_instance();
        let bad = Tiling::new(vec![Tile::complete(vec![0], vec![2, 4])]);
        assert!(build_auxiliary(&g, &bad).is_err());
    }
}
