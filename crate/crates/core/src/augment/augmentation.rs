use std::fmt;

use super::aux::{build_auxiliary, lowest_neighbor_in, AuxNode};
use crate::error::{Error, Result};
use crate::graph::{expand, Graph};
use crate::matching::{max_matching_bipartite, max_matching_general};
use crate::tiling::{Tile, TileTag, Tiling};

/// A pair of matchings attached to a tiling `F`: `e0` joins uncovered
/// vertices to `V1(F)` and is stored as `(leftover, v1_vertex)`; `e1` lies
/// inside `V2(F)` and is stored with the lower endpoint first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Augmentation {
    pub e0: Vec<(usize, usize)>,
    pub e1: Vec<(usize, usize)>,
}

impl Augmentation {
    pub fn is_empty(&self) -> bool {
        self.e0.is_empty() && self.e1.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSet {
    E0,
    E1,
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeSet::E0 => "E0",
            EdgeSet::E1 => "E1",
        })
    }
}

/// One broken condition of an augmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotAnEdge {
        set: EdgeSet,
        u: usize,
        v: usize,
    },
    /// An `E0` edge that does not join an uncovered vertex to `V1(F)`.
    E0Endpoints {
        u: usize,
        v: usize,
    },
    /// An `E1` edge with an endpoint outside `V2(F)`.
    E1Endpoints {
        u: usize,
        v: usize,
    },
    NotAMatching {
        set: EdgeSet,
        vertex: usize,
    },
    TwoMatchedInTile {
        set: EdgeSet,
        tile: usize,
    },
    E0WithoutE1 {
        tile: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotAnEdge { set, u, v } => write!(f, "{set} pair ({u}, {v}) is not an edge of G"),
            Violation::E0Endpoints { u, v } => {
                write!(f, "E0 edge ({u}, {v}) does not join an uncovered vertex to V1(F)")
            }
            Violation::E1Endpoints { u, v } => write!(f, "E1 edge ({u}, {v}) leaves V2(F)"),
            Violation::NotAMatching { set, vertex } => write!(f, "{set} is not a matching at vertex {vertex}"),
            Violation::TwoMatchedInTile { set, tile } => {
                write!(f, "two matched vertices in one tile ({set}, tile {tile})")
            }
            Violation::E0WithoutE1 { tile } => write!(f, "tile {tile} has an E0 vertex but no E1 vertex"),
        }
    }
}

/// Searches for an augmentation through the auxiliary graph: a maximum
/// matching `M` of leftovers into lilliputs selects giants `D'`; a maximum
/// matching `T` over giant pairs touching `D'` selects `D''`. `E1` realizes
/// `T`, `E0` realizes the edges of `M` whose giant lies in `D''`, always
/// picking lowest-index vertices. `None` iff `T` is empty.
pub fn find_augmentation(g: &Graph, f: &Tiling) -> Result<Option<Augmentation>> {
    let aux = build_auxiliary(g, f)?;
    let to_lilliputs = aux.restricted(|a, b| matches!((a, b), (AuxNode::Leftover(_), AuxNode::Lilliput(_))));
    let m = max_matching_bipartite(&to_lilliputs, &aux.leftover_nodes(), &aux.lilliput_nodes())?;

    let mut in_d1 = vec![false; f.len()];
    for &(_, b) in m.edges() {
        if let AuxNode::Lilliput(k) = aux.kind(b) {
            in_d1[k] = true;
        }
    }
    let touching = aux.restricted(|a, b| match (a, b) {
        (AuxNode::Giant(k), AuxNode::Giant(l)) => in_d1[k] || in_d1[l],
        _ => false,
    });
    let t = max_matching_general(&touching);
    if t.is_empty() {
        return Ok(None);
    }

    let mut in_d2 = vec![false; f.len()];
    let mut e1 = Vec::new();
    for &(a, b) in t.edges() {
        let (AuxNode::Giant(k), AuxNode::Giant(l)) = (aux.kind(a), aux.kind(b)) else {
            unreachable!("only giant pairs were kept");
        };
        in_d2[k] = in_d1[k];
        in_d2[l] = in_d1[l];
        let edge = f.tiles[k]
            .v2
            .iter()
            .flat_map(|&x| f.tiles[l].v2.iter().map(move |&y| (x.min(y), x.max(y))))
            .filter(|&(x, y)| g.has_edge(x, y))
            .min()
            .expect("aux edge has a witness");
        e1.push(edge);
    }

    let mut e0 = Vec::new();
    for &(a, b) in m.edges() {
        let (AuxNode::Leftover(i), AuxNode::Lilliput(k)) = (aux.kind(a), aux.kind(b)) else {
            unreachable!("leftover ids precede lilliput ids");
        };
        if in_d2[k] {
            let x = aux.leftover[i];
            e0.push((x, lowest_neighbor_in(g, x, &f.tiles[k].v1).expect("aux edge has a witness")));
        }
    }
    e0.sort_unstable();
    e1.sort_unstable();
    Ok(Some(Augmentation { e0, e1 }))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Free,
    V1(usize),
    V2(usize),
}

/// Every broken defining condition, in a fixed order. Empty means valid.
/// Assumes `f` itself is a valid tiling of `g`.
pub fn validate_augmentation(g: &Graph, f: &Tiling, aug: &Augmentation) -> Vec<Violation> {
    let n = g.n();
    let mut side = vec![Side::Free; n];
    for (k, tile) in f.tiles.iter().enumerate() {
        for &v in tile.v1.iter().filter(|&&v| v < n) {
            side[v] = Side::V1(k);
        }
        for &v in tile.v2.iter().filter(|&&v| v < n) {
            side[v] = Side::V2(k);
        }
    }
    let mut out = Vec::new();
    let mut e0_tiles = vec![0usize; f.len()];
    let mut e1_tiles = vec![0usize; f.len()];

    for (set, edges) in [(EdgeSet::E0, &aug.e0), (EdgeSet::E1, &aug.e1)] {
        let mut hits = vec![0u8; n];
        for &(u, v) in edges.iter() {
            if u >= n || v >= n || !g.has_edge(u, v) {
                out.push(Violation::NotAnEdge { set, u, v });
            }
            for w in [u, v] {
                if w < n {
                    hits[w] += 1;
                    if hits[w] == 2 {
                        out.push(Violation::NotAMatching { set, vertex: w });
                    }
                }
            }
            let at = |w: usize| if w < n { side[w] } else { Side::Free };
            match set {
                EdgeSet::E0 => match (at(u), at(v)) {
                    (Side::Free, Side::V1(k)) | (Side::V1(k), Side::Free) if u < n && v < n => e0_tiles[k] += 1,
                    _ => out.push(Violation::E0Endpoints { u, v }),
                },
                EdgeSet::E1 => match (at(u), at(v)) {
                    (Side::V2(k), Side::V2(l)) => {
                        e1_tiles[k] += 1;
                        e1_tiles[l] += 1;
                    }
                    _ => out.push(Violation::E1Endpoints { u, v }),
                },
            }
        }
    }
    for k in 0..f.len() {
        if e0_tiles[k] > 1 {
            out.push(Violation::TwoMatchedInTile { set: EdgeSet::E0, tile: k });
        }
        if e1_tiles[k] > 1 {
            out.push(Violation::TwoMatchedInTile { set: EdgeSet::E1, tile: k });
        }
        if e0_tiles[k] > 0 && e1_tiles[k] == 0 {
            out.push(Violation::E0WithoutE1 { tile: k });
        }
    }
    out
}

/// Applies a valid augmentation of a `K_{s,t}`-tiling inside the
/// t-expansion. An untouched tile lifts to `K_{st,t^2}`. A tile whose
/// `V2` vertex `v` is matched by `E1` drops the fiber of `v`, and if its
/// `V1` vertex `u` is matched by `E0` also drops copy 0 of `u`. Each `E0`
/// edge `(x, u)` adds the `K_2` on copy 0 of `x` and `u`; each `E1` edge
/// adds its `t` diagonal copies. The result covers exactly
/// `t|F| + |E0|` vertices.
pub fn apply_augmentation(g: &Graph, f: &Tiling, aug: &Augmentation) -> Result<(Graph, Tiling)> {
    f.validate(g, None)?;
    let Some(first) = f.tiles.first() else {
        return Err(Error::InvalidParameter("cannot infer t from an empty tiling".into()));
    };
    let tag = first.tag;
    let TileTag::Complete { large: t, .. } = tag else {
        return Err(Error::InvalidTiling("tile 0 is not complete bipartite".into()));
    };
    if t < 2 {
        return Err(Error::InvalidParameter("augmentations need t >= 2".into()));
    }
    if let Some(k) = f.tiles.iter().position(|k| k.tag != tag) {
        return Err(Error::InvalidTiling(format!("tile {k} is {}, expected {tag}", f.tiles[k].tag)));
    }
    let violations = validate_augmentation(g, f, aug);
    if !violations.is_empty() {
        return Err(Error::InvalidAugmentation(violations));
    }

    let (big, em) = expand(g, t)?;
    // stored as (leftover, v1 vertex) but either order validates
    let covered = f.owner_map(g.n());
    let leftover_end = |(x, u): (usize, usize)| if covered[u].is_some() { (x, u) } else { (u, x) };
    let mut e0_at = vec![false; g.n()];
    for &edge in &aug.e0 {
        e0_at[leftover_end(edge).1] = true;
    }
    let mut e1_at = vec![false; g.n()];
    for &(a, b) in &aug.e1 {
        e1_at[a] = true;
        e1_at[b] = true;
    }

    let mut tiles = Vec::with_capacity(f.len() + aug.e0.len() + t * aug.e1.len());
    for tile in &f.tiles {
        let e1_vertex = tile.v2.iter().copied().find(|&v| e1_at[v]);
        let e0_vertex = tile.v1.iter().copied().find(|&u| e0_at[u]);
        let mut v1 = em.lift(&tile.v1);
        if let Some(u) = e0_vertex {
            let w = em.expanded_id(u, 0);
            v1.retain(|&x| x != w);
        }
        let v2: Vec<usize> = match e1_vertex {
            Some(v) => tile.v2.iter().copied().filter(|&y| y != v).flat_map(|y| em.fiber(y)).collect(),
            None => em.lift(&tile.v2),
        };
        tiles.push(Tile::complete(v1, v2));
    }
    for &edge in &aug.e0 {
        let (x, u) = leftover_end(edge);
        tiles.push(Tile::complete(vec![em.expanded_id(u, 0)], vec![em.expanded_id(x, 0)]));
    }
    for &(a, b) in &aug.e1 {
        for j in 0..t {
            tiles.push(Tile::complete(vec![em.expanded_id(a, j)], vec![em.expanded_id(b, j)]));
        }
    }
    Ok((big, Tiling::new(tiles)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph_gnm;
    use crate::tiling::{max_tiling_greedy, Pattern};

    // K1 = {0 | 1, 2}, K2 = {3 | 4, 5}, leftover 6 next to 0, one giant edge 1-4.
    fn two_tile_instance() -> (Graph, Tiling) {
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (3, 4), (3, 5), (0, 6), (1, 4)]).unwrap();
        let f = Tiling::new(vec![Tile::complete(vec![0], vec![1, 2]), Tile::complete(vec![3], vec![4, 5])]);
        (g, f)
    }

    fn family_tags(s: usize, t: usize) -> [TileTag; 4] {
        [
            TileTag::Complete { small: s * t, large: t * t },
            TileTag::Complete { small: s * t - 1, large: (t - 1) * t },
            TileTag::Complete { small: s * t, large: (t - 1) * t },
            TileTag::Complete { small: 1, large: 1 },
        ]
    }

    #[test]
    fn two_tile_instance_end_to_end() {
        let (g, f) = two_tile_instance();
        let aug = find_augmentation(&g, &f).unwrap().unwrap();
        assert_eq!(aug.e0, vec![(6, 0)]);
        assert_eq!(aug.e1, vec![(1, 4)]);
        assert!(validate_augmentation(&g, &f, &aug).is_empty());
        let (big, fnew) = apply_augmentation(&g, &f, &aug).unwrap();
        assert_eq!(big.n(), 14);
        fnew.validate(&big, None).unwrap();
        assert_eq!(fnew.size(), 13);
        let tags = family_tags(1, 2);
        assert!(fnew.tiles.iter().all(|k| tags.contains(&k.tag)));
    }

    #[test]
    fn empty_augmentation_gives_full_lifts() {
        let (g, f) = two_tile_instance();
        let (big, fnew) = apply_augmentation(&g, &f, &Augmentation::default()).unwrap();
        fnew.validate(&big, None).unwrap();
        assert_eq!(fnew.size(), 2 * f.size());
        assert!(fnew.tiles.iter().all(|k| k.tag == TileTag::Complete { small: 2, large: 4 }));
    }

    #[test]
    fn no_giant_edges_means_nothing() {
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (3, 4), (3, 5), (0, 6)]).unwrap();
        let (_, f) = two_tile_instance();
        assert_eq!(find_augmentation(&g, &f).unwrap(), None);
    }

    #[test]
    fn edge_inside_one_giant_is_rejected() {
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (0, 6)]).unwrap();
        let (_, f) = two_tile_instance();
        let aug = Augmentation { e0: vec![], e1: vec![(1, 2)] };
        let v = validate_augmentation(&g, &f, &aug);
        assert_eq!(v, vec![Violation::TwoMatchedInTile { set: EdgeSet::E1, tile: 0 }]);
        assert!(v[0].to_string().contains("two matched vertices in one tile"));
        assert!(matches!(apply_augmentation(&g, &f, &aug), Err(Error::InvalidAugmentation(_))));
    }

    #[test]
    fn e0_without_e1_is_rejected() {
        let (g, f) = two_tile_instance();
        let aug = Augmentation { e0: vec![(6, 0)], e1: vec![] };
        assert_eq!(validate_augmentation(&g, &f, &aug), vec![Violation::E0WithoutE1 { tile: 0 }]);
    }

    #[test]
    fn other_violations() {
        let (g, f) = two_tile_instance();
        let aug = Augmentation { e0: vec![(6, 1)], e1: vec![(2, 5)] };
        let v = validate_augmentation(&g, &f, &aug);
        assert!(v.contains(&Violation::NotAnEdge { set: EdgeSet::E0, u: 6, v: 1 }));
        assert!(v.contains(&Violation::E0Endpoints { u: 6, v: 1 }));
        assert!(v.contains(&Violation::NotAnEdge { set: EdgeSet::E1, u: 2, v: 5 }));
        let aug = Augmentation { e0: vec![], e1: vec![(0, 1)] };
        assert!(validate_augmentation(&g, &f, &aug).contains(&Violation::E1Endpoints { u: 0, v: 1 }));
        let aug = Augmentation { e0: vec![], e1: vec![(1, 4), (4, 1)] };
        assert!(validate_augmentation(&g, &f, &aug).contains(&Violation::NotAMatching { set: EdgeSet::E1, vertex: 1 }));
    }

    #[test]
    fn found_augmentations_validate_and_satisfy_the_identity() {
        let mut found = 0;
        for seed in 0..300u64 {
            let (s, t) = [(1, 2), (1, 3), (2, 3)][seed as usize % 3];
            let n = 12 + seed as usize % 10;
            let g = random_graph_gnm(n, n * (2 + seed as usize % 3), seed).unwrap();
            let f = max_tiling_greedy(&g, &Pattern::complete_bipartite(s, t).unwrap(), seed);
            if f.is_empty() {
                continue;
            }
            let Some(aug) = find_augmentation(&g, &f).unwrap() else { continue };
            found += 1;
            assert!(validate_augmentation(&g, &f, &aug).is_empty(), "seed {seed}");
            assert!(!aug.e0.is_empty());
            let (big, fnew) = apply_augmentation(&g, &f, &aug).unwrap();
            fnew.validate(&big, None).unwrap();
            assert_eq!(fnew.size(), t * f.size() + aug.e0.len());
            let tags = family_tags(s, t);
            assert!(fnew.tiles.iter().all(|k| tags.contains(&k.tag)));
        }
        assert!(found > 50, "only {found} augmentations found");
    }
}
