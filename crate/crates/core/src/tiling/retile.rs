use super::{dominates, tile_complete_bipartite, Tile, TileTag, Tiling};
use crate::error::{Error, Result};
use crate::graph::ExpansionMap;

/// Retiling: every complete-bipartite tile of `f` lifts to a complete
/// bipartite graph with classes `r|V1(K)|` and `r|V2(K)|` in the expansion,
/// which is then tiled by `K_{s,t}` copies.
pub fn retile(f: &Tiling, em: &ExpansionMap, s: usize, t: usize) -> Result<Tiling> {
    let mut tiles = Vec::new();
    for (i, tile) in f.tiles.iter().enumerate() {
        if tile.tag == TileTag::Pattern {
            return Err(Error::InvalidTiling(format!("tile {i} is not complete bipartite")));
        }
        let (a, b) = (tile.v1.len(), tile.v2.len());
        if !dominates(a, b, s, t)? {
            return Err(Error::NotDominating { a, b, s, t });
        }
        let lifted: Vec<usize> = em.lift(&tile.v1).into_iter().chain(em.lift(&tile.v2)).collect();
        let block = tile_complete_bipartite(a * em.r, b * em.r, s, t)?;
        for local in block.tiles {
            let map = |vs: &[usize]| vs.iter().map(|&v| lifted[v]).collect::<Vec<_>>();
            tiles.push(Tile::complete(map(&local.v1), map(&local.v2)));
        }
    }
    Ok(Tiling::new(tiles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{expand, make_complete, make_path};
    use crate::tiling::uncovered_bound;

    #[test]
    fn single_star_lifts_perfectly() {
        let p3 = make_path(3);
        let f = Tiling::new(vec![Tile::complete(vec![1], vec![0, 2])]);
        let (big, em) = expand(&p3, 3).unwrap();
        let out = retile(&f, &em, 1, 2).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out.size(), 9);
        out.validate_complete(&big, 1, 2).unwrap();
    }

    #[test]
    fn edge_lifts_to_two_edges() {
        let f = Tiling::new(vec![Tile::complete(vec![0], vec![1])]);
        let (big, em) = expand(&make_complete(2), 2).unwrap();
        let out = retile(&f, &em, 1, 1).unwrap();
        assert_eq!(out.len(), 2);
        out.validate_complete(&big, 1, 1).unwrap();
    }

    #[test]
    fn mixed_family_respects_loss_bound() {
        // K_{1,1} and K_{1,2} tiles retiled into K_{1,2} copies
        let g = crate::graph::Graph::from_edges(5, [(0, 1), (2, 3), (2, 4)]).unwrap();
        let f = Tiling::new(vec![Tile::complete(vec![0], vec![1]), Tile::complete(vec![2], vec![3, 4])]);
        for r in 1..6 {
            let (big, em) = expand(&g, r).unwrap();
            let out = retile(&f, &em, 1, 2).unwrap();
            out.validate_complete(&big, 1, 2).unwrap();
            assert!(out.size() + f.len() * uncovered_bound(1, 2) >= f.size() * r);
        }
    }

    #[test]
    fn rejects_non_dominating_members() {
        let g = crate::graph::make_complete_bipartite(1, 3);
        let f = Tiling::new(vec![Tile::complete(vec![0], vec![1, 2, 3])]);
        let (_, em) = expand(&g, 2).unwrap();
        assert!(matches!(retile(&f, &em, 1, 2), Err(Error::NotDominating { .. })));
    }
}
