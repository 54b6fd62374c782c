use super::{dominates, Tile, Tiling};
use crate::error::{Error, Result};

/// Worst-case number of vertices of `K_{a,b}` left uncovered by
/// [`tile_complete_bipartite`]: `2(s+t-1)` when `s < t`, `2(s-1)` when
/// `s = t`.
pub fn uncovered_bound(s: usize, t: usize) -> usize {
    let (s, t) = (s.min(t), s.max(t));
    if s < t {
        2 * (s + t - 1)
    } else {
        2 * s.saturating_sub(1)
    }
}

/// Copy counts for `s < t` and `a <= b`: `x` copies with the `s`-part on
/// the `a` side and `y` copies the other way round.
pub fn lemma4_counts(a: usize, b: usize, s: usize, t: usize) -> (usize, usize) {
    debug_assert!(a <= b && s < t);
    let (a, b, s, t) = (a as i128, b as i128, s as i128, t as i128);
    let denom = t * t - s * s;
    let x = (b * t - a * s).div_euclid(denom);
    let y = (a * t - b * s).div_euclid(denom);
    (x.max(0) as usize, y.max(0) as usize)
}

/// Near-perfect `K_{s,t}`-tiling of `K_{a,b}` (sides `0..a` and
/// `a..a+b`), requiring `(a, b)` to dominate `(s, t)`.
pub fn tile_complete_bipartite(a: usize, b: usize, s: usize, t: usize) -> Result<Tiling> {
    if s == 0 || s > t {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= t, got s = {s}, t = {t}")));
    }
    if !dominates(a, b, s, t)? {
        return Err(Error::NotDominating { a, b, s, t });
    }
    let side_a: Vec<usize> = (0..a).collect();
    let side_b: Vec<usize> = (a..a + b).collect();
    let mut tiles = Vec::new();

    if s == t {
        // domination forces a == b
        for i in 0..a / s {
            let block = i * s..(i + 1) * s;
            tiles.push(Tile::complete(side_a[block.clone()].to_vec(), side_b[block].to_vec()));
        }
        return Ok(Tiling::new(tiles));
    }

    let (small, large) = if a <= b { (side_a, side_b) } else { (side_b, side_a) };
    let (x, y) = lemma4_counts(small.len(), large.len(), s, t);
    let (mut i, mut j) = (0, 0);
    for _ in 0..x {
        tiles.push(Tile::complete(small[i..i + s].to_vec(), large[j..j + t].to_vec()));
        i += s;
        j += t;
    }
    for _ in 0..y {
        tiles.push(Tile::complete(large[j..j + s].to_vec(), small[i..i + t].to_vec()));
        i += t;
        j += s;
    }
    Ok(Tiling::new(tiles))
}
