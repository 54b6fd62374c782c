//! Seeded random instances for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::augment::Augmentation;
use crate::graph::Graph;
use crate::tiling::{Tile, Tiling};

/// SplitMix64 finalizer; mixes a cell index into a base seed.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed for cell `index` of a run seeded with `seed`.
pub fn cell_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ index)
}

#[derive(Debug, Clone)]
pub struct AugmentInstance {
    pub s: usize,
    pub t: usize,
    pub graph: Graph,
    pub tiling: Tiling,
    pub aug: Augmentation,
}

/// A `K_{s,t}`-tiling with a valid augmentation planted in it: tiles are
/// paired at random and joined by one `V2`-`V2` edge each, some paired
/// tiles get an edge from a fresh leftover vertex into `V1`, then random
/// noise edges are added and all ids shuffled.
pub fn random_augment_instance(seed: u64) -> AugmentInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (s, t) = [(1, 2), (1, 3), (2, 2), (2, 3), (1, 4)][rng.gen_range(0..5)];
    let tiles = rng.gen_range(1..=6);
    let leftover = rng.gen_range(0..=5);
    let n = tiles * (s + t) + leftover;

    let mut edges = Vec::new();
    let mut base = Vec::new();
    for k in 0..tiles {
        let start = k * (s + t);
        let v1: Vec<usize> = (start..start + s).collect();
        let v2: Vec<usize> = (start + s..start + s + t).collect();
        for &u in &v1 {
            for &v in &v2 {
                edges.push((u, v));
            }
        }
        base.push(Tile::complete(v1, v2));
    }

    let mut order: Vec<usize> = (0..tiles).collect();
    order.shuffle(&mut rng);
    let pairs = rng.gen_range(0..=tiles / 2);
    let mut e1 = Vec::new();
    let mut touched = Vec::new();
    for pair in order.chunks(2).take(pairs) {
        let (k, l) = (pair[0], pair[1]);
        let a = *base[k].v2.choose(&mut rng).expect("t >= 1");
        let b = *base[l].v2.choose(&mut rng).expect("t >= 1");
        edges.push((a, b));
        e1.push((a, b));
        touched.extend([k, l]);
    }
    touched.shuffle(&mut rng);
    let mut free: Vec<usize> = (tiles * (s + t)..n).collect();
    free.shuffle(&mut rng);
    let mut e0 = Vec::new();
    for (&k, x) in touched.iter().zip(free) {
        if rng.gen_bool(0.7) {
            let u = *base[k].v1.choose(&mut rng).expect("s >= 1");
            edges.push((x, u));
            e0.push((x, u));
        }
    }

    let noise = rng.gen_range(0..=2 * n);
    for _ in 0..noise {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        edges.push((u, v));
    }

    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut simple: Vec<(usize, usize)> =
        edges.into_iter().filter(|&(u, v)| u != v).map(|(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v]))).collect();
    simple.sort_unstable();
    simple.dedup();
    let graph = Graph::from_edges(n, simple).expect("deduplicated simple edges");
    let map = |vs: &[usize]| vs.iter().map(|&v| perm[v]).collect::<Vec<_>>();
    let tiling = Tiling::new(base.iter().map(|k| Tile::complete(map(&k.v1), map(&k.v2))).collect());
    let mut aug = Augmentation {
        e0: e0.into_iter().map(|(x, u)| (perm[x], perm[u])).collect(),
        e1: e1.into_iter().map(|(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b]))).collect(),
    };
    aug.e0.sort_unstable();
    aug.e1.sort_unstable();
    AugmentInstance { s, t, graph, tiling, aug }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::validate_augmentation;

    #[test]
    fn planted_augmentations_are_valid() {
        for seed in 0..300 {
            let inst = random_augment_instance(seed);
            inst.tiling.validate_complete(&inst.graph, inst.s, inst.t).unwrap();
            assert!(validate_augmentation(&inst.graph, &inst.tiling, &inst.aug).is_empty(), "seed {seed}");
        }
    }

    #[test]
    fn deterministic() {
        let a = random_augment_instance(17);
        let b = random_augment_instance(17);
        assert_eq!((a.graph, a.tiling, a.aug), (b.graph, b.tiling, b.aug));
        assert_ne!(cell_seed(1, 0), cell_seed(1, 1));
    }
}
