use tilinglab_demo::{curve, tile_graph, tile_kab, MAX_DEMO_N};

#[test]
fn curve_branches_cross_once() {
    let c = curve(1, 2, 99).unwrap();
    assert!((c.crossover() - 0.6).abs() < 1e-12);
    let (alphas, m, l) = (c.alphas(), c.m_branch(), c.l_branch());
    assert_eq!(alphas.len(), 99);
    for i in 0..alphas.len() {
        assert_eq!(m[i] >= l[i], alphas[i] <= c.crossover(), "alpha {}", alphas[i]);
    }
    assert!(curve(2, 1, 10).is_err());
    assert!(curve(1, 2, 1).is_err());
}

#[test]
fn lower_bound_graphs_stay_short() {
    // M(n, 2s - 1) and L(n, 2(s + t) - 1) hold at most one K_{s,t}
    let m = tile_graph("m", 12, 3, 2, 3, 0).unwrap();
    assert!(m.optimal());
    assert_eq!(m.tiles(), 1);
    assert_eq!(m.covered(), 5);
    let l = tile_graph("l", 12, 9, 2, 3, 0).unwrap();
    assert_eq!(l.tiles(), 1);
    assert_eq!(l.edges().len(), 2 * 36);
}

#[test]
fn owner_and_side_agree() {
    let g = tile_graph("gnm", 16, 50, 1, 2, 4).unwrap();
    let (owner, side) = (g.owner(), g.side());
    assert_eq!(owner.len(), 16);
    for v in 0..16 {
        assert_eq!(owner[v] < 0, side[v] == 0);
    }
    assert_eq!(side.iter().filter(|&&x| x == 1).count(), g.tiles());
    assert!(tile_graph("gnm", MAX_DEMO_N + 1, 0, 1, 2, 0).is_err());
    assert!(tile_graph("tree", 5, 0, 1, 2, 0).is_err());
}

#[test]
fn complete_bipartite_tiling_is_near_perfect() {
    let f = tile_kab(30, 41, 2, 3).unwrap();
    assert!(71 - f.covered() <= 2 * (2 + 3 - 1));
    assert!(f.edges().is_empty());
    assert!(tile_kab(1, 9, 1, 2).is_err());
}
