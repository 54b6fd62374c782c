//! Pair density, exact and sampled epsilon-regularity checks, and the
//! slicing property for subpairs.
//!
//! All comparisons against `eps` are exact: an `f64` is a dyadic rational,
//! so `num < eps * den` is decided on integers.

use std::cmp::Ordering;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest side the exact checker enumerates subsets of.
pub const EXACT_SIDE_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStats {
    pub a_size: usize,
    pub b_size: usize,
    pub edges: usize,
    pub density: f64,
}

/// `num` against `eps * den`, exactly.
fn cmp_scaled(num: u128, den: u128, eps: f64) -> Ordering {
    let bits = eps.to_bits();
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & ((1 << 52) - 1)) as u128;
    let (mant, exp) = if exp_bits == 0 { (frac, -1074) } else { (frac | 1 << 52, exp_bits - 1075) };
    let rhs = mant * den;
    if exp >= 0 {
        if rhs == 0 {
            num.cmp(&0)
        } else if rhs.leading_zeros() <= exp as u32 {
            Ordering::Less
        } else {
            num.cmp(&(rhs << exp))
        }
    } else {
        let k = exp.unsigned_abs();
        if num == 0 {
            0.cmp(&rhs)
        } else if num.leading_zeros() < k {
            Ordering::Greater
        } else {
            (num << k).cmp(&rhs)
        }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("eps must be positive and finite, got {eps}")))
    }
}

fn check_pair(g: &Graph, a: &[usize], b: &[usize]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParameter("pair sides must be nonempty".into()));
    }
    let mut seen = vec![false; g.n()];
    for &v in a.iter().chain(b) {
        if v >= g.n() {
            return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParameter(format!("vertex {v} repeated or shared by both sides")));
        }
    }
    Ok(())
}

pub fn pair_stats(g: &Graph, a: &[usize], b: &[usize]) -> Result<PairStats> {
    check_pair(g, a, b)?;
    let edges = g.cross_edge_count(a, b);
    Ok(PairStats { a_size: a.len(), b_size: b.len(), edges, density: edges as f64 / (a.len() * b.len()) as f64 })
}

/// `d(A, B) = e(A, B) / (|A| |B|)`.
pub fn pair_density(g: &Graph, a: &[usize], b: &[usize]) -> Result<f64> {
    Ok(pair_stats(g, a, b)?.density)
}

/// Whether `e_xy / (x y)` lies strictly within `eps` of `e / (a b)`.
fn within(e_xy: usize, x: usize, y: usize, e: usize, a: usize, b: usize, eps: f64) -> bool {
    let lhs = (e_xy * a * b) as i128;
    let rhs = (e * x * y) as i128;
    cmp_scaled(lhs.abs_diff(rhs), (x * y * a * b) as u128, eps) == Ordering::Less
}

/// `k > eps * total`.
fn large_enough(k: usize, total: usize, eps: f64) -> bool {
    cmp_scaled(k as u128, total as u128, eps) == Ordering::Greater
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub regular: bool,
    /// A subpair breaking the bound when `regular` is false.
    pub witness: Option<Witness>,
}

// Given X, the extreme e(X, Y) over |Y| = k comes from the k vertices of
// B with the most (or fewest) neighbours in X, and the deviation from the
// pair density is largest at one of the two extremes.
fn worst_y(g: &Graph, x: &[usize], b: &[usize], e: usize, a_len: usize, eps: f64) -> Option<Vec<usize>> {
    let mut deg: Vec<(usize, usize)> =
        b.iter().map(|&y| (x.iter().filter(|&&u| g.has_edge(u, y)).count(), y)).collect();
    deg.sort_unstable();
    let mut prefix = vec![0; deg.len() + 1];
    for (i, &(d, _)) in deg.iter().enumerate() {
        prefix[i + 1] = prefix[i] + d;
    }
    let total = prefix[deg.len()];
    for k in 1..=b.len() {
        if !large_enough(k, b.len(), eps) {
            continue;
        }
        let top = total - prefix[deg.len() - k];
        if !within(top, x.len(), k, e, a_len, b.len(), eps) {
            return Some(deg[deg.len() - k..].iter().map(|&(_, y)| y).collect());
        }
        let bottom = prefix[k];
        if !within(bottom, x.len(), k, e, a_len, b.len(), eps) {
            return Some(deg[..k].iter().map(|&(_, y)| y).collect());
        }
    }
    None
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Exhaustive check of `|d(X, Y) - d(A, B)| < eps` for all `X ⊆ A`,
/// `Y ⊆ B` with `|X| > eps |A|` and `|Y| > eps |B|`. Subsets of `A` are
/// enumerated; the worst `Y` for each is found from sorted degrees.
pub fn is_eps_regular_exact(g: &Graph, a: &[usize], b: &[usize], eps: f64) -> Result<RegularityVerdict> {
    check_pair(g, a, b)?;
    check_eps(eps)?;
    let size = a.len().max(b.len());
    if size > EXACT_SIDE_LIMIT {
        return Err(Error::TooLargeForExact { size, limit: EXACT_SIDE_LIMIT });
    }
    let e = g.cross_edge_count(a, b);
    for mask in 1u32..1 << a.len() {
        if !large_enough(mask.count_ones() as usize, a.len(), eps) {
            continue;
        }
        let x: Vec<usize> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
        if let Some(y) = worst_y(g, &x, b, e, a.len(), eps) {
            return Ok(RegularityVerdict { regular: false, witness: Some(Witness { x: sorted(x), y: sorted(y) }) });
        }
    }
    Ok(RegularityVerdict { regular: true, witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampledVerdict {
    Refuted(Witness),
    Unrefuted,
}

/// Samples `X ⊆ A` of a uniformly random admissible size, then takes the
/// worst `Y` for it. Can only refute; deterministic in `seed`.
pub fn is_eps_regular_sampled(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    eps: f64,
    trials: usize,
    seed: u64,
) -> Result<SampledVerdict> {
    check_pair(g, a, b)?;
    check_eps(eps)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let sizes: Vec<usize> = (1..=a.len()).filter(|&k| large_enough(k, a.len(), eps)).collect();
    if sizes.is_empty() {
        return Ok(SampledVerdict::Unrefuted);
    }
    let e = g.cross_edge_count(a, b);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let k = sizes[rng.gen_range(0..sizes.len())];
        let x: Vec<usize> = sample(&mut rng, a.len(), k).into_iter().map(|i| a[i]).collect();
        if let Some(y) = worst_y(g, &x, b, e, a.len(), eps) {
            return Ok(SampledVerdict::Refuted(Witness { x: sorted(x), y: sorted(y) }));
        }
    }
    Ok(SampledVerdict::Unrefuted)
}

/// True when the witness is admissible and really breaks the bound.
pub fn witness_violates(g: &Graph, a: &[usize], b: &[usize], eps: f64, w: &Witness) -> bool {
    let subset = |s: &[usize], of: &[usize]| s.iter().all(|v| of.contains(v));
    if !subset(&w.x, a)
        || !subset(&w.y, b)
        || !large_enough(w.x.len(), a.len(), eps)
        || !large_enough(w.y.len(), b.len(), eps)
    {
        return false;
    }
    let e = g.cross_edge_count(a, b);
    !within(g.cross_edge_count(&w.x, &w.y), w.x.len(), w.y.len(), e, a.len(), b.len(), eps)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlicingReport {
    /// `min(|A'| / |A|, |B'| / |B|)`.
    pub alpha: f64,
    /// `max(eps / alpha, 2 eps)`, rounded up to the next float.
    pub eps_prime: f64,
    pub parent_regular: bool,
    /// `|A'| >= eps |A|` and `|B'| >= eps |B|`.
    pub alpha_at_least_eps: bool,
    pub child_regular: bool,
    pub density_gap: f64,
    /// `|d' - d| < eps`, exactly.
    pub gap_below_eps: bool,
}

impl SlicingReport {
    pub fn premise(&self) -> bool {
        self.parent_regular && self.alpha_at_least_eps
    }

    pub fn conclusion(&self) -> bool {
        self.child_regular && self.gap_below_eps
    }
}

/// Checks the subpair `(A', B')` of a pair `(A, B)`: whenever `(A, B)` is
/// eps-regular and both slices keep at least an `eps` share, the slice
/// should be eps'-regular with density within `eps` of the parent's.
pub fn slicing_check(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    eps: f64,
    a_sub: &[usize],
    b_sub: &[usize],
) -> Result<SlicingReport> {
    check_pair(g, a, b)?;
    check_pair(g, a_sub, b_sub)?;
    if !a_sub.iter().all(|v| a.contains(v)) || !b_sub.iter().all(|v| b.contains(v)) {
        return Err(Error::InvalidParameter("slices must be subsets of their sides".into()));
    }
    let parent_regular = is_eps_regular_exact(g, a, b, eps)?.regular;
    let ra = a_sub.len() as f64 / a.len() as f64;
    let rb = b_sub.len() as f64 / b.len() as f64;
    let alpha = ra.min(rb);
    let eps_prime = (eps / alpha).max(2.0 * eps).next_up();
    let alpha_at_least_eps = cmp_scaled(a_sub.len() as u128, a.len() as u128, eps) != Ordering::Less
        && cmp_scaled(b_sub.len() as u128, b.len() as u128, eps) != Ordering::Less;
    let child_regular = is_eps_regular_exact(g, a_sub, b_sub, eps_prime)?.regular;
    let e = g.cross_edge_count(a, b);
    let e_sub = g.cross_edge_count(a_sub, b_sub);
    let d = e as f64 / (a.len() * b.len()) as f64;
    let d_sub = e_sub as f64 / (a_sub.len() * b_sub.len()) as f64;
    let gap_below_eps = within(e_sub, a_sub.len(), b_sub.len(), e, a.len(), b.len(), eps);
    Ok(SlicingReport {
        alpha,
        eps_prime,
        parent_regular,
        alpha_at_least_eps,
        child_regular,
        density_gap: (d_sub - d).abs(),
        gap_below_eps,
    })
}
