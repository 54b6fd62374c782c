//! Closed-form quantities: the tiling threshold `T_{s,t}(alpha)`, the
//! Erdős–Gallai extremal number, branch crossovers, and the consistency
//! comparators tying them to the `M`/`L` constructions.

use crate::error::{Error, Result};
use crate::graph::{l_edge_count, m_edge_count};

/// `(s, t, alpha, eps)` with `1 <= s <= t` and `alpha, eps` in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdParams {
    pub s: usize,
    pub t: usize,
    pub alpha: f64,
    pub eps: f64,
}

impl ThresholdParams {
    pub fn new(s: usize, t: usize, alpha: f64, eps: f64) -> Result<Self> {
        check_classes(s, t)?;
        check_unit("alpha", alpha)?;
        check_unit("eps", eps)?;
        Ok(ThresholdParams { s, t, alpha, eps })
    }

    pub fn threshold(&self) -> f64 {
        threshold_value(self.s, self.t, self.alpha)
    }

    pub fn epsilon_prime(&self) -> Result<f64> {
        epsilon_prime(self.s, self.t, self.alpha, self.eps)
    }
}

fn check_classes(s: usize, t: usize) -> Result<()> {
    if s == 0 || s > t {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= t, got s = {s}, t = {t}")));
    }
    Ok(())
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {x}")));
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `s / (s + t)` computed from the reduced pair, so `(ks, kt)` yields the
/// same bits as `(s, t)`.
pub fn small_fraction(s: usize, t: usize) -> f64 {
    let g = gcd(s, t).max(1);
    let (s, t) = (s / g, t / g);
    s as f64 / (s + t) as f64
}

fn threshold_value(s: usize, t: usize, alpha: f64) -> f64 {
    let (m_branch, l_branch) = threshold_branches(s, t, alpha);
    m_branch.max(l_branch)
}

/// The two branches of the threshold: the `M`-type density
/// `2 sigma alpha (1 - sigma alpha / 2)` and the `L`-type density `alpha^2`.
pub fn threshold_branches(s: usize, t: usize, alpha: f64) -> (f64, f64) {
    let sigma = small_fraction(s, t);
    let x = sigma * alpha;
    (2.0 * x * (1.0 - x / 2.0), alpha * alpha)
}

/// `T_{s,t}(alpha) = max{ (2s alpha/(s+t))(1 - s alpha/(2(s+t))), alpha^2 }`.
pub fn threshold_t(s: usize, t: usize, alpha: f64) -> Result<f64> {
    check_classes(s, t)?;
    check_unit("alpha", alpha)?;
    Ok(threshold_value(s, t, alpha))
}

/// The `alpha` where both branches of [`threshold_t`] coincide:
/// `2 sigma / (1 + sigma^2)` with `sigma = s / (s + t)`.
pub fn crossover_alpha(s: usize, t: usize) -> Result<f64> {
    check_classes(s, t)?;
    let sigma = small_fraction(s, t);
    Ok(2.0 * sigma / (1.0 + sigma * sigma))
}

fn binom2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// `ex(n, l x K2) = max{ (l-1)(n-l+1) + C(l-1, 2), C(2l-1, 2) }` for
/// `1 <= l <= n/2`.
pub fn erdos_gallai_ex(n: u64, l: u64) -> Result<u64> {
    if l == 0 || 2 * l > n {
        return Err(Error::InvalidParameter(format!("need 1 <= l <= n/2, got l = {l}, n = {n}")));
    }
    let clique_join = (l - 1) * (n - l + 1) + binom2(l - 1);
    let clique = binom2(2 * l - 1);
    Ok(clique_join.max(clique))
}

/// `|T_{s,s}(alpha) C(n,2) - ex(n, floor(alpha n / 2) x K2)|`.
pub fn check_eq3_consistency(s: usize, alpha: f64, n: u64) -> Result<f64> {
    let t_val = threshold_t(s, s, alpha)?;
    let l = (alpha * n as f64 / 2.0).floor() as u64;
    let ex = erdos_gallai_ex(n, l)?;
    Ok((t_val * binom2(n) as f64 - ex as f64).abs())
}

/// Which construction attains the maximum in
/// [`check_t_matches_constructions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    M,
    L,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstructionComparison {
    pub residual: f64,
    pub m_edges: u64,
    pub l_edges: u64,
    pub attained_by: Branch,
}

/// Compares `T_{s,t}(alpha) C(n,2)` against the larger of
/// `e(M(n, round(alpha s n/(s+t))))` and `e(L(n, round(alpha n)))`, with
/// round-half-to-even.
pub fn check_t_matches_constructions(s: usize, t: usize, alpha: f64, n: u64) -> Result<ConstructionComparison> {
    let t_val = threshold_t(s, t, alpha)?;
    let nf = n as f64;
    let xm = (alpha * small_fraction(s, t) * nf).round_ties_even() as u64;
    let xl = (alpha * nf).round_ties_even() as u64;
    if xm > n || xl > n {
        return Err(Error::InvalidParameter("rounded construction sizes exceed n".into()));
    }
    let m_edges = m_edge_count(n, xm);
    let l_edges = l_edge_count(xl);
    let (best, attained_by) = if m_edges >= l_edges { (m_edges, Branch::M) } else { (l_edges, Branch::L) };
    Ok(ConstructionComparison {
        residual: (t_val * binom2(n) as f64 - best as f64).abs(),
        m_edges,
        l_edges,
        attained_by,
    })
}

/// Kővári–Sós–Turán style upper bound
/// `(1/2)((t-1)^{1/s} (n-s+1) n^{1-1/s} + (s-1) n)` on `ex(n, K_{s,t})`.
/// The explicit constant is the classical one.
pub fn kst_upper_bound(n: u64, s: usize, t: usize) -> Result<f64> {
    check_classes(s, t)?;
    if (t as u64) > n {
        return Err(Error::InvalidParameter(format!("need t <= n, got t = {t}, n = {n}")));
    }
    let (nf, sf, tf) = (n as f64, s as f64, t as f64);
    let inv = 1.0 / sf;
    Ok(0.5 * ((tf - 1.0).powf(inv) * (nf - sf + 1.0) * nf.powf(1.0 - inv) + (sf - 1.0) * nf))
}

/// `eps' = (1/4) min{ eps alpha^2/(3t+1), eps s alpha/((3t+1)(s+t)) }`,
/// defined for `t > s >= 1`.
pub fn epsilon_prime(s: usize, t: usize, alpha: f64, eps: f64) -> Result<f64> {
    check_classes(s, t)?;
    if s >= t {
        return Err(Error::InvalidParameter(format!("eps' needs t > s, got s = {s}, t = {t}")));
    }
    check_unit("alpha", alpha)?;
    check_unit("eps", eps)?;
    let (sf, tf) = (s as f64, t as f64);
    let a = eps * alpha * alpha / (3.0 * tf + 1.0);
    let b = eps * sf * alpha / ((3.0 * tf + 1.0) * (sf + tf));
    Ok(0.25 * a.min(b))
}
