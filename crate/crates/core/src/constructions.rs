//! Named intersecting families.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::bounds::{choose, m_k_range};
use crate::error::{Error, Result};
use crate::family::{Combinations, GroundParams, KSet, SetFamily, VertexSet};

/// Largest family (or candidate pool) a generator will materialize.
pub const MATERIALIZE_LIMIT: u64 = 10_000_000;

fn check_materialize(what: &str, count: &BigUint) -> Result<()> {
    if *count > BigUint::from(MATERIALIZE_LIMIT) {
        return Err(Error::guard(format!("{what} has {count} sets, above the limit of {MATERIALIZE_LIMIT}")));
    }
    Ok(())
}

/// All k-subsets of `[n]` containing `x`.
pub fn full_star(n: usize, k: usize, x: usize) -> Result<SetFamily> {
    let params = GroundParams::new(n, k)?;
    if !(1..=n).contains(&x) {
        return Err(Error::params(format!("center {x} outside [1, {n}]")));
    }
    check_materialize("full star", &choose(n as u64 - 1, k as u64 - 1))?;
    let center = VertexSet::singleton(x);
    let rest = params.ground() - center;
    let members = Combinations::new(rest, k - 1).map(|s| s | center).collect();
    Ok(SetFamily::from_sets_unchecked(params, members))
}

/// Parameters of `A_t(n, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ATParams {
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

impl ATParams {
    pub fn new(n: usize, k: usize, t: usize) -> Result<Self> {
        if k == 0 || n < 2 * k {
            return Err(Error::params(format!("A_t needs n >= 2k > 0, got n={n}, k={k}")));
        }
        // At t = k the family is C([2,2k],k) plus nothing else: neither
        // shifted nor of covering number t+1.
        if t == 0 || t >= k {
            return Err(Error::params(format!("A_t needs k > t >= 1, got k={k}, t={t}")));
        }
        GroundParams::new(n, k)?;
        Ok(ATParams { n, k, t })
    }

    /// `[2, k+t]`.
    pub fn block(&self) -> VertexSet {
        VertexSet::interval(2, self.k + self.t)
    }

    /// `C(k+t-1, k) + sum_{j=t}^{k-1} C(k+t-1, j) C(n-k-t, k-1-j)`.
    pub fn size(&self) -> BigUint {
        let (n, k, t) = (self.n as u64, self.k as u64, self.t as u64);
        let b = k + t - 1;
        let mut total = choose(b, k);
        for j in t..k {
            total += choose(b, j) * choose(n - k - t, k - 1 - j);
        }
        total
    }
}

/// `A_t = C([2,k+t], k)` together with every k-set that contains 1 and
/// meets `[2,k+t]` in at least `t` elements.
pub fn a_family(p: ATParams) -> Result<SetFamily> {
    let params = GroundParams::new(p.n, p.k)?;
    check_materialize("A_t", &p.size())?;
    let block = p.block();
    let rest = VertexSet::interval(p.k + p.t + 1, p.n);
    let one = VertexSet::singleton(1);

    let mut members: Vec<KSet> = Combinations::new(block, p.k).collect();
    for j in p.t..p.k {
        let outside: Vec<VertexSet> = Combinations::new(rest, p.k - 1 - j).collect();
        for inside in Combinations::new(block, j) {
            members.extend(outside.iter().map(|&o| one | inside | o));
        }
    }
    Ok(SetFamily::from_sets_unchecked(params, members))
}

/// Parameters of the layered Erdős–Lovász family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ELParams {
    pub k: usize,
}

impl ELParams {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::params("Erdős–Lovász family needs k >= 1"));
        }
        let p = ELParams { k };
        if p.ground_size() > crate::family::MAX_GROUND {
            return Err(Error::GroundTooLarge(p.ground_size()));
        }
        Ok(p)
    }

    /// `k(k+1)/2`.
    pub fn ground_size(&self) -> usize {
        self.k * (self.k + 1) / 2
    }

    /// Block `X_i = [i(i-1)/2 + 1, i(i+1)/2]`, so `|X_i| = i`.
    pub fn block(&self, i: usize) -> VertexSet {
        VertexSet::interval(i * (i - 1) / 2 + 1, i * (i + 1) / 2)
    }

    /// `k!/i!` for each layer `i = 1..=k`.
    pub fn layer_sizes(&self) -> Vec<BigUint> {
        (1..=self.k)
            .map(|i| ((i + 1)..=self.k).fold(BigUint::from(1u32), |acc, j| acc * j))
            .collect()
    }
}

/// The Erdős–Lovász family split into its layers `E_1, ..., E_k`.
#[derive(Clone, Debug)]
pub struct ElFamily {
    pub params: ELParams,
    pub layers: Vec<SetFamily>,
    pub family: SetFamily,
}

impl ElFamily {
    /// `floor(e k!)`, the size stated for this family alongside the
    /// bracket on `m(k)`.
    pub fn stated_size(&self) -> BigUint {
        m_k_range(self.params.k as u64).expect("k >= 1").lower
    }

    /// True when the enumerated size differs from [`Self::stated_size`].
    pub fn size_discrepancy(&self) -> bool {
        BigUint::from(self.family.len()) != self.stated_size()
    }
}

/// `E_i = { X_i ∪ {y_{i+1}, ..., y_k} : y_j ∈ X_j }`, `E = E_1 ∪ ... ∪ E_k`.
pub fn erdos_lovasz(p: ELParams) -> Result<ElFamily> {
    let k = p.k;
    let params = GroundParams::new(p.ground_size(), k)?;
    let total: BigUint = p.layer_sizes().into_iter().sum();
    check_materialize("Erdős–Lovász family", &total)?;

    let mut layers = Vec::with_capacity(k);
    for i in 1..=k {
        let mut sets = vec![p.block(i)];
        for j in i + 1..=k {
            let choices: Vec<usize> = p.block(j).elements().collect();
            sets = sets
                .iter()
                .flat_map(|&s| choices.iter().map(move |&y| s | VertexSet::singleton(y)))
                .collect();
        }
        layers.push(SetFamily::from_sets_unchecked(params, sets));
    }
    let family = SetFamily::from_sets_unchecked(
        params,
        layers.iter().flat_map(|l| l.members().iter().copied()).collect(),
    );
    Ok(ElFamily { params: p, layers, family })
}

/// Parameters of the two-part window construction `G = G1 ∪ G2`.
///
/// `s = (l+1)(m+2)`, `n = 1 + s(2m+1)`, `k = 1 + (l+f1+1)(2m+1)`; the
/// windows `W_1, ..., W_{2m+1}` are consecutive blocks of size `s`
/// partitioning `[2, n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GParams {
    pub ell: usize,
    pub m: usize,
    pub f1: usize,
    pub s: usize,
    pub n: usize,
    pub k: usize,
}

impl GParams {
    pub fn new(ell: usize, m: usize, f1: usize) -> Result<Self> {
        if ell < 1 || m < 1 {
            return Err(Error::params(format!("G needs l >= 1 and m >= 1, got l={ell}, m={m}")));
        }
        let s = (ell + 1) * (m + 2);
        let windows = 2 * m + 1;
        let n = 1 + s * windows;
        let k = 1 + (ell + f1 + 1) * windows;
        let mut failures = Vec::new();
        if n < 2 * k {
            failures.push(format!("n >= 2k fails (n={n}, k={k})"));
        }
        if !(k > s && s > 2 * (ell + 1)) {
            failures.push(format!("k > s > 2(l+1) fails (k={k}, s={s}, 2(l+1)={})", 2 * (ell + 1)));
        }
        if k < (s - ell) + (ell + 1) * m {
            failures.push(format!("k >= (s-l)+(l+1)m fails (k={k}, needed {})", (s - ell) + (ell + 1) * m));
        }
        if !failures.is_empty() {
            return Err(Error::params(failures.join("; ")));
        }
        Ok(GParams { ell, m, f1, s, n, k })
    }

    pub fn window_count(&self) -> usize {
        2 * self.m + 1
    }

    /// `W_i = [2 + (i-1)s, 1 + is]`, `i = 1..=2m+1`.
    pub fn windows(&self) -> Result<Vec<VertexSet>> {
        if self.n > crate::family::MAX_GROUND {
            return Err(Error::GroundTooLarge(self.n));
        }
        Ok((1..=self.window_count())
            .map(|i| VertexSet::interval(2 + (i - 1) * self.s, 1 + i * self.s))
            .collect())
    }

    /// `min{1 + (l+1)(2m+1), (s-l) + (l+1)m, 2(s-l)}`.
    pub fn tau_formula(&self) -> usize {
        let (l, m, s) = (self.ell, self.m, self.s);
        (1 + (l + 1) * (2 * m + 1)).min((s - l) + (l + 1) * m).min(2 * (s - l))
    }

    /// `(l+1)k / (l+f1+1)`, the guaranteed lower bound on `tau(G)`.
    pub fn tau_guarantee(&self) -> BigRational {
        BigRational::new(
            ((self.ell + 1) * self.k).into(),
            (self.ell + self.f1 + 1).into(),
        )
    }

    /// Counts per window determine membership; `counts[i]` is `|A ∩ W_{i+1}|`.
    fn in_g1(&self, has_one: bool, counts: &[usize]) -> bool {
        has_one && counts.iter().all(|&c| c > self.ell)
    }

    fn in_g2(&self, counts: &[usize]) -> bool {
        let w = counts.len();
        (0..w).any(|i| counts[i] + self.ell >= self.s && (1..=self.m).all(|j| counts[(i + j) % w] > self.ell))
    }
}

/// The materialized construction with its part sizes.
#[derive(Clone, Debug)]
pub struct GFamily {
    pub params: GParams,
    pub family: SetFamily,
    pub g1: usize,
    pub g2: usize,
    pub overlap: usize,
}

/// Materializes `G` by testing every k-subset of `[n]`.
pub fn fot_g(p: GParams) -> Result<GFamily> {
    let windows = p.windows()?;
    let params = GroundParams::new(p.n, p.k)?;
    check_materialize("candidate pool C(n,k)", &choose(p.n as u64, p.k as u64))?;
    let one = VertexSet::singleton(1);
    let (mut g1, mut g2, mut overlap) = (0, 0, 0);
    let mut members = Vec::new();
    let mut counts = vec![0; windows.len()];
    for a in Combinations::new(params.ground(), p.k) {
        for (c, &w) in counts.iter_mut().zip(&windows) {
            *c = (a & w).len();
        }
        let in1 = p.in_g1(a.intersects(one), &counts);
        let in2 = p.in_g2(&counts);
        g1 += in1 as usize;
        g2 += in2 as usize;
        overlap += (in1 && in2) as usize;
        if in1 || in2 {
            members.push(a);
        }
    }
    Ok(GFamily { params: p, family: SetFamily::from_sets_unchecked(params, members), g1, g2, overlap })
}

/// Exact sizes of `G1`, `G2` and `G1 ∩ G2` without materializing `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCounts {
    pub g1: BigUint,
    pub g2: BigUint,
    pub overlap: BigUint,
}

impl GCounts {
    pub fn total(&self) -> BigUint {
        &self.g1 + &self.g2 - &self.overlap
    }
}

/// `|G1|` is the coefficient of `x^{k-1}` in
/// `(sum_{a=l+1}^{s} C(s,a) x^a)^{2m+1}`. `|G2|` and the overlap depend
/// only on how many elements a set has in each window and whether it holds
/// 1, so they are summed over those count vectors.
pub fn g_counts(p: GParams) -> GCounts {
    let (s, k) = (p.s, p.k);
    let window: Vec<BigUint> = (0..=s)
        .map(|a| if a > p.ell { choose(s as u64, a as u64) } else { BigUint::zero() })
        .collect();
    let mut poly = vec![BigUint::from(1u32)];
    for _ in 0..p.window_count() {
        let mut next = vec![BigUint::zero(); (poly.len() + s).min(k)];
        for (i, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in window.iter().enumerate() {
                if i + j < next.len() && !b.is_zero() {
                    next[i + j] += a * b;
                }
            }
        }
        poly = next;
    }
    let g1 = poly.get(k - 1).cloned().unwrap_or_default();

    let binom: Vec<BigUint> = (0..=s).map(|a| choose(s as u64, a as u64)).collect();
    let mut g2 = BigUint::zero();
    let mut overlap = BigUint::zero();
    let mut counts = Vec::with_capacity(p.window_count());
    count_vectors(&p, &binom, &mut counts, k, BigUint::from(1u32), &mut |counts, with_one, weight| {
        if p.in_g2(counts) {
            g2 += weight;
            if with_one && p.in_g1(true, counts) {
                overlap += weight;
            }
        }
    });
    GCounts { g1, g2, overlap }
}

/// Calls `visit(counts, contains_one, weight)` for every split of a k-set
/// over `{1}` and the windows, weighted by the number of such sets.
fn count_vectors(
    p: &GParams,
    binom: &[BigUint],
    counts: &mut Vec<usize>,
    remaining: usize,
    weight: BigUint,
    visit: &mut impl FnMut(&[usize], bool, &BigUint),
) {
    let w = p.window_count();
    if counts.len() == w {
        // The leftover is 0 (no 1) or 1 (contains 1).
        if remaining <= 1 {
            visit(counts, remaining == 1, &weight);
        }
        return;
    }
    let windows_left = w - counts.len() - 1;
    // Later windows plus element 1 can absorb at most this many.
    let capacity = windows_left * p.s + 1;
    let lo = remaining.saturating_sub(capacity);
    for a in lo..=remaining.min(p.s) {
        counts.push(a);
        count_vectors(p, binom, counts, remaining - a, &weight * &binom[a], visit);
        counts.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::hm_bound;
    use crate::family::subsets_of_ground;
    use crate::shifting::is_shifted;
    use crate::transversal::tau;

    #[test]
    fn star_examples() {
        let f = full_star(4, 2, 1).unwrap();
        let tuples: Vec<Vec<usize>> = f.members().iter().map(|m| m.to_vec()).collect();
        assert_eq!(tuples, vec![vec![1, 2], vec![1, 3], vec![1, 4]]);
        assert_eq!(full_star(5, 2, 5).unwrap().len(), 4);
        assert_eq!(full_star(7, 3, 1).unwrap().len(), 15);
        assert!(full_star(4, 2, 5).is_err());
        assert!(full_star(4, 5, 1).is_err());
    }

    #[test]
    fn a_family_sizes() {
        let f = a_family(ATParams::new(12, 4, 1).unwrap()).unwrap();
        assert_eq!(f.len(), 131);
        assert_eq!(BigUint::from(f.len()), hm_bound(12, 4).exact_integer().unwrap());
        let p = ATParams::new(12, 4, 2).unwrap();
        let f = a_family(p).unwrap();
        assert_eq!(f.len(), 75);
        assert_eq!(p.size(), BigUint::from(75u32));
    }

    #[test]
    fn a_family_matches_filtered_enumeration() {
        // Literal definition applied to every k-subset of [n].
        for (n, k, t) in [(12, 4, 1), (12, 4, 2), (8, 3, 2), (10, 5, 3), (6, 3, 1)] {
            let p = ATParams::new(n, k, t).unwrap();
            let block = p.block();
            let direct: Vec<VertexSet> = subsets_of_ground(n, k)
                .filter(|&a| a.is_subset(block) || (a.contains(1) && (a & block).len() >= t))
                .collect();
            assert_eq!(a_family(p).unwrap().members(), &direct[..], "({n},{k},{t})");
        }
    }

    #[test]
    fn a_family_structure() {
        let f = a_family(ATParams::new(12, 4, 2).unwrap()).unwrap();
        assert!(f.is_intersecting());
        assert!(is_shifted(&f));
        assert_eq!(tau(&f).unwrap(), 3);
    }

    #[test]
    fn a_params_validation() {
        assert!(ATParams::new(7, 4, 1).is_err());
        assert!(ATParams::new(12, 4, 0).is_err());
        assert!(ATParams::new(12, 4, 5).is_err());
        assert!(ATParams::new(12, 4, 4).is_err());
        assert!(ATParams::new(12, 4, 3).is_ok());
    }

    #[test]
    fn erdos_lovasz_examples() {
        let e = erdos_lovasz(ELParams::new(2).unwrap()).unwrap();
        assert_eq!(e.family.len(), 3);
        assert_eq!(e.family.n(), 3);

        let e = erdos_lovasz(ELParams::new(3).unwrap()).unwrap();
        assert_eq!(e.family.len(), 10);
        let sizes: Vec<usize> = e.layers.iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![6, 3, 1]);
        assert_eq!(tau(&e.family).unwrap(), 3);
        assert!(e.size_discrepancy());
        assert_eq!(e.stated_size(), BigUint::from(16u32));

        let e = erdos_lovasz(ELParams::new(1).unwrap()).unwrap();
        assert_eq!(e.family.members(), &[VertexSet::singleton(1)]);
        assert_eq!(tau(&e.family).unwrap(), 1);
    }

    #[test]
    fn erdos_lovasz_blocks_partition_ground() {
        let p = ELParams::new(5).unwrap();
        let union = (1..=5).map(|i| p.block(i)).fold(VertexSet::EMPTY, |a, b| a | b);
        assert_eq!(union, VertexSet::interval(1, 15));
        assert!((1..=5).all(|i| p.block(i).len() == i));
    }

    #[test]
    fn erdos_lovasz_guards() {
        assert!(ELParams::new(0).is_err());
        assert!(matches!(ELParams::new(16), Err(Error::GroundTooLarge(136))));
        assert!(matches!(erdos_lovasz(ELParams::new(12).unwrap()), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn g_params_derived_values() {
        let p = GParams::new(1, 1, 0).unwrap();
        assert_eq!((p.n, p.k, p.s), (19, 7, 6));
        assert_eq!(p.tau_formula(), 7);
        assert_eq!(p.tau_guarantee(), BigRational::from_integer(7.into()));

        let p = GParams::new(2, 1, 1).unwrap();
        assert_eq!((p.n, p.k, p.s), (28, 13, 9));
        assert_eq!(p.tau_formula(), 10);
        assert_eq!(p.tau_guarantee(), BigRational::new(39.into(), 4.into()));
        assert!(p.tau_guarantee() < BigRational::from_integer(p.tau_formula().into()));

        assert!(GParams::new(0, 1, 0).is_err());
        // f1 large makes n < 2k.
        let err = GParams::new(1, 1, 3).unwrap_err().to_string();
        assert!(err.contains("n >= 2k"), "{err}");
    }

    #[test]
    fn g_counts_examples() {
        let c = g_counts(GParams::new(1, 1, 0).unwrap());
        assert_eq!(c.g1, BigUint::from(3375u32));
        assert_eq!(c.g2, BigUint::from(270u32));
        assert_eq!(c.overlap, BigUint::zero());

        let c = g_counts(GParams::new(1, 2, 0).unwrap());
        assert_eq!(c.g1, BigUint::from(17_210_368u64));
        assert_eq!(c.g1, choose(8, 2).pow(5));
    }

    #[test]
    fn g_counts_unique_composition() {
        // k - 1 = (l+1)(2m+1) leaves exactly one composition.
        for (l, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
            let p = GParams::new(l, m, 0).unwrap();
            let c = g_counts(p);
            assert_eq!(c.g1, choose(p.s as u64, l as u64 + 1).pow(2 * m as u32 + 1));
        }
    }

    #[test]
    fn g_enumeration_matches_counts() {
        let p = GParams::new(1, 1, 0).unwrap();
        let g = fot_g(p).unwrap();
        assert_eq!((g.g1, g.g2, g.overlap), (3375, 270, 0));
        assert_eq!(g.family.len(), 3645);
        let c = g_counts(p);
        assert_eq!(c.total(), BigUint::from(g.family.len()));
    }

    #[test]
    fn g_counts_match_direct_enumeration_beyond_materialize_limit() {
        // C(28,10) is above the materialize limit, so apply the membership
        // rules to every 10-subset here directly.
        let p = GParams::new(2, 1, 0).unwrap();
        let windows = p.windows().unwrap();
        let (l, s) = (p.ell, p.s);
        let (mut g1, mut g2, mut both) = (0u64, 0u64, 0u64);
        for a in subsets_of_ground(p.n, p.k) {
            let c: Vec<usize> = windows.iter().map(|&w| (a & w).len()).collect();
            let in1 = a.contains(1) && c.iter().all(|&x| x >= l + 1);
            let in2 = (0..3).any(|i| c[i] >= s - l && c[(i + 1) % 3] >= l + 1);
            g1 += in1 as u64;
            g2 += in2 as u64;
            both += (in1 && in2) as u64;
        }
        let counts = g_counts(p);
        assert_eq!(counts.g1, BigUint::from(g1));
        assert_eq!(counts.g2, BigUint::from(g2));
        assert_eq!(counts.overlap, BigUint::from(both));
    }

    #[test]
    fn g_overlap_appears_for_wide_sets() {
        // 1 + (s-l) + (l+1)2m <= k lets a set satisfy both parts.
        let p = GParams::new(4, 1, 2).unwrap();
        assert!(1 + (p.s - p.ell) + (p.ell + 1) * 2 * p.m <= p.k);
        let c = g_counts(p);
        assert!(c.overlap > BigUint::zero());
        assert!(c.total() <= choose(p.n as u64, p.k as u64));
    }
}
