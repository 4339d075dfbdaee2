//! k-uniform families over the ground set `[n] = {1, ..., n}`.
//!
//! Members are stored as 128-bit masks; vertex `v` occupies bit `v - 1`.
//! A [`SetFamily`] keeps its members sorted by comparing their sorted
//! element tuples lexicographically and never holds duplicates.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::bounds::choose;
use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 128;

/// Enumeration limit for `alpha` once `i > 4`.
pub const ALPHA_GUARD: u128 = 1_000_000;

/// A subset of `[n]`, `n <= 128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

/// A member of a k-uniform family. Uniformity is enforced by the owning
/// [`SetFamily`], not by the type.
pub type KSet = VertexSet;

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// Panics if `v` is not in `1..=128`.
    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&v), "vertex {v} out of range");
        VertexSet(1u128 << (v - 1))
    }

    /// The interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        (lo..=hi).map(VertexSet::singleton).fold(VertexSet::EMPTY, |a, b| a | b)
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_GROUND).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        *self = *self | VertexSet::singleton(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !VertexSet::singleton(v).0;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 128 - self.0.leading_zeros() as usize)
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Elements in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().map(VertexSet::singleton).fold(VertexSet::EMPTY, |a, b| a | b)
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

pub struct Elements(u128);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl Ord for VertexSet {
    /// Lexicographic order of the sorted element tuples.
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        // Everything strictly above the first differing element.
        let above = !(low | (low - 1));
        if self.0 & low != 0 {
            // `other` either continues with a larger element or stops here.
            if other.0 & above == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 & above == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// r-subsets of a vertex pool, yielded in lexicographic order.
pub struct Combinations {
    pool: Vec<usize>,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(pool: VertexSet, r: usize) -> Self {
        let pool = pool.to_vec();
        let done = r > pool.len();
        Combinations { idx: (0..r).collect(), pool, started: false, done }
    }
}

impl Iterator for Combinations {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        if self.started {
            let r = self.idx.len();
            let n = self.pool.len();
            let mut i = r;
            loop {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                i -= 1;
                if self.idx[i] < n - r + i {
                    break;
                }
            }
            self.idx[i] += 1;
            for j in i + 1..r {
                self.idx[j] = self.idx[j - 1] + 1;
            }
        }
        self.started = true;
        Some(self.idx.iter().map(|&i| self.pool[i]).collect())
    }
}

/// All r-subsets of `[n]` in lexicographic order.
pub fn subsets_of_ground(n: usize, r: usize) -> Combinations {
    Combinations::new(VertexSet::interval(1, n), r)
}

/// Ground-set size and uniformity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundParams {
    n: usize,
    k: usize,
}

impl GroundParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundTooLarge(n));
        }
        if k == 0 || k > n {
            return Err(Error::params(format!("need 1 <= k <= n, got n={n}, k={k}")));
        }
        Ok(GroundParams { n, k })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn ground(self) -> VertexSet {
        VertexSet::interval(1, self.n)
    }
}

/// A canonical k-uniform family over `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    params: GroundParams,
    members: Vec<KSet>,
}

impl SetFamily {
    pub fn empty(params: GroundParams) -> Self {
        SetFamily { params, members: Vec::new() }
    }

    /// Builds a family from masks, checking uniformity and range.
    /// Returns the family and the number of collapsed duplicates.
    pub fn from_sets(params: GroundParams, sets: impl IntoIterator<Item = VertexSet>) -> Result<(Self, usize)> {
        let ground = params.ground();
        let mut members = Vec::new();
        for s in sets {
            if !s.is_subset(ground) {
                let bad = (s - ground).min_element().unwrap_or(0);
                return Err(Error::ElementOutOfRange { element: bad as i64, n: params.n });
            }
            if s.len() != params.k {
                return Err(Error::WrongUniformity { expected: params.k, found: s.len() });
            }
            members.push(s);
        }
        let before = members.len();
        members.sort_unstable();
        members.dedup();
        let dups = before - members.len();
        Ok((SetFamily { params, members }, dups))
    }

    /// Skips range and uniformity checks; callers guarantee them.
    pub(crate) fn from_sets_unchecked(params: GroundParams, mut members: Vec<KSet>) -> Self {
        members.sort_unstable();
        members.dedup();
        debug_assert!(members.iter().all(|m| m.len() == params.k && m.is_subset(params.ground())));
        SetFamily { params, members }
    }

    pub fn params(&self) -> GroundParams {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: KSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> VertexSet {
        self.members.iter().fold(VertexSet::EMPTY, |a, &b| a | b)
    }

    /// Number of members containing each vertex, indexed by `v - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.params.n];
        for m in &self.members {
            for v in m.elements() {
                deg[v - 1] += 1;
            }
        }
        deg
    }

    pub fn union(&self, other: &SetFamily) -> SetFamily {
        assert_eq!(self.params, other.params, "ground parameters differ");
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        SetFamily::from_sets_unchecked(self.params, members)
    }

    pub fn filter(&self, mut keep: impl FnMut(KSet) -> bool) -> SetFamily {
        SetFamily {
            params: self.params,
            members: self.members.iter().copied().filter(|&m| keep(m)).collect(),
        }
    }

    pub fn is_intersecting(&self) -> bool {
        is_intersecting(self)
    }
}

/// Validates raw integer sets against `params`.
///
/// Returns the canonical family together with the number of duplicate
/// sets that were collapsed.
pub fn validate_family(raw: &[Vec<i64>], params: GroundParams) -> Result<(SetFamily, usize)> {
    let mut sets = Vec::with_capacity(raw.len());
    for set in raw {
        let mut s = VertexSet::EMPTY;
        for &e in set {
            if e < 1 || e as usize > params.n {
                return Err(Error::ElementOutOfRange { element: e, n: params.n });
            }
            s.insert(e as usize);
        }
        // Repeated elements inside one set shrink it below k.
        if s.len() != params.k || set.len() != params.k {
            return Err(Error::WrongUniformity { expected: params.k, found: set.len().max(s.len()) });
        }
        sets.push(s);
    }
    SetFamily::from_sets(params, sets)
}

/// True iff every two members share an element. Empty and single-member
/// families are intersecting.
pub fn is_intersecting(f: &SetFamily) -> bool {
    let m = &f.members;
    m.iter().enumerate().all(|(i, &a)| m[i + 1..].iter().all(|&b| a.intersects(b)))
}

/// Exact density `count / denominator`.
#[derive(Clone, Debug)]
pub struct Density {
    pub count: BigUint,
    pub denominator: BigUint,
}

impl Density {
    pub fn new(count: impl Into<BigUint>, denominator: BigUint) -> Self {
        Density { count: count.into(), denominator }
    }

    /// Reduced rational value. A zero denominator only arises for an
    /// empty link and is read as density 0.
    pub fn value(&self) -> BigRational {
        if self.denominator.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(self.count.clone().into(), self.denominator.clone().into())
    }

    pub fn to_f64(&self) -> f64 {
        self.value().to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.value() == other.value()
    }
}

impl Eq for Density {}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value().cmp(&other.value())
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::bounds::format_rational(&self.value()))
    }
}

/// `|F| / C(n, k)`.
pub fn density(f: &SetFamily) -> Density {
    Density::new(f.len(), choose(f.n() as u64, f.k() as u64))
}

/// The subfamily `F(X)` of members containing a fixed set `X`.
#[derive(Clone, Debug)]
pub struct Link {
    pub fixed: VertexSet,
    pub family: SetFamily,
}

impl Link {
    /// `|F(X)| / C(n - |X|, k - |X|)`.
    pub fn density(&self) -> Density {
        let (n, k, x) = (self.family.n() as u64, self.family.k() as u64, self.fixed.len() as u64);
        Density::new(self.family.len(), choose(n - x, k - x))
    }
}

pub fn link(f: &SetFamily, x: VertexSet) -> Result<Link> {
    if !x.is_subset(f.params.ground()) {
        return Err(Error::params(format!("{x} is not a subset of [{}]", f.n())));
    }
    if x.len() > f.k() {
        return Err(Error::params(format!("|X| = {} exceeds k = {}", x.len(), f.k())));
    }
    Ok(Link { fixed: x, family: f.filter(|m| x.is_subset(m)) })
}

/// Largest link density over all `i`-subsets `X` of `[n]`, with the
/// lexicographically smallest maximizer.
pub fn alpha(f: &SetFamily, i: usize) -> Result<(Density, VertexSet)> {
    let (n, k) = (f.n(), f.k());
    if i > k {
        return Err(Error::params(format!("alpha index {i} exceeds k = {k}")));
    }
    let candidates = choose(n as u64, i as u64);
    if i > 4 && candidates > BigUint::from(ALPHA_GUARD) {
        return Err(Error::guard(format!("alpha_{i} would enumerate C({n},{i}) = {candidates} sets")));
    }

    // Only i-sets inside some member can have a nonzero link.
    let mut counts: HashMap<VertexSet, usize> = HashMap::new();
    for &m in f.members() {
        for x in Combinations::new(m, i) {
            *counts.entry(x).or_insert(0) += 1;
        }
    }
    let best = counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
    let (witness, count) = best.unwrap_or((VertexSet::interval(1, i), 0));
    let denom = choose((n - i) as u64, (k - i) as u64);
    Ok((Density::new(count, denom), witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, k: usize, sets: &[&[i64]]) -> SetFamily {
        let raw: Vec<Vec<i64>> = sets.iter().map(|s| s.to_vec()).collect();
        validate_family(&raw, GroundParams::new(n, k).unwrap()).unwrap().0
    }

    fn star4() -> SetFamily {
        fam(4, 2, &[&[1, 2], &[1, 3], &[1, 4]])
    }

    pub(crate) fn fano() -> SetFamily {
        fam(7, 3, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[2, 4, 6], &[2, 5, 7], &[3, 4, 7], &[3, 5, 6]])
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn duplicates_collapse() {
        let p = GroundParams::new(4, 2).unwrap();
        let (f, dups) = validate_family(&[vec![1, 2], vec![2, 1]], p).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(dups, 1);
    }

    #[test]
    fn rejects_wrong_uniformity_and_range() {
        let p = GroundParams::new(4, 2).unwrap();
        assert!(matches!(validate_family(&[vec![1, 2, 3]], p), Err(Error::WrongUniformity { .. })));
        assert!(matches!(validate_family(&[vec![1, 5]], p), Err(Error::ElementOutOfRange { element: 5, .. })));
        assert!(matches!(validate_family(&[vec![0, 1]], p), Err(Error::ElementOutOfRange { element: 0, .. })));
        assert!(matches!(validate_family(&[vec![2, 2]], p), Err(Error::WrongUniformity { .. })));
        assert!(GroundParams::new(129, 2).is_err());
        assert!(GroundParams::new(4, 0).is_err());
    }

    #[test]
    fn canonical_order_is_tuple_lex() {
        let f = fam(5, 2, &[&[2, 3], &[1, 5], &[1, 2], &[3, 4]]);
        let tuples: Vec<Vec<usize>> = f.members().iter().map(|m| m.to_vec()).collect();
        assert_eq!(tuples, vec![vec![1, 2], vec![1, 5], vec![2, 3], vec![3, 4]]);
    }

    #[test]
    fn vertex_set_order_matches_vec_order() {
        let sets: Vec<VertexSet> = (0u128..512).map(|b| VertexSet::from_bits(b << 1)).collect();
        for &a in &sets {
            for &b in &sets {
                assert_eq!(a.cmp(&b), a.to_vec().cmp(&b.to_vec()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn intersecting_examples() {
        assert!(!fam(4, 2, &[&[1, 2], &[3, 4]]).is_intersecting());
        assert!(star4().is_intersecting());
        assert!(fano().is_intersecting());
        assert!(SetFamily::empty(GroundParams::new(4, 2).unwrap()).is_intersecting());
    }

    #[test]
    fn link_examples() {
        let f = star4();
        let l = link(&f, VertexSet::singleton(1)).unwrap();
        assert_eq!(l.family.len(), 3);
        assert_eq!(l.density().value(), ratio(1, 1));

        let l = link(&f, VertexSet::singleton(2)).unwrap();
        assert_eq!(l.family.members(), &[[1usize, 2].into_iter().collect::<VertexSet>()]);
        assert_eq!(l.density().value(), ratio(1, 3));

        assert_eq!(link(&f, VertexSet::EMPTY).unwrap().family, f);
        assert!(link(&f, [1usize, 2, 3].into_iter().collect()).is_err());
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(&star4()).value(), ratio(1, 2));
        assert_eq!(density(&SetFamily::empty(GroundParams::new(4, 2).unwrap())).value(), ratio(0, 1));
        assert_eq!(density(&fano()).value(), ratio(1, 5));
    }

    #[test]
    fn alpha_examples() {
        let (d, _) = alpha(&star4(), 0).unwrap();
        assert_eq!(d.value(), ratio(1, 2));
        let (d, w) = alpha(&star4(), 1).unwrap();
        assert_eq!(d.value(), ratio(1, 1));
        assert_eq!(w, VertexSet::singleton(1));

        // Every point of the Fano plane lies on three lines; the tie goes to {1}.
        let (d, w) = alpha(&fano(), 1).unwrap();
        assert_eq!(d.value(), ratio(1, 5));
        assert_eq!(w, VertexSet::singleton(1));

        assert!(alpha(&fano(), 4).is_err());
    }

    #[test]
    fn alpha_guard() {
        let p = GroundParams::new(60, 10).unwrap();
        let f = SetFamily::empty(p);
        assert!(matches!(alpha(&f, 5), Err(Error::GuardExceeded(_))));
        assert!(alpha(&f, 4).is_ok());
    }

    #[test]
    fn combinations_are_lex_and_complete() {
        let all: Vec<VertexSet> = subsets_of_ground(6, 3).collect();
        assert_eq!(all.len(), 20);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(subsets_of_ground(4, 0).count(), 1);
        assert_eq!(subsets_of_ground(3, 4).count(), 0);
    }
}
