//! Exhaustive ground truth for `m(n, k, tau)` on tiny instances.
//!
//! Intersecting families are the cliques of the graph on `C([n], k)` whose
//! edges join intersecting pairs. The covering number never decreases when
//! a member is added, so the largest family with `tau >= t` is a maximal
//! clique. For exact `tau`, removing or adding one member changes `tau` by
//! at most one; inside a maximal clique `C` with `tau(C) >= t` the largest
//! subfamily with `tau` exactly `t` is therefore the largest subfamily with
//! `tau <= t`, which is the set of members meeting some `t`-set `T`.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::bounds::choose;
use crate::error::{Error, Result};
use crate::family::{subsets_of_ground, GroundParams, KSet, SetFamily, VertexSet};
use crate::transversal::{covering_number, tau, tau_at_least};

/// Largest `C(n, k)` the oracle accepts.
pub const ORACLE_GUARD: u64 = 40;

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub n: usize,
    pub k: usize,
    pub tau: usize,
    pub m_value: usize,
    pub witness: SetFamily,
    pub families_examined: u64,
    pub wall_time: Duration,
}

/// All k-subsets of `[n]` in canonical order, with intersection adjacency.
struct Pool {
    params: GroundParams,
    sets: Vec<KSet>,
    /// `adj[i]` has bit `j` set iff `sets[i]` meets `sets[j]`, `i != j`.
    adj: Vec<u64>,
}

impl Pool {
    fn new(n: usize, k: usize) -> Result<Self> {
        let params = GroundParams::new(n, k)?;
        let size = choose(n as u64, k as u64);
        if size > ORACLE_GUARD.into() {
            return Err(Error::guard(format!("oracle needs C(n,k) <= {ORACLE_GUARD}, got C({n},{k}) = {size}")));
        }
        let sets: Vec<KSet> = subsets_of_ground(n, k).collect();
        let adj = sets
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                sets.iter()
                    .enumerate()
                    .filter(|&(j, &b)| j != i && a.intersects(b))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Ok(Pool { params, sets, adj })
    }

    fn family(&self, mask: u64) -> SetFamily {
        let members = (0..self.sets.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.sets[i]).collect();
        SetFamily::from_sets_unchecked(self.params, members)
    }

    fn maximal_cliques(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let all = if self.sets.len() == 64 { u64::MAX } else { (1u64 << self.sets.len()) - 1 };
        self.bron_kerbosch(0, all, 0, &mut out);
        out.sort_by(|&a, &b| family_order(a, b));
        out
    }

    /// Bron–Kerbosch with Tomita pivoting.
    fn bron_kerbosch(&self, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let mut px = p | x;
        let mut pivot = 0;
        let mut best = -1i32;
        while px != 0 {
            let u = px.trailing_zeros() as usize;
            let c = (p & self.adj[u]).count_ones() as i32;
            if c > best {
                best = c;
                pivot = u;
            }
            px &= px - 1;
        }
        let mut cand = p & !self.adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            let bit = 1u64 << v;
            self.bron_kerbosch(r | bit, p & self.adj[v], x & self.adj[v], out);
            p &= !bit;
            x |= bit;
            cand &= cand - 1;
        }
    }
}

/// Orders subfamilies of the pool (as index masks) by size, then
/// lexicographically by their member sequence.
fn family_order(a: u64, b: u64) -> Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| VertexSet::from_bits(a as u128).cmp(&VertexSet::from_bits(b as u128)))
}

/// Keeps the larger candidate; among equal sizes, the lexicographically
/// smaller member sequence.
fn better(candidate: u64, incumbent: Option<u64>) -> bool {
    match incumbent {
        None => true,
        Some(best) => match candidate.count_ones().cmp(&best.count_ones()) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => VertexSet::from_bits(candidate as u128) < VertexSet::from_bits(best as u128),
        },
    }
}

/// All maximal intersecting families of k-subsets of `[n]`, ordered by
/// size and then by member sequence.
pub fn enumerate_maximal_intersecting(n: usize, k: usize) -> Result<Vec<SetFamily>> {
    let pool = Pool::new(n, k)?;
    Ok(pool.maximal_cliques().into_iter().map(|c| pool.family(c)).collect())
}

/// Every maximal intersecting family of `C([n], k)` with its covering
/// number; answers any number of `m(n, k, tau)` queries.
pub struct ExactOracle {
    pool: Pool,
    cliques: Vec<(u64, usize)>,
}

impl ExactOracle {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let pool = Pool::new(n, k)?;
        let cliques = pool
            .maximal_cliques()
            .into_iter()
            .map(|c| tau(&pool.family(c)).map(|t| (c, t)))
            .collect::<Result<_>>()?;
        Ok(ExactOracle { pool, cliques })
    }

    pub fn maximal_family_count(&self) -> usize {
        self.cliques.len()
    }

    /// Largest intersecting family with covering number exactly `t`.
    pub fn m_exact(&self, t: usize) -> OracleResult {
        let start = Instant::now();
        let n = self.pool.params.n();
        let mut best: Option<u64> = None;
        let mut examined = 0u64;
        if t >= 1 {
            let hitting: Vec<u64> = subsets_of_ground(n, t).map(|x| self.hit_mask(x)).collect();
            for &(clique, clique_tau) in &self.cliques {
                if clique_tau < t {
                    continue;
                }
                if clique_tau == t {
                    examined += 1;
                    if better(clique, best) {
                        best = Some(clique);
                    }
                    continue;
                }
                for &h in &hitting {
                    examined += 1;
                    let sub = clique & h;
                    if better(sub, best) {
                        best = Some(sub);
                    }
                }
            }
        }
        let result = self.result(t, best.unwrap_or(0), examined, start);
        if result.m_value > 0 {
            assert!(result.witness.is_intersecting(), "oracle witness not intersecting");
            let check = covering_number(&result.witness, None).expect("witness within solver guard");
            assert_eq!(check.exact().map(|r| r.tau), Some(t), "oracle witness has wrong covering number");
        }
        result
    }

    /// Largest intersecting family with covering number at least `t`.
    pub fn m_at_least(&self, t: usize) -> OracleResult {
        let start = Instant::now();
        let mut best = None;
        for &(clique, clique_tau) in &self.cliques {
            if clique_tau >= t && better(clique, best) {
                best = Some(clique);
            }
        }
        let result = self.result(t, best.unwrap_or(0), self.cliques.len() as u64, start);
        if result.m_value > 0 {
            assert!(result.witness.is_intersecting());
            assert!(tau_at_least(&result.witness, t).expect("witness within solver guard"));
        }
        result
    }

    /// Mask of pool members meeting `x`.
    fn hit_mask(&self, x: VertexSet) -> u64 {
        self.pool
            .sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.intersects(x))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    fn result(&self, t: usize, mask: u64, examined: u64, start: Instant) -> OracleResult {
        OracleResult {
            n: self.pool.params.n(),
            k: self.pool.params.k(),
            tau: t,
            m_value: mask.count_ones() as usize,
            witness: self.pool.family(mask),
            families_examined: examined,
            wall_time: start.elapsed(),
        }
    }
}

/// `m(n, k, tau)`: the largest intersecting family of k-subsets of `[n]`
/// with covering number exactly `tau`; 0 with an empty witness if none.
pub fn brute_force_m(n: usize, k: usize, tau: usize) -> Result<OracleResult> {
    Ok(ExactOracle::new(n, k)?.m_exact(tau))
}

/// Largest intersecting family with covering number at least `tau`.
pub fn brute_force_m_at_least(n: usize, k: usize, tau: usize) -> Result<OracleResult> {
    Ok(ExactOracle::new(n, k)?.m_at_least(tau))
}

/// Largest shifted intersecting family with covering number at least `t`.
///
/// Shifted families are exactly the families closed under replacing an
/// element `e` by `e - 1` when `e - 1` is absent. Sets are decided in
/// canonical order, which lists every such predecessor before its
/// successor, so a set may be taken only once all its predecessors are in.
pub fn max_shifted_intersecting(n: usize, k: usize, t: usize) -> Result<OracleResult> {
    let start = Instant::now();
    let pool = Pool::new(n, k)?;
    let index = |s: KSet| pool.sets.binary_search(&s).expect("pool holds every k-set");
    let preds: Vec<u64> = pool
        .sets
        .iter()
        .map(|&a| {
            a.elements()
                .filter(|&e| e >= 2 && !a.contains(e - 1))
                .map(|e| index((a - VertexSet::singleton(e)) | VertexSet::singleton(e - 1)))
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect();

    let mut search = ShiftedSearch { pool: &pool, preds: &preds, t, best: None, examined: 0 };
    let all = if pool.sets.len() == 64 { u64::MAX } else { (1u64 << pool.sets.len()) - 1 };
    search.run(0, 0, all)?;

    let mask = search.best.unwrap_or(0);
    Ok(OracleResult {
        n,
        k,
        tau: t,
        m_value: mask.count_ones() as usize,
        witness: pool.family(mask),
        families_examined: search.examined,
        wall_time: start.elapsed(),
    })
}

struct ShiftedSearch<'a> {
    pool: &'a Pool,
    preds: &'a [u64],
    t: usize,
    best: Option<u64>,
    examined: u64,
}

impl ShiftedSearch<'_> {
    /// `compatible` holds the pool members meeting every chosen set.
    fn run(&mut self, idx: usize, chosen: u64, compatible: u64) -> Result<()> {
        let len = self.pool.sets.len();
        let later = if idx >= 64 { 0 } else { !0u64 << idx };
        let reachable = (chosen.count_ones() + (compatible & later).count_ones()) as usize;
        if let Some(best) = self.best {
            if reachable < best.count_ones() as usize {
                return Ok(());
            }
        }
        if idx == len {
            self.examined += 1;
            if chosen != 0 && better(chosen, self.best) && tau_at_least(&self.pool.family(chosen), self.t)? {
                self.best = Some(chosen);
            }
            return Ok(());
        }
        let bit = 1u64 << idx;
        // A set meets itself, so membership in `compatible` is the
        // intersecting test against everything chosen so far.
        if compatible & bit != 0 && chosen & self.preds[idx] == self.preds[idx] {
            self.run(idx + 1, chosen | bit, compatible & (self.pool.adj[idx] | bit))?;
        }
        self.run(idx + 1, chosen, compatible & !bit)
    }
}

/// `m(n, k, tau)` for `tau = 1..=k`.
#[derive(Clone, Debug)]
pub struct Prop1Profile {
    pub n: usize,
    pub k: usize,
    pub results: Vec<OracleResult>,
}

impl Prop1Profile {
    pub fn values(&self) -> Vec<usize> {
        self.results.iter().map(|r| r.m_value).collect()
    }

    /// `m(n, k, tau - 1) >= m(n, k, tau)` for every `tau`.
    pub fn monotone(&self) -> bool {
        self.values().windows(2).all(|w| w[0] >= w[1])
    }
}

pub fn prop1_check(n: usize, k: usize) -> Result<Prop1Profile> {
    let oracle = ExactOracle::new(n, k)?;
    Ok(Prop1Profile { n, k, results: (1..=k).map(|t| oracle.m_exact(t)).collect() })
}
