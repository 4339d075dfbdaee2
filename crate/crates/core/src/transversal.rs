//! Covers and the exact covering number.
//!
//! The solver is a depth-first branch and bound over vertex choices. At a
//! node it takes an uncovered member and branches on each of its still
//! allowed vertices in turn; a vertex tried in an earlier sibling branch is
//! excluded from the later ones, so every cover is reached along exactly one
//! path. A member whose allowed vertices have all been excluded kills the
//! node. Pruning uses the incumbent (seeded by the greedy cover) and a
//! packing lower bound: pairwise disjoint allowed parts of uncovered members
//! each need their own vertex.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::family::{SetFamily, VertexSet};

/// Largest family the solver accepts.
pub const MAX_MEMBERS: usize = 1_000_000;
/// Largest uniformity the solver accepts.
pub const MAX_K: usize = 24;

/// A vertex set claimed to meet every member of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub vertices: VertexSet,
    pub verified: bool,
    pub family_hash: u64,
}

impl Cover {
    /// Checks `vertices` against `f` and records the outcome.
    pub fn check(f: &SetFamily, vertices: VertexSet) -> Self {
        Cover { vertices, verified: is_cover(f, vertices), family_hash: family_hash(f) }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Identity of a family for pairing it with covers.
pub fn family_hash(f: &SetFamily) -> u64 {
    let mut h = DefaultHasher::new();
    f.hash(&mut h);
    h.finish()
}

/// True iff every member meets `t`; vacuously true for the empty family.
pub fn is_cover(f: &SetFamily, t: VertexSet) -> bool {
    f.members().iter().all(|&m| m.intersects(t))
}

/// Repeatedly adds a vertex of maximum degree among uncovered members,
/// smallest vertex on ties.
pub fn greedy_cover(f: &SetFamily) -> Cover {
    let cover = greedy_bits(f.members(), f.n());
    Cover::check(f, VertexSet::from_bits(cover))
}

fn greedy_bits(members: &[VertexSet], n: usize) -> u128 {
    let mut cover = 0u128;
    let mut uncovered: Vec<u128> = members.iter().map(|m| m.bits()).collect();
    let mut deg = vec![0usize; n];
    while !uncovered.is_empty() {
        deg.iter_mut().for_each(|d| *d = 0);
        for &m in &uncovered {
            for v in VertexSet::from_bits(m).elements() {
                deg[v - 1] += 1;
            }
        }
        // max_by_key keeps the last maximum; scan in reverse for the first.
        let v = (0..n).rev().max_by_key(|&v| deg[v]).expect("nonempty ground set");
        cover |= 1 << v;
        uncovered.retain(|&m| m & (1 << v) == 0);
    }
    cover
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauResult {
    pub tau: usize,
    pub optimal_cover: Cover,
    pub nodes_explored: u64,
}

/// Result of a covering-number query, possibly cut short by a budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauVerdict {
    Exact(TauResult),
    /// No cover of size at most `budget` exists.
    ExceedsBudget { budget: usize, nodes_explored: u64 },
}

impl TauVerdict {
    pub fn exact(self) -> Option<TauResult> {
        match self {
            TauVerdict::Exact(r) => Some(r),
            TauVerdict::ExceedsBudget { .. } => None,
        }
    }

    pub fn nodes_explored(&self) -> u64 {
        match self {
            TauVerdict::Exact(r) => r.nodes_explored,
            TauVerdict::ExceedsBudget { nodes_explored, .. } => *nodes_explored,
        }
    }
}

/// Exact covering number. With a budget, stops with
/// [`TauVerdict::ExceedsBudget`] once no cover of size `<= budget` exists.
pub fn covering_number(f: &SetFamily, budget: Option<usize>) -> Result<TauVerdict> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if f.len() > MAX_MEMBERS || f.k() > MAX_K {
        return Err(Error::guard(format!(
            "covering number limited to |F| <= {MAX_MEMBERS} and k <= {MAX_K}, got |F| = {}, k = {}",
            f.len(),
            f.k()
        )));
    }
    let members: Vec<u128> = f.members().iter().map(|m| m.bits()).collect();
    let mut incumbent = greedy_bits(f.members(), f.n());
    if f.is_intersecting() {
        // Every member is a cover.
        if let Some(&m) = f.members().first() {
            if m.len() < incumbent.count_ones() as usize {
                incumbent = m.bits();
            }
        }
    }

    let mut search = Search {
        members: &members,
        n: f.n(),
        best: None,
        limit: incumbent.count_ones() as usize,
        nodes: 0,
    };
    if let Some(b) = budget {
        if b < search.limit {
            search.limit = b + 1;
        } else {
            search.best = Some(incumbent);
        }
    } else {
        search.best = Some(incumbent);
    }
    search.run(0, 0, 0);

    match search.best {
        Some(bits) => {
            let cover = Cover::check(f, VertexSet::from_bits(bits));
            debug_assert!(cover.verified);
            Ok(TauVerdict::Exact(TauResult {
                tau: bits.count_ones() as usize,
                optimal_cover: cover,
                nodes_explored: search.nodes,
            }))
        }
        None => Ok(TauVerdict::ExceedsBudget { budget: budget.unwrap_or(0), nodes_explored: search.nodes }),
    }
}

/// Convenience wrapper returning just `tau(F)`.
pub fn tau(f: &SetFamily) -> Result<usize> {
    Ok(covering_number(f, None)?.exact().expect("unbudgeted search is exact").tau)
}

/// `tau(F) >= t`, answered with a budgeted search.
pub fn tau_at_least(f: &SetFamily, t: usize) -> Result<bool> {
    if t == 0 {
        return Ok(true);
    }
    Ok(matches!(covering_number(f, Some(t - 1))?, TauVerdict::ExceedsBudget { .. }))
}

struct Search<'a> {
    members: &'a [u128],
    n: usize,
    /// Best cover found; its size equals `limit` once set.
    best: Option<u128>,
    /// Only covers strictly smaller than this are still of interest.
    limit: usize,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, chosen: u128, size: usize, excluded: u128) {
        self.nodes += 1;

        // Uncovered member with the fewest allowed vertices.
        let mut pick: Option<u128> = None;
        let mut pick_len = u32::MAX;
        for &m in self.members {
            if m & chosen != 0 {
                continue;
            }
            let allowed = m & !excluded;
            let len = allowed.count_ones();
            if len == 0 {
                return;
            }
            if len < pick_len {
                pick = Some(allowed);
                pick_len = len;
            }
        }
        let Some(pick) = pick else {
            self.best = Some(chosen);
            self.limit = size;
            return;
        };
        if size + 1 >= self.limit {
            return;
        }
        if size + self.packing_bound(chosen, excluded) >= self.limit {
            return;
        }

        let mut deg = vec![0u32; self.n];
        for &m in self.members {
            if m & chosen == 0 {
                let mut a = m & pick;
                while a != 0 {
                    deg[a.trailing_zeros() as usize] += 1;
                    a &= a - 1;
                }
            }
        }
        let mut order: Vec<usize> = VertexSet::from_bits(pick).elements().map(|v| v - 1).collect();
        order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));

        let mut excluded = excluded;
        for v in order {
            if size + 1 >= self.limit {
                break;
            }
            let bit = 1u128 << v;
            self.run(chosen | bit, size + 1, excluded);
            excluded |= bit;
        }
    }

    /// Number of uncovered members with pairwise disjoint allowed parts,
    /// collected greedily.
    fn packing_bound(&self, chosen: u128, excluded: u128) -> usize {
        let mut used = 0u128;
        let mut count = 0;
        for &m in self.members {
            if m & chosen != 0 {
                continue;
            }
            let allowed = m & !excluded;
            if allowed & used == 0 {
                used |= allowed;
                count += 1;
            }
        }
        count
    }
}
