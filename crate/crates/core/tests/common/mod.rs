//! Small, deliberately naive reference implementations used to check the
//! library. Everything here works on plain `Vec<usize>` sets.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use taukit::{GroundParams, SetFamily};

pub type Sets = Vec<Vec<usize>>;

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

/// All r-subsets of `1..=n` in lexicographic order.
pub fn all_subsets(n: usize, r: usize) -> Sets {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Sets) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, r, &mut Vec::new(), &mut out);
    out
}

pub fn meets(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.contains(x))
}

pub fn naive_intersecting(f: &Sets) -> bool {
    f.iter().all(|a| f.iter().all(|b| meets(a, b)))
}

/// Covering number by trying every vertex subset in order of size.
pub fn naive_tau(n: usize, f: &Sets) -> usize {
    for r in 0..=n {
        if all_subsets(n, r).iter().any(|t| f.iter().all(|a| meets(a, t))) {
            return r;
        }
    }
    unreachable!("the whole ground set covers any family of nonempty sets")
}

/// `m(n,k,tau)` by enumerating every subfamily of `C([n],k)`; only for
/// tiny pools.
pub fn naive_m(n: usize, k: usize, tau: usize) -> usize {
    let pool = all_subsets(n, k);
    assert!(pool.len() <= 20, "pool too large for subfamily enumeration");
    let mut best = 0;
    for mask in 1u32..(1 << pool.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let fam: Sets = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i].clone()).collect();
        if naive_intersecting(&fam) && naive_tau(n, &fam) == tau {
            best = size;
        }
    }
    best
}

pub fn hm_formula(n: u64, k: u64) -> u128 {
    binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1
}

/// Naive `S_{i<-j}` on vector sets.
pub fn naive_shift(f: &Sets, i: usize, j: usize) -> Sets {
    let mut out: Sets = Vec::new();
    for a in f {
        if a.contains(&j) && !a.contains(&i) {
            let mut b: Vec<usize> = a.iter().map(|&x| if x == j { i } else { x }).collect();
            b.sort_unstable();
            if !f.contains(&b) {
                out.push(b);
                continue;
            }
        }
        out.push(a.clone());
    }
    out.sort();
    out
}

pub fn to_sets(f: &SetFamily) -> Sets {
    f.members().iter().map(|m| m.to_vec()).collect()
}

pub fn to_family(n: usize, k: usize, sets: &Sets) -> SetFamily {
    let raw: Vec<Vec<i64>> = sets.iter().map(|s| s.iter().map(|&v| v as i64).collect()).collect();
    taukit::family::validate_family(&raw, GroundParams::new(n, k).unwrap()).unwrap().0
}

/// A random intersecting family: k-sets drawn from `[n]` in random order,
/// each kept when it meets everything kept so far. Half the time the
/// draw is biased towards sets avoiding a random vertex so that stars are
/// less dominant.
pub fn random_intersecting<R: Rng>(rng: &mut R, n: usize, k: usize) -> Sets {
    let mut pool = all_subsets(n, k);
    pool.shuffle(rng);
    if rng.random_bool(0.5) {
        let avoid = rng.random_range(1..=n);
        pool.sort_by_key(|s| s.contains(&avoid));
    }
    let budget = rng.random_range(1..=pool.len());
    let mut fam: Sets = Vec::new();
    for s in pool.into_iter().take(budget) {
        if fam.iter().all(|a| meets(a, &s)) {
            fam.push(s);
        }
    }
    fam.sort();
    fam
}

/// `Pr[eta <= threshold]` in floating point from the pmf.
pub fn hypergeom_cdf_f64(population: u64, successes: u64, draws: u64, threshold: i64) -> f64 {
    let mut acc = 0u128;
    for j in 0..=draws.min(successes) {
        if (j as i64) > threshold || draws - j > population - successes {
            continue;
        }
        acc += binom(successes, j) * binom(population - successes, draws - j);
    }
    acc as f64 / binom(population, draws) as f64
}
