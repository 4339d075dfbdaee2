//! Closed-form bounds and thresholds.
//!
//! Every counting bound is evaluated exactly with big integers or rationals
//! while `n <= EXACT_LIMIT`; beyond that only the natural-log value is
//! produced, from log-gamma arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Largest `n` for which bound formulas are evaluated exactly.
pub const EXACT_LIMIT: u64 = 200;

/// `C(n, k)`, zero when `k > n`.
pub fn choose(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` over signed arguments: zero for `k < 0` or `k > n`,
/// an error for `n < 0`.
pub fn binomial(n: i64, k: i64) -> Result<BigUint> {
    if n < 0 {
        return Err(Error::params(format!("binomial needs n >= 0, got {n}")));
    }
    if k < 0 || k > n {
        return Ok(BigUint::zero());
    }
    Ok(choose(n as u64, k as u64))
}

/// Like [`binomial`] but zero for negative `n` too; formula terms use it.
fn choose_i(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        BigUint::zero()
    } else {
        choose(n as u64, k as u64)
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `ln C(n, k)` via log-gamma; `-inf` when `k > n`.
pub fn ln_choose(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let (n, k) = (n as f64, k as f64);
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 960 {
        return x.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    top.to_f64().map_or(f64::NAN, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a nonnegative rational; `-inf` for zero, NaN for negatives.
pub fn ln_rational(x: &BigRational) -> f64 {
    if x.is_negative() {
        return f64::NAN;
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    ln_biguint(num) - ln_biguint(den)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn integer(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `ln(exp(a) + exp(b))` without overflow.
fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SideCondition {
    pub condition: String,
    pub holds: bool,
}

/// A named bound evaluated at specific parameters.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub name: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub exact: Option<BigRational>,
    pub log_value: f64,
    pub side_conditions: Vec<SideCondition>,
    /// Auxiliary values (e.g. `beta`, `count_bound`) as display strings.
    pub details: BTreeMap<&'static str, String>,
}

impl BoundReport {
    fn new(name: &'static str, params: Vec<(&'static str, String)>) -> Self {
        BoundReport {
            name,
            params,
            exact: None,
            log_value: f64::NAN,
            side_conditions: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    fn with_exact(mut self, exact: BigRational) -> Self {
        self.log_value = ln_rational(&exact);
        self.exact = Some(exact);
        self
    }

    fn condition(&mut self, condition: impl Into<String>, holds: bool) {
        self.side_conditions.push(SideCondition { condition: condition.into(), holds });
    }

    pub fn conditions_hold(&self) -> bool {
        self.side_conditions.iter().all(|c| c.holds)
    }

    /// The exact value when it is a nonnegative integer.
    pub fn exact_integer(&self) -> Option<BigUint> {
        let x = self.exact.as_ref()?;
        if x.is_integer() && !x.is_negative() {
            x.numer().to_biguint()
        } else {
            None
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str(") = ")?;
        match &self.exact {
            Some(x) => write!(f, "{}", format_rational(x))?,
            None => write!(f, "exp({})", self.log_value)?,
        }
        for c in &self.side_conditions {
            if !c.holds {
                write!(f, " [violated: {}]", c.condition)?;
            }
        }
        Ok(())
    }
}

fn nk_params(n: u64, k: u64) -> Vec<(&'static str, String)> {
    vec![("n", n.to_string()), ("k", k.to_string())]
}

/// Erdős–Ko–Rado: `C(n-1, k-1)`.
pub fn ekr_bound(n: u64, k: u64) -> BoundReport {
    let mut r = BoundReport::new("ekr", nk_params(n, k));
    r.condition("n >= 2k > 0", k > 0 && n >= 2 * k);
    let (a, b) = (n.saturating_sub(1), k.saturating_sub(1));
    if n <= EXACT_LIMIT {
        r.with_exact(integer(choose(a, b)))
    } else {
        r.log_value = ln_choose(a, b);
        r
    }
}

/// Hilton–Milner: `C(n-1, k-1) - C(n-k-1, k-1) + 1`.
pub fn hm_bound(n: u64, k: u64) -> BoundReport {
    let mut r = BoundReport::new("hm", nk_params(n, k));
    r.condition("n > 2k >= 4", n > 2 * k && k >= 2);
    let (n_i, k_i) = (n as i64, k as i64);
    if n <= EXACT_LIMIT {
        let v = choose_i(n_i - 1, k_i - 1) - choose_i(n_i - k_i - 1, k_i - 1) + 1u32;
        r.with_exact(integer(v))
    } else {
        let big = ln_choose(n - 1, k - 1);
        let small = if n > k { ln_choose(n - k - 1, k - 1) } else { f64::NEG_INFINITY };
        r.log_value = big + (-(small - big).exp() + (-big).exp()).ln_1p();
        r
    }
}

/// Frankl's bound for intersecting families containing `C([m], k)`:
/// `C(m, k) + sum_{i=m-k+1}^{k-1} C(m-1, i-1) C(n-m, k-i)`.
pub fn f65_bound(n: u64, k: u64, m: u64) -> Result<BoundReport> {
    if !(k >= 1 && m >= k && 2 * k > m && n >= 2 * k) {
        return Err(Error::params(format!("f65 needs n >= 2k > m >= k >= 1, got n={n}, k={k}, m={m}")));
    }
    let mut params = nk_params(n, k);
    params.push(("m", m.to_string()));
    let mut r = BoundReport::new("f65", params);
    r.condition("n >= 2k > m >= k >= 1", true);
    r.details.insert("t", (m - k).to_string());
    let lo = m - k + 1;
    if n <= EXACT_LIMIT {
        let mut v = choose(m, k);
        for i in lo..k {
            v += choose(m - 1, i - 1) * choose(n - m, k - i);
        }
        Ok(r.with_exact(integer(v)))
    } else {
        let mut acc = ln_choose(m, k);
        for i in lo..k {
            acc = ln_add(acc, ln_choose(m - 1, i - 1) + ln_choose(n - m, k - i));
        }
        r.log_value = acc;
        Ok(r)
    }
}

/// `k + 1 - floor((n-1)/(k-1))`; requires `k >= 2`.
pub fn beta(n: u64, k: u64) -> i64 {
    assert!(k >= 2, "beta needs k >= 2");
    k as i64 + 1 - Integer::div_floor(&(n as i64 - 1), &(k as i64 - 1))
}

/// Density bound `prod_{i=beta}^{tau-1} (k-i)k/(n-i)` for intersecting
/// families with covering number `tau > beta`.
///
/// `details` carries `beta`, the `density` and, in the exact regime, the
/// implied `count_bound = floor(density * C(n,k))`.
pub fn thmub_bound(n: u64, k: u64, tau: u64) -> Result<BoundReport> {
    if k < 2 || n < k {
        return Err(Error::params(format!("thmub needs n >= k >= 2, got n={n}, k={k}")));
    }
    let b = beta(n, k);
    if tau as i64 <= b {
        return Err(Error::Inapplicable(format!("tau = {tau} does not exceed beta = {b}")));
    }
    let mut params = nk_params(n, k);
    params.push(("tau", tau.to_string()));
    let mut r = BoundReport::new("thmub", params);
    r.details.insert("beta", b.to_string());
    // Densities alpha_i only exist for i >= 0.
    let lo = b.max(0) as u64;
    r.condition("tau > beta", true);
    r.condition("beta >= 0 (lower index not clamped)", b >= 0);
    // A factor at i = k is zero, so the product vanishes for tau > k.
    let hi = tau.min(k + 1);
    let factors_le_one = (lo..hi).all(|i| (k - i) * k <= n - i);
    r.condition("every factor (k-i)k/(n-i) <= 1", factors_le_one);

    if n <= EXACT_LIMIT {
        let mut prod = BigRational::one();
        for i in lo..hi {
            if i == k {
                // n = k makes this factor 0/0; it is 0 for every n.
                prod = BigRational::zero();
                break;
            }
            prod *= BigRational::new(BigInt::from((k - i) * k), BigInt::from(n - i));
        }
        let count = (prod.clone() * integer(choose(n, k))).floor();
        r.details.insert("density", format_rational(&prod));
        r.details.insert("count_bound", count.numer().to_string());
        Ok(r.with_exact(prod))
    } else {
        let mut acc = 0.0;
        for i in lo..hi {
            acc += ((k - i) as f64 * k as f64).ln() - ((n - i) as f64).ln();
        }
        r.log_value = acc;
        r.details.insert("density", format!("{}", acc.exp()));
        Ok(r)
    }
}

/// `1 - c + c ln c` with `0 ln 0 = 0`.
pub fn corub_exponent(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::params(format!("corub exponent needs 0 <= c <= 1, got {c}")));
    }
    let c_log_c = if c == 0.0 { 0.0 } else { c * c.ln() };
    Ok(1.0 - c + c_log_c)
}

/// `ln k + sqrt(ln^2 k + 2 l ln k)`, the positive root of
/// `f^2 = 2 (l + f) ln k`.
pub fn f_threshold(k: f64, ell: f64) -> f64 {
    let lk = k.ln();
    lk + (lk * lk + 2.0 * ell * lk).sqrt()
}

/// Lower-tail concentration bound `exp(-t^2 / (2 mean))`.
pub fn hypergeom_tail_bound(mean: f64, t: f64) -> f64 {
    (-(t * t) / (2.0 * mean)).exp()
}

/// Exact `Pr[eta <= threshold]` for `eta` hypergeometric: `draws` items
/// from a population of `population` containing `successes` marked ones.
pub fn hypergeom_exact_tail(population: u64, successes: u64, draws: u64, threshold: i64) -> Result<BigRational> {
    if successes > population || draws > population {
        return Err(Error::params(format!(
            "hypergeometric needs s, d <= N, got N={population}, s={successes}, d={draws}"
        )));
    }
    if threshold < 0 {
        return Ok(BigRational::zero());
    }
    let lo = draws.saturating_sub(population - successes);
    let hi = (threshold as u64).min(successes).min(draws);
    let mut num = BigUint::zero();
    for j in lo..=hi {
        num += choose(successes, j) * choose(population - successes, draws - j);
    }
    Ok(BigRational::new(num.into(), choose(population, draws).into()))
}

/// Parameters of the lower-bound construction for `l = c1 ln k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorlbParams {
    /// `c1 / (c1 + 1 + sqrt(1 + 2 c1))`: guaranteed `tau / k`.
    pub tau_fraction: f64,
    /// `2 (c1 + 1 + sqrt(1 + 2 c1))^2`, so `n / k^2 ~ c1 / (denominator ln k)`.
    pub density_denominator: f64,
}

pub fn corlb_params(c1: f64) -> Result<CorlbParams> {
    if !(c1 >= 1.0) {
        return Err(Error::params(format!("corlb needs c1 >= 1, got {c1}")));
    }
    let d = c1 + 1.0 + (1.0 + 2.0 * c1).sqrt();
    Ok(CorlbParams { tau_fraction: c1 / d, density_denominator: 2.0 * d * d })
}

/// The bracket `floor(e k!) <= m(k) <= k^k` as stated, together with
/// the size of the layered Erdős–Lovász family it is meant to describe.
#[derive(Clone, Debug, PartialEq)]
pub struct MkRange {
    pub k: u64,
    /// `floor(e k!) = sum_{i=0}^{k} k!/i!`.
    pub lower: BigUint,
    /// `k^k`.
    pub upper: BigUint,
    /// `sum_{i=1}^{k} k!/i!`, the enumerated Erdős–Lovász size.
    pub construction_size: BigUint,
    /// `lower <= upper`.
    pub bracket_consistent: bool,
    /// `lower == construction_size`.
    pub lower_matches_construction: bool,
}

impl MkRange {
    /// Set when the stated bracket is self-contradictory or disagrees with
    /// the construction it is derived from.
    pub fn flagged(&self) -> bool {
        !self.bracket_consistent || !self.lower_matches_construction
    }
}

pub fn m_k_range(k: u64) -> Result<MkRange> {
    if k == 0 {
        return Err(Error::params("m(k) needs k >= 1"));
    }
    let kf = factorial(k);
    let layers: BigUint = (1..=k).map(|i| &kf / factorial(i)).sum();
    let lower = &layers + &kf;
    let upper = BigUint::from(k).pow(k as u32);
    Ok(MkRange {
        k,
        bracket_consistent: lower <= upper,
        lower_matches_construction: lower == layers,
        lower,
        upper,
        construction_size: layers,
    })
}
