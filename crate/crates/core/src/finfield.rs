//! Which finite fields have a multiplicative group that is a vector space.
//!
//! `F_q^×` is cyclic of order `q - 1`. It is a vector space over some field
//! exactly when `q = 2` (the zero space), `q = 3`, or `q - 1` is a Mersenne
//! prime; [`closed_form_verdict`] decides this directly, and
//! [`elementary_abelian_oracle`] re-derives the answer from the group
//! `ℤ/(q-1)` by computing element orders, without using primality of `q - 1`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `q` the element-order oracle will enumerate.
pub const DEFAULT_SCAN_BOUND: u64 = 1 << 20;

/// Largest `q_max` a verdict-only scan accepts (the sieve is a byte per integer).
pub const MAX_SCAN: u64 = 1 << 26;

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Lucas–Lehmer test: for an odd prime `r`, `2^r - 1` is prime iff
/// `s_(r-2) = 0` where `s_0 = 4` and `s_(i+1) = s_i^2 - 2 (mod 2^r - 1)`.
pub fn lucas_lehmer(r: u32) -> bool {
    assert!((3..64).contains(&r) && is_prime(r as u64), "Lucas-Lehmer needs an odd prime exponent below 64");
    let m = (1u128 << r) - 1;
    let mut s: u128 = 4;
    for _ in 0..r - 2 {
        s = (s * s + m - 2) % m;
    }
    s == 0
}

/// `Some(r)` when `m = 2^r - 1` is prime.
///
/// Primality is decided by trial division; for `r >= 3` the Lucas–Lehmer
/// test must agree, and a disagreement panics.
pub fn mersenne_exponent(m: u64) -> Option<u32> {
    let next = m.checked_add(1)?;
    if !next.is_power_of_two() {
        return None;
    }
    let r = next.trailing_zeros();
    let prime = is_prime(m);
    if r >= 3 {
        let ll = is_prime(r as u64) && lucas_lehmer(r);
        assert_eq!(ll, prime, "trial division and Lucas-Lehmer disagree on 2^{r} - 1");
    }
    prime.then_some(r)
}

/// `q = p^n` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimePower {
    p: u64,
    n: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, n: u32) -> Result<PrimePower> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::OutOfRange(0));
        }
        let q = p.checked_pow(n).ok_or(Error::OutOfRange(p))?;
        Ok(PrimePower { p, n, q })
    }

    /// Recognizes a prime power.
    pub fn from_q(q: u64) -> Option<PrimePower> {
        if q < 2 {
            return None;
        }
        let p = (2..)
            .take_while(|d: &u64| (*d as u128) * (*d as u128) <= q as u128)
            .find(|d| q.is_multiple_of(*d))
            .unwrap_or(q);
        let mut rest = q;
        let mut n = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            n += 1;
        }
        (rest == 1).then_some(PrimePower { p, n, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}^{}", self.q, self.p, self.n)
    }
}

/// Whether `F_q^×` is a vector space, and over which finite field.
///
/// For `q = 2` the group is trivial, a zero-dimensional space over every
/// field; it is reported over F2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "lowercase")]
pub enum FqVerdict {
    No,
    Yes { scalar_order: u64, dim: u32 },
}

impl FqVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, FqVerdict::Yes { .. })
    }
}

impl fmt::Display for FqVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FqVerdict::No => f.write_str("no"),
            FqVerdict::Yes { scalar_order, dim } => write!(f, "yes over F_{scalar_order}, dim {dim}"),
        }
    }
}

/// Decides the question from the closed form: `q = 2`, `q = 3`, or `q - 1`
/// a Mersenne prime.
pub fn closed_form_verdict(q: &PrimePower) -> FqVerdict {
    match q.q() {
        2 => FqVerdict::Yes { scalar_order: 2, dim: 0 },
        3 => FqVerdict::Yes { scalar_order: 2, dim: 1 },
        q => match mersenne_exponent(q - 1) {
            Some(_) => FqVerdict::Yes { scalar_order: q - 1, dim: 1 },
            None => FqVerdict::No,
        },
    }
}

/// The additive group `ℤ/order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicGroup {
    order: u64,
}

impl CyclicGroup {
    pub fn new(order: u64) -> CyclicGroup {
        assert!(order >= 1);
        CyclicGroup { order }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `g` combined with itself `e` times.
    pub fn power(&self, g: u64, e: u64) -> u64 {
        ((g as u128 * e as u128) % self.order as u128) as u64
    }

    /// Least `d >= 1` with `g^d` the identity, found by stepping through powers.
    pub fn element_order(&self, g: u64) -> u64 {
        let mut acc = g % self.order;
        let mut d = 1;
        while acc != 0 {
            acc = (acc + g) % self.order;
            d += 1;
        }
        d
    }

    /// First element whose `e`-th power is not the identity.
    pub fn exponent_violation(&self, e: u64) -> Option<u64> {
        (0..self.order).find(|&g| self.power(g, e) != 0)
    }
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Decides the question from the group `ℤ/(q-1)` itself: the answer is yes
/// iff the group is trivial or `q - 1 = p'^m` and every element is killed by
/// `p'`, i.e. the group is elementary abelian of rank `m`.
pub fn elementary_abelian_oracle(q: &PrimePower) -> Result<FqVerdict> {
    elementary_abelian_oracle_bounded(q, DEFAULT_SCAN_BOUND)
}

pub fn elementary_abelian_oracle_bounded(q: &PrimePower, bound: u64) -> Result<FqVerdict> {
    if q.q() > bound {
        return Err(Error::OutOfRange(q.q()));
    }
    let group = CyclicGroup::new(q.q() - 1);
    if group.order() == 1 {
        return Ok(FqVerdict::Yes { scalar_order: 2, dim: 0 });
    }
    match prime_factors(group.order()).as_slice() {
        &[(p, m)] if group.exponent_violation(p).is_none() => Ok(FqVerdict::Yes { scalar_order: p, dim: m }),
        _ => Ok(FqVerdict::No),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub q: PrimePower,
    pub theorem: FqVerdict,
    pub oracle: Option<FqVerdict>,
}

impl ScanRow {
    pub fn agrees(&self) -> bool {
        self.oracle.is_none_or(|o| o == self.theorem)
    }
}

/// All prime powers up to `q_max`, in increasing order.
pub fn prime_powers(q_max: u64) -> Result<Vec<PrimePower>> {
    if !(2..=MAX_SCAN).contains(&q_max) {
        return Err(Error::OutOfRange(q_max));
    }
    let limit = q_max as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        for multiple in (p * p..=limit).step_by(p) {
            composite[multiple] = true;
        }
        let mut q = p as u64;
        let mut n = 1;
        while q <= q_max {
            out.push(PrimePower { p: p as u64, n, q });
            n += 1;
            match q.checked_mul(p as u64) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    out.sort_unstable_by_key(|pp| pp.q);
    Ok(out)
}

/// Closed-form verdict for every prime power up to `q_max`, plus the oracle
/// verdict when asked. Rows are ordered by `q`.
pub fn prime_power_scan(q_max: u64, with_oracle: bool) -> Result<Vec<ScanRow>> {
    if with_oracle && q_max > DEFAULT_SCAN_BOUND {
        return Err(Error::OutOfRange(q_max));
    }
    prime_powers(q_max)?
        .into_par_iter()
        .map(|q| {
            let oracle = if with_oracle { Some(elementary_abelian_oracle(&q)?) } else { None };
            Ok(ScanRow { q, theorem: closed_form_verdict(&q), oracle })
        })
        .collect()
}

/// Mersenne exponents `r` with `2^r <= q_max`, by both primality routes.
pub fn mersenne_exponents_up_to(q_max: u64) -> Vec<u32> {
    (2..64).take_while(|&r| 1u64 << r <= q_max).filter(|&r| mersenne_exponent((1u64 << r) - 1).is_some()).collect()
}
