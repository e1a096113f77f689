//! p-adic valuations on `Q` and extended base-p logarithms.
//!
//! For a prime `p` the absolute value is `|x| = p^{-v_p(x)}`. We work with
//! `log_p|x| = -v_p(x)` throughout, an element of `Q ∪ {-∞}` ([`ExtLog`])
//! where `-∞` encodes `|0| = 0`. Fixing the logarithm base to `p` keeps every
//! derived quantity rational; a different base would rescale all statements
//! uniformly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rat::{format_rat, Rat};

/// The prime defining the absolute value. Construction runs a deterministic
/// Miller-Rabin check, so an accepted `p` is certainly prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeConfig {
    p: u64,
}

impl PrimeConfig {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(PrimeConfig { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

/// Deterministic Miller-Rabin. The base set {2, 3, 5, ..., 37} is a proven
/// witness set for all 64-bit integers.
fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &b in &BASES {
        let mut x = pow_mod(b % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `v_p(n)` for a nonzero integer; `None` for zero.
pub fn vp_int(n: &BigInt, cfg: &PrimeConfig) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(cfg.prime());
    let mut m = n.clone();
    let mut v = 0i64;
    loop {
        let (q, r) = m.div_rem(&p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return Some(v);
        }
    }
}

/// `v_p(x)` for a nonzero rational; `None` for zero.
pub fn vp_rat(x: &Rat, cfg: &PrimeConfig) -> Option<i64> {
    Some(vp_int(x.numer(), cfg)? - vp_int(x.denom(), cfg).expect("denominator is nonzero"))
}

/// An element of `Q ∪ {-∞}`: the base-p logarithm of a p-adic absolute value.
/// `-∞` encodes zero; it absorbs under addition and is the identity for max.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtLog {
    NegInf,
    Finite(Rat),
}

impl ExtLog {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtLog::NegInf => None,
            ExtLog::Finite(x) => Some(x),
        }
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, ExtLog::NegInf)
    }

    pub fn add(&self, other: &ExtLog) -> ExtLog {
        match (self, other) {
            (ExtLog::Finite(a), ExtLog::Finite(b)) => ExtLog::Finite(a + b),
            _ => ExtLog::NegInf,
        }
    }
}

impl PartialOrd for ExtLog {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtLog {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtLog::NegInf, ExtLog::NegInf) => Ordering::Equal,
            (ExtLog::NegInf, ExtLog::Finite(_)) => Ordering::Less,
            (ExtLog::Finite(_), ExtLog::NegInf) => Ordering::Greater,
            (ExtLog::Finite(a), ExtLog::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLog::NegInf => write!(f, "-inf"),
            ExtLog::Finite(x) => write!(f, "{}", format_rat(x)),
        }
    }
}

/// `log_p|x|_p = -v_p(x)`, with `log_p|0| = -∞`.
pub fn log_abs(x: &Rat, cfg: &PrimeConfig) -> ExtLog {
    match vp_rat(x, cfg) {
        None => ExtLog::NegInf,
        Some(v) => ExtLog::Finite(crate::rat::rat_int(-v)),
    }
}
