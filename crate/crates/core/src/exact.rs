//! Exact arithmetic substrate: big rationals, binomials, factorials, Bernoulli
//! numbers and integer compositions.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Normalized arbitrary-precision fraction. `BigRational` keeps every value in
/// lowest terms with a positive denominator, and zero as `0/1`.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a [`Rational`].
pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `2^e` as a big integer.
pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `2^e` for a possibly negative exponent.
pub fn pow2_rational(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(pow2(e as u64))
    } else {
        Rational::new(BigInt::one(), pow2(e.unsigned_abs()))
    }
}

/// `(-1)^e`.
pub fn sign(e: u64) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Walks one row of Pascal's triangle downward from the centre:
/// yields `C(2m, m - d)` for `d = 0, 1, ..., m`, each obtained from the previous
/// one by a single small multiply/divide. Used by the closed forms to collect
/// `C(2m, m - pn)` terms without recomputing each coefficient from scratch.
pub(crate) struct CentralRow {
    two_m: u64,
    j: u64,
    current: Option<BigInt>,
}

impl CentralRow {
    pub(crate) fn new(m: u64) -> Self {
        CentralRow {
            two_m: 2 * m,
            j: m,
            current: Some(binom(2 * m, m as i64)),
        }
    }
}

impl Iterator for CentralRow {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = self.current.take()?;
        if self.j > 0 {
            // C(2m, j-1) = C(2m, j) * j / (2m - j + 1)
            let next = &out * self.j / (self.two_m - self.j + 1);
            self.j -= 1;
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Sum of `weight(p) * C(2m, m - p*step)` over `p = 1..=floor(m/step)`.
///
/// `weight` returns a small signed multiplier; zero weights are skipped.
pub(crate) fn tail_sum(m: u64, step: u64, weight: impl Fn(u64) -> i64) -> BigInt {
    assert!(step > 0, "step must be positive");
    let top = m / step;
    let mut acc = BigInt::zero();
    if top == 0 {
        return acc;
    }
    for (d, c) in CentralRow::new(m).enumerate() {
        let d = d as u64;
        if d == 0 || !d.is_multiple_of(step) {
            continue;
        }
        let p = d / step;
        if p > top {
            break;
        }
        let w = weight(p);
        if w != 0 {
            acc += c * w;
        }
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Memoized Bernoulli numbers (convention `B_1 = -1/2`).
///
/// Growth is append-only behind a lock, so a shared cache can be read from
/// concurrent evaluators; a value once returned never changes.
#[derive(Debug)]
pub struct BernoulliCache {
    // all indices 0..len, odd entries included so the recurrence can run
    table: RwLock<Vec<Rational>>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            table: RwLock::new(vec![Rational::one()]),
        }
    }

    /// Cache pre-filled through index `max_index`.
    pub fn with_max_index(max_index: usize) -> Self {
        let cache = Self::new();
        cache.extend_to(max_index);
        cache
    }

    /// Process-wide shared cache.
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    fn extend_to(&self, index: usize) {
        if self.table.read().expect("bernoulli cache poisoned").len() > index {
            return;
        }
        let mut table = self.table.write().expect("bernoulli cache poisoned");
        while table.len() <= index {
            let n = table.len() as u64;
            // sum_{k=0}^{n} C(n+1,k) B_k = 0
            let mut acc = Rational::zero();
            for (k, b) in table.iter().enumerate() {
                if !b.is_zero() {
                    acc += Rational::from_integer(binom(n + 1, k as i64)) * b;
                }
            }
            let b_n = -acc / Rational::from_integer(BigInt::from(n + 1));
            table.push(b_n);
        }
    }

    /// `B_index` for an even `index`. Odd indices other than 1 vanish; they
    /// are accepted and return zero.
    pub fn get(&self, index: usize) -> Rational {
        self.extend_to(index);
        self.table.read().expect("bernoulli cache poisoned")[index].clone()
    }

    /// Number of indices currently materialized.
    pub fn len(&self) -> usize {
        self.table.read().expect("bernoulli cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// `B_index` from the shared cache.
pub fn bernoulli(index: usize) -> Rational {
    BernoulliCache::global().get(index)
}

/// Ordered tuple of non-negative parts with a fixed total.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    pub parts: Vec<u32>,
    pub total: u32,
}

/// All compositions of `total` into `parts` non-negative parts, in
/// colexicographic order, starting from `(total, 0, ..., 0)`.
pub fn compositions(total: u32, parts: usize) -> Compositions {
    assert!(parts > 0, "compositions need at least one part");
    let mut first = vec![0; parts];
    first[0] = total;
    Compositions {
        total,
        next: Some(first),
    }
}

/// Iterator returned by [`compositions`].
#[derive(Clone, Debug)]
pub struct Compositions {
    total: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let last = current.len() - 1;
        let lead = current.iter().position(|&x| x > 0);
        self.next = match lead {
            Some(l) if l < last => {
                let mut succ = current.clone();
                let spill = succ[l];
                succ[l] = 0;
                succ[l + 1] += 1;
                succ[0] = spill - 1;
                Some(succ)
            }
            _ => None,
        };
        Some(Composition {
            parts: current,
            total: self.total,
        })
    }
}

/// Rounds `value` to `digits` decimal places, ties to even, and renders it.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = value.numer() * &scale;
    let den = value.denom();
    let (mut q, r) = scaled.div_mod_floor(den);
    let twice = &r * 2u32;
    if twice > *den || (twice == *den && q.is_odd()) {
        q += 1u32;
    }
    let negative = q.is_negative();
    let digits_str = q.abs().to_string();
    let body = if digits == 0 {
        digits_str
    } else {
        let padded = format!("{:0>width$}", digits_str, width = digits + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        format!("{int_part}.{frac_part}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
