//! Even powers of the cotangent at rational multiples of pi.
//!
//! `cot_power_sum` expands `sum_{r=1}^{k-1} cot^{2n}(r pi/k)` through the
//! Bernoulli multi-index formula: with `beta_j = B_{2j}/(2j)!`,
//!
//! ```text
//! (1/k) sum = (-1)^n - (-1)^n 2^{2n} sum_{j_0+...+j_{2n}=n} k^{2 j_d - 1} prod_i beta_{j_i}
//! ```
//!
//! where the sum runs over compositions of `n` into `2n+1` non-negative parts
//! and `j_d` is any one fixed part (the sum is symmetric in the parts).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::exact::{binom, compositions, factorial, int, pow2, sign, BernoulliCache, Rational};

/// Parameters of `sum_{r=1}^{k-1} cot^{2n}(r pi/k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CotSumParams {
    pub n: u32,
    pub k: u32,
}

impl CotSumParams {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(invalid("cotangent half-exponent n must be positive"));
        }
        if k < 2 {
            return Err(invalid(format!("k must be at least 2, got {k}")));
        }
        Ok(CotSumParams { n, k })
    }
}

/// `beta_j = B_{2j}/(2j)!` for `j = 0..=n`.
fn scaled_bernoulli(n: u32) -> Vec<Rational> {
    let cache = BernoulliCache::global();
    (0..=n as u64)
        .map(|j| cache.get(2 * j as usize) / int(factorial(2 * j)))
        .collect()
}

/// Coefficients `W_t = sum over compositions with j_d = t of prod beta`, so that
/// the multi-sum equals `sum_t W_t k^{2t-1}`.
///
/// `distinguished` is the index in `0..=2n` of the part carrying the power of
/// `k`; the result does not depend on it.
pub fn multi_index_weights(n: u32, distinguished: usize) -> Vec<Rational> {
    assert!(
        distinguished <= 2 * n as usize,
        "distinguished index out of range"
    );
    let beta = scaled_bernoulli(n);
    let mut weights = vec![Rational::zero(); n as usize + 1];
    for comp in compositions(n, 2 * n as usize + 1) {
        let product = comp
            .parts
            .iter()
            .fold(Rational::one(), |acc, &j| acc * &beta[j as usize]);
        weights[comp.parts[distinguished] as usize] += product;
    }
    weights
}

fn sum_from_weights(n: u32, k: u32, weights: &[Rational]) -> Rational {
    let k_rat = int(k);
    let k_sq = &k_rat * &k_rat;
    // sum_t W_t k^{2t-1} = (1/k) sum_t W_t k^{2t}
    let mut poly = Rational::zero();
    let mut power = Rational::one();
    for w in weights {
        poly += w * &power;
        power *= &k_sq;
    }
    let multi = poly / &k_rat;
    let s = int(sign(n as u64));
    (s.clone() - s * int(pow2(2 * n as u64)) * multi) * k_rat
}

/// `sum_{r=1}^{k-1} cot^{2n}(r pi/k)` for `n >= 1`, `k >= 2`.
pub fn cot_power_sum(n: u32, k: u32) -> Result<Rational> {
    CotSumParams::new(n, k)?;
    Ok(sum_from_weights(n, k, &multi_index_weights(n, 0)))
}

/// Same as [`cot_power_sum`] with the power of `k` attached to part `distinguished`.
pub fn cot_power_sum_with_distinguished(n: u32, k: u32, distinguished: usize) -> Result<Rational> {
    CotSumParams::new(n, k)?;
    if distinguished > 2 * n as usize {
        return Err(invalid(format!(
            "distinguished index must be at most {}",
            2 * n
        )));
    }
    Ok(sum_from_weights(
        n,
        k,
        &multi_index_weights(n, distinguished),
    ))
}

/// The multi-index formula read with strictly positive indices. No composition
/// of `n` into `2n+1` positive parts exists, so the multi-sum is empty and the
/// result collapses to `(-1)^n k`, which is wrong for every `k > 2`.
pub fn cot_power_sum_positive_indices(n: u32, k: u32) -> Result<Rational> {
    CotSumParams::new(n, k)?;
    let positive = compositions(n, 2 * n as usize + 1)
        .filter(|c| c.parts.iter().all(|&j| j > 0))
        .count();
    debug_assert_eq!(positive, 0);
    Ok(int(sign(n as u64)) * int(k))
}

/// Polynomial in `k` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotPolynomial {
    pub n: u32,
    pub coefficients: Vec<Rational>,
}

impl CotPolynomial {
    pub fn eval(&self, k: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_int(&self, k: i64) -> Rational {
        self.eval(&int(k))
    }

    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.coefficients
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Builds a polynomial from its coefficients, trimming trailing zeros.
    pub fn from_coefficients(n: u32, mut coefficients: Vec<Rational>) -> Self {
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        CotPolynomial { n, coefficients }
    }
}

impl fmt::Display for CotPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = c.abs();
            match j {
                0 => write!(f, "{sep}{mag}")?,
                1 => write!(f, "{sep}({mag})*k")?,
                _ => write!(f, "{sep}({mag})*k^{j}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Newton divided differences through `(x_i, y_i)`, expanded to monomial form.
pub(crate) fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let len = points.len();
    let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..len {
        for i in (level..len).rev() {
            let dx = &points[i].0 - &points[i - level].0;
            table[i] = (&table[i] - &table[i - 1]) / dx;
        }
    }
    // Horner on the Newton form: p = t0 + (x - x0)(t1 + (x - x1)(...))
    let mut coeffs = vec![Rational::zero(); len];
    for i in (0..len).rev() {
        // coeffs <- coeffs * (x - x_i) + t_i
        let mut next = vec![Rational::zero(); len];
        for d in 0..len {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < len {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &points[i].0;
        }
        next[0] += &table[i];
        coeffs = next;
    }
    coeffs
}

/// The degree-`2n` polynomial `P` with `P(k) = cot_power_sum(n, k)` for all `k >= 2`,
/// interpolated through `k = 2..=2n+3` and checked at three further points.
pub fn cot_sum_polynomial(n: u32) -> Result<CotPolynomial> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let weights = multi_index_weights(n, 0);
    let points: Vec<(Rational, Rational)> = (2..=2 * n + 3)
        .map(|k| (int(k), sum_from_weights(n, k, &weights)))
        .collect();
    let poly = CotPolynomial::from_coefficients(n, interpolate(&points));
    for (order, k) in (2 * n + 4..2 * n + 7).enumerate() {
        if poly.eval_int(k as i64) != sum_from_weights(n, k, &weights) {
            return Err(Error::IdentityMismatch {
                what: "cotangent polynomial",
                order,
            });
        }
    }
    Ok(poly)
}

/// Triangular table `b[n][j]`, `1 <= j <= n`, of the half-shifted cotangent sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ByrneSmithCoefficients {
    rows: Vec<Vec<Rational>>,
}

impl ByrneSmithCoefficients {
    pub fn n_max(&self) -> u32 {
        self.rows.len() as u32
    }

    /// `b_{n,j}`; panics outside `1 <= j <= n <= n_max`.
    pub fn get(&self, n: u32, j: u32) -> &Rational {
        assert!(j >= 1 && j <= n, "coefficient index out of range");
        &self.rows[n as usize - 1][j as usize - 1]
    }

    pub fn row(&self, n: u32) -> &[Rational] {
        &self.rows[n as usize - 1]
    }

    /// `(-1)^n k + sum_j b_{n,j} k^{2j}`.
    pub fn evaluate(&self, n: u32, k: u32) -> Rational {
        let k_sq = int(k) * int(k);
        let mut power = Rational::one();
        let mut acc = int(sign(n as u64)) * int(k);
        for b in self.row(n) {
            power *= &k_sq;
            acc += b * &power;
        }
        acc
    }
}

fn build_coefficients(n_max: u32, denominator: impl Fn(u32) -> BigInt) -> ByrneSmithCoefficients {
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let mut row = Vec::with_capacity(n as usize);
        for j in 1..n {
            let mut acc = Rational::zero();
            for l in 1..=n - j {
                let prev = &rows[(n - l) as usize - 1][j as usize - 1];
                acc += prev * int(binom(2 * n as u64, l as i64) * sign(l as u64));
            }
            row.push(acc / int(denominator(n - j)));
        }
        let constraint = int(1 - sign(n as u64));
        let rest: Rational = row.iter().sum();
        row.push(constraint - rest);
        rows.push(row);
    }
    ByrneSmithCoefficients { rows }
}

/// Coefficients from the recursion with denominator `2^{2(n-j)} - 1`; the
/// diagonal `b_{n,n}` is fixed by `sum_j b_{n,j} = 1 + (-1)^{n-1}`.
pub fn byrne_smith_coefficients(n_max: u32) -> ByrneSmithCoefficients {
    build_coefficients(n_max, |d| pow2(2 * d as u64) - 1)
}

/// `sum_{r=1}^{k} cot^{2n}((r - 1/2) pi/(2k))`, an integer for all `n, k >= 1`.
pub fn byrne_smith_sum(n: u32, k: u32) -> Result<Rational> {
    if n == 0 || k == 0 {
        return Err(invalid("n and k must be positive"));
    }
    Ok(byrne_smith_coefficients(n).evaluate(n, k))
}

/// The uncorrected transcription: linear term `(-1)^k k` and recursion
/// denominator `2^{2(n-j)-1}`. Already wrong at `n = 1, k = 2` (10 instead of 6).
pub fn byrne_smith_printed(n: u32, k: u32) -> Result<Rational> {
    if n == 0 || k == 0 {
        return Err(invalid("n and k must be positive"));
    }
    let table = build_coefficients(n, |d| pow2(2 * d as u64 - 1));
    let linear = int(sign(n as u64)) * int(k);
    Ok(table.evaluate(n, k) - &linear + int(sign(k as u64)) * int(k))
}
