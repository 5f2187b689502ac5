//! Truncated power series whose coefficients are basic power sums.
//!
//! Three series are covered, each computed along two routes that must agree
//! coefficient by coefficient:
//!
//! * `G1(n; z) = sum_{k<n} exp(z cos(k pi/n))`: from the power sums, and as
//!   `n I0(z) + 2n sum_j sigma_j(n) (z/2)^{2j} + sinh z`;
//! * `H1(n, q; z) = sum_{k<n} exp(z sin(q k pi/n))` for odd `n`, even coprime `q`,
//!   with `sigma^-` in place of `sigma` and no odd part;
//! * the resolvents `(1/n) sum_{k<n} 1/(1 - z trig^2(k pi/n))`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::closed_forms::{power_sum, Trig};
use crate::error::{invalid, Error, Result};
use crate::exact::{binom, factorial, int, pow2, sign, tail_sum, Rational};

/// Dense coefficients `coeffs[j]` of `z^j`, `j = 0..=order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCoefficients {
    pub coeffs: Vec<Rational>,
    pub order: usize,
}

impl SeriesCoefficients {
    fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        SeriesCoefficients {
            coeffs: (0..=order).map(f).collect(),
            order,
        }
    }

    /// Value of the truncated series at `z`.
    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    fn first_difference(&self, other: &SeriesCoefficients) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }
}

/// `sigma_k(n) = (1/(2k)!) sum_{p=1}^{floor(k/n)} C(2k, k+pn)`; zero for `k < n`.
pub fn sigma(k: u32, n: u32) -> Rational {
    assert!(n > 0, "n must be positive");
    Rational::new(tail_sum(k as u64, n as u64, |_| 1), factorial(2 * k as u64))
}

/// `sigma^-_k(n)`, the same sum with weights `(-1)^{pn}`.
pub fn sigma_minus(k: u32, n: u32) -> Rational {
    assert!(n > 0, "n must be positive");
    let n64 = n as u64;
    Rational::new(
        tail_sum(k as u64, n64, |p| sign(p * n64) as i64),
        factorial(2 * k as u64),
    )
}

/// `sigma` or `sigma^-` values over a rectangular grid.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SigmaTable {
    pub values: BTreeMap<(u32, u32), Rational>,
}

impl SigmaTable {
    /// Entries for `k = 0..=k_max` and the given `n` values.
    pub fn build(ns: &[u32], k_max: u32, signed: bool) -> Self {
        let f = if signed { sigma_minus } else { sigma };
        let values = ns
            .iter()
            .flat_map(|&n| (0..=k_max).map(move |k| ((k, n), f(k, n))))
            .collect();
        SigmaTable { values }
    }

    pub fn get(&self, k: u32, n: u32) -> Option<&Rational> {
        self.values.get(&(k, n))
    }
}

/// `1/(4^j (j!)^2)`, the coefficient of `z^{2j}` in `I0(z)`.
fn bessel_i0_coefficient(j: u32) -> Rational {
    let f = factorial(j as u64);
    Rational::new(One::one(), pow2(2 * j as u64) * &f * &f)
}

fn inverse_factorial(j: u64) -> Rational {
    Rational::new(One::one(), factorial(j))
}

fn check(
    what: &'static str,
    lhs: SeriesCoefficients,
    rhs: &SeriesCoefficients,
) -> Result<SeriesCoefficients> {
    match lhs.first_difference(rhs) {
        Some(order) => Err(Error::IdentityMismatch { what, order }),
        None => Ok(lhs),
    }
}

/// Coefficients of `G1(n; z)` from the power sums: `C(j,n)/(2j)!` at `z^{2j}`,
/// and `1/(2j+1)!` at `z^{2j+1}` because every odd cosine power sums to 1.
pub fn g1_from_power_sums(n: u32, order: usize) -> SeriesCoefficients {
    SeriesCoefficients::from_fn(order, |i| {
        if i % 2 == 0 {
            power_sum(Trig::Cos, i as u32 / 2, n) * inverse_factorial(i as u64)
        } else {
            inverse_factorial(i as u64)
        }
    })
}

/// Coefficients of `n I0(z) + 2n sum_j sigma_j(n) (z/2)^{2j} + sinh z`.
pub fn g1_from_sigma(n: u32, order: usize) -> SeriesCoefficients {
    SeriesCoefficients::from_fn(order, |i| {
        if i % 2 == 0 {
            let j = i as u32 / 2;
            (bessel_i0_coefficient(j) + sigma(j, n) * int(2) / int(pow2(2 * j as u64))) * int(n)
        } else {
            inverse_factorial(i as u64)
        }
    })
}

/// `G1(n; z)` to order `order`, after checking both routes agree.
pub fn g1_coefficients(n: u32, order: usize) -> Result<SeriesCoefficients> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    check("G1", g1_from_power_sums(n, order), &g1_from_sigma(n, order))
}

fn check_h1_params(n: u32, q: u32) -> Result<()> {
    if n == 0 || q == 0 {
        return Err(invalid("n and q must be positive"));
    }
    if !q.is_multiple_of(2) {
        return Err(invalid(format!("q must be even, got {q}")));
    }
    if n.gcd(&q) != 1 {
        return Err(invalid(format!("gcd(n, q) = gcd({n}, {q}) != 1")));
    }
    Ok(())
}

/// `H1` coefficients from the power sums: `S(j,n)/(2j)!` at even orders, 0 at odd.
pub fn h1_from_power_sums(n: u32, order: usize) -> SeriesCoefficients {
    SeriesCoefficients::from_fn(order, |i| {
        if i % 2 == 0 {
            power_sum(Trig::Sin, i as u32 / 2, n) * inverse_factorial(i as u64)
        } else {
            Rational::zero()
        }
    })
}

/// `n I0(z) + 2n sum_j sigma^-_j(n) (z/2)^{2j}`.
pub fn h1_from_sigma(n: u32, order: usize) -> SeriesCoefficients {
    SeriesCoefficients::from_fn(order, |i| {
        if i % 2 == 0 {
            let j = i as u32 / 2;
            (bessel_i0_coefficient(j) + sigma_minus(j, n) * int(2) / int(pow2(2 * j as u64)))
                * int(n)
        } else {
            Rational::zero()
        }
    })
}

/// `H1(n, q; z)` to order `order` for even `q` coprime to `n`.
pub fn h1_coefficients(n: u32, q: u32, order: usize) -> Result<SeriesCoefficients> {
    check_h1_params(n, q)?;
    check("H1", h1_from_power_sums(n, order), &h1_from_sigma(n, order))
}

/// Resolvent coefficients `T(j,n)/n`.
pub fn resolvent_from_power_sums(kind: Trig, n: u32, order: usize) -> SeriesCoefficients {
    SeriesCoefficients::from_fn(order, |j| power_sum(kind, j as u32, n) / int(n))
}

/// `C(2j,j)/4^j + 2 (2j)! sigma_j(n)/4^j` (`sigma^-` for sine).
pub fn resolvent_from_sigma(kind: Trig, n: u32, order: usize) -> SeriesCoefficients {
    SeriesCoefficients::from_fn(order, |j| {
        let j32 = j as u32;
        let s = match kind {
            Trig::Cos => sigma(j32, n),
            Trig::Sin => sigma_minus(j32, n),
        };
        let central = int(binom(2 * j as u64, j as i64));
        (central + s * int(factorial(2 * j as u64)) * int(2)) / int(pow2(2 * j as u64))
    })
}

/// `(1/n) sum_{k<n} 1/(1 - z trig^2(k pi/n))` to order `order`.
pub fn resolvent_coefficients(kind: Trig, n: u32, order: usize) -> Result<SeriesCoefficients> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    check(
        "resolvent",
        resolvent_from_power_sums(kind, n, order),
        &resolvent_from_sigma(kind, n, order),
    )
}

/// Upper bound `2 n |z|^{K+1}/(K+1)!` on the tail of `G1` or `H1` beyond order `K`.
///
/// Every coefficient of `z^i` is at most `n/i!` in absolute value, and for
/// `2|z| <= K + 2` consecutive tail terms at least halve.
pub fn exp_series_tail_bound(n: u32, z: &Rational, order: usize) -> Rational {
    let abs_z = num_traits::Signed::abs(z);
    assert!(
        &abs_z * int(2) <= int(order as u64 + 2),
        "|z| too large for the tail bound"
    );
    let mut term = int(n);
    for i in 1..=order as u64 + 1 {
        term = term * &abs_z / int(i);
    }
    term * int(2)
}
