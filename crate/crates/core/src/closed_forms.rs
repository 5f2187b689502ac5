//! Closed combinatorial forms for trigonometric power sums.
//!
//! Everything here reduces to the two base sums
//!
//! ```text
//! C(m,n) = sum_{k=0}^{n-1} cos^{2m}(k pi / n)
//! S(m,n) = sum_{k=0}^{n-1} sin^{2m}(k pi / n)
//! ```
//!
//! which evaluate to `2^{1-2m} n (C(2m-1,m-1) + sum_{p=1}^{floor(m/n)} w_p C(2m, m-pn))`
//! with `w_p = 1` for cosine and `w_p = (-1)^{pn}` for sine. Composite families
//! (alternating, half-shifted, weighted) are computed by combining base sums.
//! Where a published piecewise table exists it is kept as a separate
//! `*_printed` / `*_explicit` function so that agreement (or the documented
//! disagreement) with the composition can be checked.
//!
//! `m = 0` is admitted everywhere; the summand is then 1 at every `k`,
//! including `sin^0(0) = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::exact::{binom, int, pow2, pow2_rational, rat, sign, tail_sum, Rational};

/// Which trigonometric function is raised to the power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trig {
    Cos,
    Sin,
}

impl fmt::Display for Trig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trig::Cos => f.write_str("cos"),
            Trig::Sin => f.write_str("sin"),
        }
    }
}

/// The four fifth-root weighted sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ell5Variant {
    /// weight `cos(2 pi k/5) cos(4 pi k/5)`
    Product,
    /// weight `cos(pi k/5) cos(2 pi k/5)`, `n` even
    AltProduct,
    /// weight `cos(2 pi k/5)`
    Cos2,
    /// weight `cos(4 pi k/5)`
    Cos4,
}

/// Flat family name of a [`SumSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    CosPower,
    SinPower,
    Scaled,
    Coprime,
    GcdReduced,
    Quoniam,
    MercaHalf,
    MercaShifted,
    BarberoR,
    Alternating,
    ShiftedCos,
    ShiftedSin,
    Weight3Cos,
    Weight3Sin,
    WeightHalfPi,
    WeightPi3,
    Ell5Product,
    Ell5AltProduct,
    Ell5Cos2,
    Ell5Cos4,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::CosPower => "CosPower",
            Family::SinPower => "SinPower",
            Family::Scaled => "Scaled",
            Family::Coprime => "Coprime",
            Family::GcdReduced => "GcdReduced",
            Family::Quoniam => "Quoniam",
            Family::MercaHalf => "MercaHalf",
            Family::MercaShifted => "MercaShifted",
            Family::BarberoR => "BarberoR",
            Family::Alternating => "Alternating",
            Family::ShiftedCos => "ShiftedCos",
            Family::ShiftedSin => "ShiftedSin",
            Family::Weight3Cos => "Weight3Cos",
            Family::Weight3Sin => "Weight3Sin",
            Family::WeightHalfPi => "WeightHalfPi",
            Family::WeightPi3 => "WeightPi3",
            Family::Ell5Product => "Ell5Product",
            Family::Ell5AltProduct => "Ell5AltProduct",
            Family::Ell5Cos2 => "Ell5Cos2",
            Family::Ell5Cos4 => "Ell5Cos4",
        }
    }
}

/// One sum family together with its integer parameters.
///
/// The exponent is always `2m` (`2p` for the Merca sums). Parameters are
/// checked by [`SumSpec::validate`]; every evaluator rejects inadmissible
/// combinations instead of reinterpreting them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumSpec {
    CosPower {
        m: u32,
        n: u32,
    },
    SinPower {
        m: u32,
        n: u32,
    },
    /// `sum_{k=0}^{q-1} trig^{2m}(k pi/n)`, `n | q`
    Scaled {
        kind: Trig,
        m: u32,
        n: u32,
        q: u32,
    },
    /// `sum_{k=0}^{n-1} trig^{2m}(q k pi/n)`, `gcd(n,q) = 1`
    Coprime {
        kind: Trig,
        m: u32,
        n: u32,
        q: u32,
    },
    /// same sum as `Coprime` with no restriction on `q`
    GcdReduced {
        kind: Trig,
        m: u32,
        n: u32,
        q: u32,
    },
    Quoniam {
        m: u32,
        n: u32,
    },
    MercaHalf {
        p: u32,
        n: u32,
    },
    MercaShifted {
        p: u32,
        n: u32,
    },
    BarberoR {
        m: u32,
        n: u32,
    },
    /// `sum_{k=0}^{n-1} (-1)^k trig^{2m}(k pi/n)`, `n` even
    Alternating {
        kind: Trig,
        m: u32,
        n: u32,
    },
    ShiftedCos {
        m: u32,
        n: u32,
    },
    ShiftedSin {
        m: u32,
        n: u32,
    },
    Weight3 {
        kind: Trig,
        m: u32,
        n: u32,
    },
    WeightHalfPi {
        m: u32,
        n: u32,
    },
    WeightPi3 {
        m: u32,
        n: u32,
    },
    Ell5 {
        variant: Ell5Variant,
        m: u32,
        n: u32,
    },
}

impl SumSpec {
    pub fn family(&self) -> Family {
        match *self {
            SumSpec::CosPower { .. } => Family::CosPower,
            SumSpec::SinPower { .. } => Family::SinPower,
            SumSpec::Scaled { .. } => Family::Scaled,
            SumSpec::Coprime { .. } => Family::Coprime,
            SumSpec::GcdReduced { .. } => Family::GcdReduced,
            SumSpec::Quoniam { .. } => Family::Quoniam,
            SumSpec::MercaHalf { .. } => Family::MercaHalf,
            SumSpec::MercaShifted { .. } => Family::MercaShifted,
            SumSpec::BarberoR { .. } => Family::BarberoR,
            SumSpec::Alternating { .. } => Family::Alternating,
            SumSpec::ShiftedCos { .. } => Family::ShiftedCos,
            SumSpec::ShiftedSin { .. } => Family::ShiftedSin,
            SumSpec::Weight3 {
                kind: Trig::Cos, ..
            } => Family::Weight3Cos,
            SumSpec::Weight3 {
                kind: Trig::Sin, ..
            } => Family::Weight3Sin,
            SumSpec::WeightHalfPi { .. } => Family::WeightHalfPi,
            SumSpec::WeightPi3 { .. } => Family::WeightPi3,
            SumSpec::Ell5 { variant, .. } => match variant {
                Ell5Variant::Product => Family::Ell5Product,
                Ell5Variant::AltProduct => Family::Ell5AltProduct,
                Ell5Variant::Cos2 => Family::Ell5Cos2,
                Ell5Variant::Cos4 => Family::Ell5Cos4,
            },
        }
    }

    /// Trigonometric kind for families that carry one.
    pub fn kind(&self) -> Option<Trig> {
        match *self {
            SumSpec::CosPower { .. } => Some(Trig::Cos),
            SumSpec::SinPower { .. } => Some(Trig::Sin),
            SumSpec::Scaled { kind, .. }
            | SumSpec::Coprime { kind, .. }
            | SumSpec::GcdReduced { kind, .. }
            | SumSpec::Alternating { kind, .. }
            | SumSpec::Weight3 { kind, .. } => Some(kind),
            _ => None,
        }
    }

    /// Half-exponent (`m`, or `p` for the Merca sums).
    pub fn m(&self) -> u32 {
        match *self {
            SumSpec::MercaHalf { p, .. } | SumSpec::MercaShifted { p, .. } => p,
            SumSpec::CosPower { m, .. }
            | SumSpec::SinPower { m, .. }
            | SumSpec::Scaled { m, .. }
            | SumSpec::Coprime { m, .. }
            | SumSpec::GcdReduced { m, .. }
            | SumSpec::Quoniam { m, .. }
            | SumSpec::BarberoR { m, .. }
            | SumSpec::Alternating { m, .. }
            | SumSpec::ShiftedCos { m, .. }
            | SumSpec::ShiftedSin { m, .. }
            | SumSpec::Weight3 { m, .. }
            | SumSpec::WeightHalfPi { m, .. }
            | SumSpec::WeightPi3 { m, .. }
            | SumSpec::Ell5 { m, .. } => m,
        }
    }

    pub fn n(&self) -> u32 {
        match *self {
            SumSpec::CosPower { n, .. }
            | SumSpec::SinPower { n, .. }
            | SumSpec::Scaled { n, .. }
            | SumSpec::Coprime { n, .. }
            | SumSpec::GcdReduced { n, .. }
            | SumSpec::Quoniam { n, .. }
            | SumSpec::MercaHalf { n, .. }
            | SumSpec::MercaShifted { n, .. }
            | SumSpec::BarberoR { n, .. }
            | SumSpec::Alternating { n, .. }
            | SumSpec::ShiftedCos { n, .. }
            | SumSpec::ShiftedSin { n, .. }
            | SumSpec::Weight3 { n, .. }
            | SumSpec::WeightHalfPi { n, .. }
            | SumSpec::WeightPi3 { n, .. }
            | SumSpec::Ell5 { n, .. } => n,
        }
    }

    /// `q` where the family has one, else 1.
    pub fn q(&self) -> u32 {
        match *self {
            SumSpec::Scaled { q, .. }
            | SumSpec::Coprime { q, .. }
            | SumSpec::GcdReduced { q, .. } => q,
            _ => 1,
        }
    }

    /// Deterministic report ordering: family, kind, m, n, q.
    pub fn sort_key(&self) -> (Family, Option<Trig>, u32, u32, u32) {
        (self.family(), self.kind(), self.m(), self.n(), self.q())
    }

    /// Checks the family's preconditions.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let positive_n = !matches!(self, SumSpec::BarberoR { .. });
        if positive_n && n == 0 {
            return Err(invalid("n must be a positive integer"));
        }
        match *self {
            SumSpec::Scaled { n, q, .. } => {
                if q == 0 || q % n != 0 {
                    return Err(invalid(format!(
                        "q = {q} is not a positive multiple of n = {n}"
                    )));
                }
            }
            SumSpec::Coprime { n, q, .. } => {
                if q == 0 || n.gcd(&q) != 1 {
                    return Err(invalid(format!(
                        "gcd(n, q) = gcd({n}, {q}) != 1; use the gcd-reduced sum"
                    )));
                }
            }
            SumSpec::GcdReduced { q, .. } => {
                if q == 0 {
                    return Err(invalid("q must be a positive integer"));
                }
            }
            SumSpec::Quoniam { m, n } => {
                if m == 0 || m > n {
                    return Err(invalid(format!(
                        "conjectured identity requires 1 <= m < n + 1, got m = {m}, n = {n}"
                    )));
                }
            }
            SumSpec::MercaHalf { p, .. } | SumSpec::MercaShifted { p, .. } => {
                if p == 0 {
                    return Err(invalid("p must be a positive integer"));
                }
            }
            SumSpec::Alternating { n, .. } => {
                if n % 2 != 0 {
                    return Err(invalid(format!("alternating sum requires even N, got {n}")));
                }
            }
            SumSpec::WeightPi3 { n, .. } => {
                if n % 2 != 0 {
                    return Err(invalid(format!(
                        "cos(k pi/3) weighted sum requires even n, got {n}"
                    )));
                }
            }
            SumSpec::Ell5 {
                variant: Ell5Variant::AltProduct,
                n,
                ..
            } if n % 2 != 0 => {
                return Err(invalid(format!(
                    "alternating fifth-root product requires even n, got {n}"
                )));
            }
            _ => {}
        }
        Ok(())
    }

    /// Exact value of the sum through its closed form.
    pub fn evaluate(&self) -> Result<Rational> {
        self.validate()?;
        Ok(match *self {
            SumSpec::CosPower { m, n } => cos_power_sum(m, n),
            SumSpec::SinPower { m, n } => sin_power_sum(m, n),
            SumSpec::Scaled { kind, m, n, q } => scaled_sum(kind, m, n, q)?,
            SumSpec::Coprime { kind, m, n, q } => coprime_sum(kind, m, n, q)?,
            SumSpec::GcdReduced { kind, m, n, q } => gcd_reduced_sum(kind, m, n, q),
            SumSpec::Quoniam { m, n } => quoniam_sum(m, n)?,
            SumSpec::MercaHalf { p, n } => merca_half_sum(p, n)?,
            SumSpec::MercaShifted { p, n } => merca_shifted_sum(p, n)?,
            SumSpec::BarberoR { m, n } => barbero_r(m, n),
            SumSpec::Alternating { kind, m, n } => alternating_sum(kind, m, n)?,
            SumSpec::ShiftedCos { m, n } => shifted_cos_sum(m, n),
            SumSpec::ShiftedSin { m, n } => shifted_sin_sum(m, n),
            SumSpec::Weight3 { kind, m, n } => weight3_sum(kind, m, n),
            SumSpec::WeightHalfPi { m, n } => weight_half_pi_sum(m, n),
            SumSpec::WeightPi3 { m, n } => weight_pi3_sum(m, n)?,
            SumSpec::Ell5 { variant, m, n } => ell5_sum(variant, m, n)?,
        })
    }
}

impl fmt::Display for SumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = self.family().name();
        match *self {
            SumSpec::Scaled { kind, m, n, q }
            | SumSpec::Coprime { kind, m, n, q }
            | SumSpec::GcdReduced { kind, m, n, q } => {
                write!(f, "{family}({kind}, m={m}, n={n}, q={q})")
            }
            SumSpec::Alternating { kind, m, n } => write!(f, "{family}({kind}, m={m}, N={n})"),
            SumSpec::MercaHalf { p, n } | SumSpec::MercaShifted { p, n } => {
                write!(f, "{family}(p={p}, n={n})")
            }
            _ => write!(f, "{family}(m={}, n={})", self.m(), self.n()),
        }
    }
}

fn base_sum(kind: Trig, m: u32, n: u32) -> Rational {
    assert!(n > 0, "n must be positive");
    if m == 0 {
        return int(n);
    }
    let (m, n) = (m as u64, n as u64);
    let tail = match kind {
        Trig::Cos => tail_sum(m, n, |_| 1),
        Trig::Sin => tail_sum(m, n, |p| sign(p * n) as i64),
    };
    let inner = binom(2 * m - 1, m as i64 - 1) + tail;
    Rational::new(inner * n, pow2(2 * m - 1))
}

/// `T(m,n)` for either kind.
pub fn power_sum(kind: Trig, m: u32, n: u32) -> Rational {
    base_sum(kind, m, n)
}

/// `C(m,n) = sum_{k=0}^{n-1} cos^{2m}(k pi/n)`. Panics if `n == 0`.
pub fn cos_power_sum(m: u32, n: u32) -> Rational {
    base_sum(Trig::Cos, m, n)
}

/// `S(m,n) = sum_{k=0}^{n-1} sin^{2m}(k pi/n)`. Panics if `n == 0`.
pub fn sin_power_sum(m: u32, n: u32) -> Rational {
    base_sum(Trig::Sin, m, n)
}

/// `sum_{k=0}^{q-1} trig^{2m}(k pi/n) = (q/n) T(m,n)` for `n | q`.
pub fn scaled_sum(kind: Trig, m: u32, n: u32, q: u32) -> Result<Rational> {
    SumSpec::Scaled { kind, m, n, q }.validate()?;
    Ok(base_sum(kind, m, n) * int(q / n))
}

/// `sum_{k=0}^{n-1} trig^{2m}(q k pi/n)` for coprime `n, q`; independent of `q`.
pub fn coprime_sum(kind: Trig, m: u32, n: u32, q: u32) -> Result<Rational> {
    SumSpec::Coprime { kind, m, n, q }.validate()?;
    Ok(base_sum(kind, m, n))
}

/// `sum_{k=0}^{n-1} trig^{2m}(q k pi/n) = r T(m, n/r)` with `r = gcd(n,q)`.
pub fn gcd_reduced_sum(kind: Trig, m: u32, n: u32, q: u32) -> Rational {
    assert!(n > 0 && q > 0, "n and q must be positive");
    let r = n.gcd(&q);
    base_sum(kind, m, n / r) * int(r)
}

/// `sum_{k=1}^{floor(n/2)} 2^{2m} cos^{2m}(k pi/(n+1)) = (n+1) C(2m-1,m-1) - 2^{2m-1}`,
/// valid for `1 <= m < n+1`.
pub fn quoniam_sum(m: u32, n: u32) -> Result<Rational> {
    SumSpec::Quoniam { m, n }.validate()?;
    let (m64, n64) = (m as u64, n as u64);
    Ok(int(
        binom(2 * m64 - 1, m64 as i64 - 1) * (n64 + 1) - pow2(2 * m64 - 1)
    ))
}

/// The same half sum routed through `C(m, n+1)`: `2^{2m-1} (C(m,n+1) - 1)`.
/// Valid for every `m >= 1`, which shows where the conjectured form stops holding.
pub fn quoniam_via_cos_power(m: u32, n: u32) -> Rational {
    assert!(m >= 1, "m must be positive");
    (cos_power_sum(m, n + 1) - Rational::one()) * pow2_rational(2 * m as i64 - 1)
}

/// `sum_{k=1}^{floor((n-1)/2)} cos^{2p}(k pi/n) = (C(p,n) - 1)/2`.
pub fn merca_half_sum(p: u32, n: u32) -> Result<Rational> {
    SumSpec::MercaHalf { p, n }.validate()?;
    Ok((cos_power_sum(p, n) - Rational::one()) / int(2))
}

/// Multisection form `-1/2 + n/2^{2p+1} sum_{|k| <= floor(p/n)} C(2p, p+kn)`.
pub fn merca_half_formula(p: u32, n: u32) -> Result<Rational> {
    SumSpec::MercaHalf { p, n }.validate()?;
    let sum = symmetric_binomial_sum(p, n, |_| 1);
    Ok(rat(-1, 2) + Rational::new(sum * n, pow2(2 * p as u64 + 1)))
}

/// `sum_{k=1}^{floor(n/2)} cos^{2p}((k-1/2) pi/n)
///   = n/2^{2p+1} sum_{|k| <= floor(p/n)} (-1)^k C(2p, p+kn)`.
pub fn merca_shifted_sum(p: u32, n: u32) -> Result<Rational> {
    SumSpec::MercaShifted { p, n }.validate()?;
    let sum = symmetric_binomial_sum(p, n, |k| sign(k.unsigned_abs()) as i64);
    Ok(Rational::new(sum * n, pow2(2 * p as u64 + 1)))
}

fn symmetric_binomial_sum(p: u32, n: u32, weight: impl Fn(i64) -> i64) -> BigInt {
    let (p, n) = (p as i64, n as i64);
    let top = p / n;
    (-top..=top)
        .map(|k| binom(2 * p as u64, p + k * n) * weight(k))
        .sum()
}

/// `R_{m,n} = 2^{2m} sum_{k=1}^{n+1} cos^{2m}(k pi/(2n+3))`, amended two-branch form.
///
/// Both boundary conventions hold with this argument order: `R(0, n) = n + 1`
/// (every summand is 1) and `R(m, 0) = 1` (single term `(2 cos(pi/3))^{2m}`).
pub fn barbero_r(m: u32, n: u32) -> Rational {
    if m == 0 {
        return int(n + 1);
    }
    let (m, big_n) = (m as u64, 2 * n as u64 + 3);
    let main = binom(2 * m, m as i64) * big_n / 2u32 - pow2(2 * m - 1);
    let extra: BigInt = if m >= big_n {
        tail_sum(m, big_n, |_| 1) * big_n
    } else {
        BigInt::zero()
    };
    int(main + extra)
}

/// The original single-branch expression `(n + 3/2) C(2m,m) - 2^{2m-1}`, which
/// drops the tail for `m >= 2n+3` (e.g. off by 18216 at `m = 12, n = 3`).
pub fn barbero_r_uncorrected(m: u32, n: u32) -> Rational {
    if m == 0 {
        return int(n + 1);
    }
    let m = m as u64;
    let big_n = 2 * n as u64 + 3;
    int(binom(2 * m, m as i64) * big_n / 2u32 - pow2(2 * m - 1))
}

/// `sum_{k=0}^{N-1} (-1)^k trig^{2m}(k pi/N) = 2 T(m, N/2) - T(m, N)` for even `N`.
pub fn alternating_sum(kind: Trig, m: u32, big_n: u32) -> Result<Rational> {
    SumSpec::Alternating { kind, m, n: big_n }.validate()?;
    Ok(base_sum(kind, m, big_n / 2) * int(2) - base_sum(kind, m, big_n))
}

/// The published three-case table for `sum_{k=0}^{2n-1} (-1)^k trig^{2m}(k pi/2n)`,
/// transcribed as printed. Its middle case (`n <= m < 2n`) lacks a factor of
/// `n` (and, for the sine table, the sign `(-1)^n`), so it only agrees with
/// [`alternating_sum`] when that factor is 1.
pub fn alternating_printed(kind: Trig, m: u32, n: u32) -> Rational {
    assert!(n > 0, "n must be positive");
    let (m64, n64) = (m as u64, n as u64);
    if m64 < n64 {
        return Rational::zero();
    }
    let prefactor = pow2_rational(2 - 2 * m64 as i64);
    if m64 < 2 * n64 {
        // printed: 2^{2-2m} sum_{p=1}^{floor(m/n)} C(2m, m-pn), no factor n, no sign
        return prefactor * int(tail_sum(m64, n64, |_| 1));
    }
    let first = match kind {
        Trig::Cos => tail_sum(m64, n64, |_| 1),
        Trig::Sin => tail_sum(m64, n64, |p| sign(p * n64) as i64),
    };
    let second = tail_sum(m64, 2 * n64, |_| 1);
    prefactor * int((first - second) * n64)
}

/// `sum_{k=0}^{n-1} cos^{2m}((k+1/2) pi/n) = C(m,2n) - C(m,n)`.
pub fn shifted_cos_sum(m: u32, n: u32) -> Rational {
    cos_power_sum(m, 2 * n) - cos_power_sum(m, n)
}

/// Single-sum form `2^{1-2m} n (C(2m-1,m-1) + sum_p (-1)^p C(2m, m-pn))`.
pub fn shifted_cos_explicit(m: u32, n: u32) -> Rational {
    shifted_explicit(m, n, |p| sign(p) as i64)
}

/// `sum_{k=0}^{n-1} sin^{2m}((k+1/2) pi/n)` with tail weights `1 + (-1)^p - (-1)^{np}`.
pub fn shifted_sin_sum(m: u32, n: u32) -> Rational {
    let n64 = n as u64;
    shifted_explicit(m, n, |p| 1 + sign(p) as i64 - sign(n64 * p) as i64)
}

/// `S(m,2n) - S(m,n)`, the composed route to [`shifted_sin_sum`].
pub fn shifted_sin_via_difference(m: u32, n: u32) -> Rational {
    sin_power_sum(m, 2 * n) - sin_power_sum(m, n)
}

fn shifted_explicit(m: u32, n: u32, weight: impl Fn(u64) -> i64) -> Rational {
    assert!(n > 0, "n must be positive");
    if m == 0 {
        return int(n);
    }
    let (m, n) = (m as u64, n as u64);
    let inner = binom(2 * m - 1, m as i64 - 1) + tail_sum(m, n, weight);
    Rational::new(inner * n, pow2(2 * m - 1))
}

/// `sum_{k=0}^{3n-1} cos(2k pi/3) trig^{2m}(k pi/3n) = (3 T(m,n) - T(m,3n))/2`.
pub fn weight3_sum(kind: Trig, m: u32, n: u32) -> Rational {
    (base_sum(kind, m, n) * int(3) - base_sum(kind, m, 3 * n)) / int(2)
}

/// The published three-case expressions for [`weight3_sum`].
pub fn weight3_explicit(kind: Trig, m: u32, n: u32) -> Rational {
    assert!(n > 0, "n must be positive");
    let (m64, n64) = (m as u64, n as u64);
    if m64 < n64 {
        return Rational::zero();
    }
    let weight = |step: u64| {
        move |p: u64| match kind {
            Trig::Cos => 1,
            Trig::Sin => sign(p * step) as i64,
        }
    };
    let mut inner = tail_sum(m64, n64, weight(n64));
    if m64 >= 3 * n64 {
        inner -= tail_sum(m64, 3 * n64, weight(3 * n64));
    }
    Rational::new(inner * (3 * n64), pow2(2 * m64))
}

/// `sum_{k=0}^{4n-1} cos(k pi/2) cos^{2m}(k pi/4n) = 2 C(m,n) - C(m,2n)`.
pub fn weight_half_pi_sum(m: u32, n: u32) -> Rational {
    cos_power_sum(m, n) * int(2) - cos_power_sum(m, 2 * n)
}

/// `sum_{k=0}^{3n-1} cos(k pi/3) cos^{2m}(k pi/3n)` for even `n`:
/// `3 C(m,n/2) - 3 C(m,n)/2 + C(m,3n)/2 - C(m,3n/2)`.
pub fn weight_pi3_sum(m: u32, n: u32) -> Result<Rational> {
    SumSpec::WeightPi3 { m, n }.validate()?;
    let h = n / 2;
    Ok(
        cos_power_sum(m, h) * int(3) - cos_power_sum(m, n) * rat(3, 2)
            + cos_power_sum(m, 3 * n) / int(2)
            - cos_power_sum(m, 3 * h),
    )
}

/// The published five-case expression for [`weight_pi3_sum`] (even `n`), with
/// the half-integer steps `pn/2` and `3pn/2` realized as integers `p*h`, `3p*h`.
pub fn weight_pi3_explicit(m: u32, n: u32) -> Result<Rational> {
    SumSpec::WeightPi3 { m, n }.validate()?;
    let (m64, n64) = (m as u64, n as u64);
    let h = n64 / 2;
    let ones = |_| 1;
    let inner = if m64 < h {
        BigInt::zero()
    } else if m64 < n64 {
        tail_sum(m64, h, ones)
    } else if m64 < 3 * h {
        tail_sum(m64, h, ones) - tail_sum(m64, n64, ones)
    } else if m64 < 3 * n64 {
        tail_sum(m64, h, ones) - tail_sum(m64, n64, ones) - tail_sum(m64, 3 * h, ones)
    } else {
        tail_sum(m64, h, ones) - tail_sum(m64, n64, ones) - tail_sum(m64, 3 * h, ones)
            + tail_sum(m64, 3 * n64, ones)
    };
    Ok(Rational::new(inner * (3 * n64), pow2(2 * m64)))
}

/// Published three-case form of `sum_{k=0}^{3n-1} (-1)^k cos^{2m}(k pi/3n)` for
/// even `n`; equals `alternating_sum(Cos, m, 3n) = 2 C(m,3n/2) - C(m,3n)`.
pub fn alternating_third_explicit(m: u32, n: u32) -> Result<Rational> {
    SumSpec::WeightPi3 { m, n }.validate()?;
    let (m64, n64) = (m as u64, n as u64);
    let h3 = 3 * n64 / 2;
    let ones = |_| 1;
    let inner = if m64 < h3 {
        BigInt::zero()
    } else if m64 < 3 * n64 {
        tail_sum(m64, h3, ones)
    } else {
        tail_sum(m64, h3, ones) - tail_sum(m64, 3 * n64, ones)
    };
    Ok(Rational::new(inner * (6 * n64), pow2(2 * m64)))
}

/// The four fifth-root weighted sums over `k = 0..5n-1` of `w(k) cos^{2m}(k pi/5n)`.
pub fn ell5_sum(variant: Ell5Variant, m: u32, n: u32) -> Result<Rational> {
    SumSpec::Ell5 { variant, m, n }.validate()?;
    let c = cos_power_sum;
    Ok(match variant {
        Ell5Variant::Product => (c(m, n) * int(5) - c(m, 5 * n)) / int(4),
        Ell5Variant::AltProduct => {
            let h = n / 2;
            (c(m, h) * int(10) - c(m, 5 * h) * int(2) + c(m, 5 * n) - c(m, n) * int(5)) / int(4)
        }
        Ell5Variant::Cos2 => ell5_cos2(m, n),
        Ell5Variant::Cos4 => (c(m, n) * int(10) - c(m, 5 * n) * int(2)) / int(4) - ell5_cos2(m, n),
    })
}

// Power reduction of cos(2n x) into even powers of cos x, summed against
// C(., 5n).
fn ell5_cos2(m: u32, n: u32) -> Rational {
    let n64 = n as u64;
    let mut acc = cos_power_sum(m + n, 5 * n) * pow2_rational(2 * n64 as i64 - 1);
    for j in 0..n64 {
        let coeff = Rational::new(
            binom(2 * n64 - j - 2, j as i64) * pow2(2 * n64 - 2 * j - 2) * sign(j + 1),
            BigInt::from(j + 1),
        );
        acc += coeff * cos_power_sum(m + n - j as u32 - 1, 5 * n) * int(n);
    }
    acc
}
