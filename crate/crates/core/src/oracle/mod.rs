//! Ground truth by brute force: sum the defining terms in rigorous
//! fixed-point interval arithmetic, then recover the exact rational from an
//! a-priori denominator bound.
//!
//! Nothing here calls the closed-form evaluators; the only shared code is the
//! parameter types.

mod ball;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::closed_forms::{Ell5Variant, SumSpec, Trig};
use crate::cotangent::CotSumParams;
use crate::error::{invalid, Error, Result};
use crate::exact::{bernoulli, factorial, int, pow2, rat, Rational};
use ball::{cos_pi, exp_small, sin_pi, Ball};

/// Anything the oracle can evaluate and reconstruct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Sum(SumSpec),
    /// `sum_{r=1}^{k-1} cot^{2n}(r pi/k)`
    Cot(CotSumParams),
    /// `sum_{r=1}^{k} cot^{2n}((r - 1/2) pi/(2k))`
    HalfShiftedCot {
        n: u32,
        k: u32,
    },
    /// `sum_{k=0}^{n-1} cos^{2j+1}(k pi/n)`
    OddCosPower {
        j: u32,
        n: u32,
    },
    /// `sum_{l=1}^{n-1} (2 cos(l pi/n))^{2m}`, the path spectrum
    PathSpectrum {
        n: u32,
        m: u32,
    },
    /// `sum_{l=0}^{n-1} (2 cos(2 l pi/n))^{2m}`, the cycle spectrum
    CycleSpectrum {
        n: u32,
        m: u32,
    },
}

impl From<SumSpec> for Target {
    fn from(s: SumSpec) -> Self {
        Target::Sum(s)
    }
}

impl From<CotSumParams> for Target {
    fn from(c: CotSumParams) -> Self {
        Target::Cot(c)
    }
}

/// Enclosure `[lower, upper] * 2^-precision_bits` of a real value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalValue {
    pub lower: BigInt,
    pub upper: BigInt,
    pub precision_bits: u32,
}

impl IntervalValue {
    pub fn width(&self) -> Rational {
        Rational::new(&self.upper - &self.lower, pow2(self.precision_bits as u64))
    }

    pub fn contains(&self, v: &Rational) -> bool {
        let scaled = v * int(pow2(self.precision_bits as u64));
        int(self.lower.clone()) <= scaled && scaled <= int(self.upper.clone())
    }

    pub fn lower_rational(&self) -> Rational {
        Rational::new(self.lower.clone(), pow2(self.precision_bits as u64))
    }

    pub fn upper_rational(&self) -> Rational {
        Rational::new(self.upper.clone(), pow2(self.precision_bits as u64))
    }
}

/// How to turn an interval into an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionPolicy {
    pub denominator_bound: BigInt,
    pub guard_bits: u32,
}

impl ReconstructionPolicy {
    pub fn new(denominator_bound: BigInt) -> Self {
        ReconstructionPolicy {
            denominator_bound,
            guard_bits: 32,
        }
    }
}

/// Extra bits carried internally beyond the requested precision.
const GUARD: u32 = 64;
/// Retries with doubled precision before giving up.
const MAX_RETRIES: u32 = 4;

fn trig_power(kind: Trig, angle: &Rational, exponent: u64, prec: u32) -> Ball {
    if exponent == 0 {
        return Ball::from_int(1, prec);
    }
    let base = match kind {
        Trig::Cos => cos_pi(angle, prec),
        Trig::Sin => sin_pi(angle, prec),
    };
    base.pow(exponent)
}

fn sum_over(range: impl Iterator<Item = i64>, prec: u32, term: impl Fn(i64) -> Ball) -> Ball {
    range.fold(Ball::zero(prec), |acc, k| acc.add(&term(k)))
}

fn alternating(k: i64, b: Ball) -> Ball {
    if k % 2 == 0 {
        b
    } else {
        b.neg()
    }
}

fn sum_ball(spec: &SumSpec, prec: u32) -> Result<Ball> {
    spec.validate()?;
    let two_m = 2 * spec.m() as u64;
    let n = spec.n() as i64;
    let power = |kind: Trig, num: i64, den: i64| trig_power(kind, &rat(num, den), two_m, prec);
    let scale_pow4 = |b: Ball| b.mul_int(&pow2(two_m));
    let ball = match *spec {
        SumSpec::CosPower { .. } => sum_over(0..n, prec, |k| power(Trig::Cos, k, n)),
        SumSpec::SinPower { .. } => sum_over(0..n, prec, |k| power(Trig::Sin, k, n)),
        SumSpec::Scaled { kind, q, .. } => sum_over(0..q as i64, prec, |k| power(kind, k, n)),
        SumSpec::Coprime { kind, q, .. } | SumSpec::GcdReduced { kind, q, .. } => {
            sum_over(0..n, prec, |k| power(kind, q as i64 * k, n))
        }
        SumSpec::Quoniam { .. } => {
            scale_pow4(sum_over(1..=n / 2, prec, |k| power(Trig::Cos, k, n + 1)))
        }
        SumSpec::MercaHalf { .. } => sum_over(1..=(n - 1) / 2, prec, |k| power(Trig::Cos, k, n)),
        SumSpec::MercaShifted { .. } => {
            sum_over(1..=n / 2, prec, |k| power(Trig::Cos, 2 * k - 1, 2 * n))
        }
        SumSpec::BarberoR { .. } => scale_pow4(sum_over(1..=n + 1, prec, |k| {
            power(Trig::Cos, k, 2 * n + 3)
        })),
        SumSpec::Alternating { kind, .. } => {
            sum_over(0..n, prec, |k| alternating(k, power(kind, k, n)))
        }
        SumSpec::ShiftedCos { .. } => sum_over(0..n, prec, |k| power(Trig::Cos, 2 * k + 1, 2 * n)),
        SumSpec::ShiftedSin { .. } => sum_over(0..n, prec, |k| power(Trig::Sin, 2 * k + 1, 2 * n)),
        SumSpec::Weight3 { kind, .. } => sum_over(0..3 * n, prec, |k| {
            cos_pi(&rat(2 * k, 3), prec).mul(&power(kind, k, 3 * n))
        }),
        SumSpec::WeightHalfPi { .. } => sum_over(0..4 * n, prec, |k| {
            cos_pi(&rat(k, 2), prec).mul(&power(Trig::Cos, k, 4 * n))
        }),
        SumSpec::WeightPi3 { .. } => sum_over(0..3 * n, prec, |k| {
            cos_pi(&rat(k, 3), prec).mul(&power(Trig::Cos, k, 3 * n))
        }),
        SumSpec::Ell5 { variant, .. } => sum_over(0..5 * n, prec, |k| {
            let c = |num: i64| cos_pi(&rat(num * k, 5), prec);
            let weight = match variant {
                Ell5Variant::Product => c(2).mul(&c(4)),
                Ell5Variant::AltProduct => c(1).mul(&c(2)),
                Ell5Variant::Cos2 => c(2),
                Ell5Variant::Cos4 => c(4),
            };
            weight.mul(&power(Trig::Cos, k, 5 * n))
        }),
    };
    Ok(ball)
}

fn cot_power(angle: &Rational, exponent: u64, prec: u32) -> Result<Ball> {
    let c = cos_pi(angle, prec);
    let s = sin_pi(angle, prec);
    let cot = c.div(&s).ok_or(Error::PrecisionExhausted {
        precision_bits: prec,
    })?;
    Ok(cot.pow(exponent))
}

fn target_ball(target: &Target, prec: u32) -> Result<Ball> {
    match *target {
        Target::Sum(spec) => sum_ball(&spec, prec),
        Target::Cot(CotSumParams { n, k }) => {
            CotSumParams::new(n, k)?;
            let mut acc = Ball::zero(prec);
            for r in 1..k as i64 {
                acc = acc.add(&cot_power(&rat(r, k as i64), 2 * n as u64, prec)?);
            }
            Ok(acc)
        }
        Target::HalfShiftedCot { n, k } => {
            if n == 0 || k == 0 {
                return Err(invalid("n and k must be positive"));
            }
            let mut acc = Ball::zero(prec);
            for r in 1..=k as i64 {
                acc = acc.add(&cot_power(
                    &rat(2 * r - 1, 4 * k as i64),
                    2 * n as u64,
                    prec,
                )?);
            }
            Ok(acc)
        }
        Target::OddCosPower { j, n } => {
            if n == 0 {
                return Err(invalid("n must be positive"));
            }
            let e = 2 * j as u64 + 1;
            Ok(sum_over(0..n as i64, prec, |k| {
                cos_pi(&rat(k, n as i64), prec).pow(e)
            }))
        }
        Target::PathSpectrum { n, m } => {
            if n < 2 {
                return Err(invalid("path parameter n must be at least 2"));
            }
            Ok(sum_over(1..n as i64, prec, |l| {
                cos_pi(&rat(l, n as i64), prec)
                    .mul_int(&BigInt::from(2))
                    .pow(2 * m as u64)
            }))
        }
        Target::CycleSpectrum { n, m } => {
            if n < 3 {
                return Err(invalid("cycle needs at least 3 vertices"));
            }
            Ok(sum_over(0..n as i64, prec, |l| {
                cos_pi(&rat(2 * l, n as i64), prec)
                    .mul_int(&BigInt::from(2))
                    .pow(2 * m as u64)
            }))
        }
    }
}

fn to_interval(ball: &Ball, precision_bits: u32) -> IntervalValue {
    let (lower, upper) = ball.coarsen(ball.prec - precision_bits);
    IntervalValue {
        lower,
        upper,
        precision_bits,
    }
}

/// Enclosure of the target's defining sum at `precision_bits` (at least 64).
pub fn direct_sum(target: &Target, precision_bits: u32) -> Result<IntervalValue> {
    if precision_bits < 64 {
        return Err(invalid("precision must be at least 64 bits"));
    }
    let ball = target_ball(target, precision_bits + GUARD)?;
    Ok(to_interval(&ball, precision_bits))
}

/// `sum_{k=0}^{n-1} exp(z cos(k pi/n))` for `|z| <= 1/2`; the value is
/// transcendental, so only the enclosure is returned.
pub fn exp_cos_sum(n: u32, z: &Rational, precision_bits: u32) -> Result<IntervalValue> {
    exp_trig_sum(Trig::Cos, n, 1, z, precision_bits)
}

/// `sum_{k=0}^{n-1} exp(z sin(q k pi/n))` for `|z| <= 1/2`.
pub fn exp_sin_sum(n: u32, q: u32, z: &Rational, precision_bits: u32) -> Result<IntervalValue> {
    exp_trig_sum(Trig::Sin, n, q, z, precision_bits)
}

fn exp_trig_sum(
    kind: Trig,
    n: u32,
    q: u32,
    z: &Rational,
    precision_bits: u32,
) -> Result<IntervalValue> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    if z.abs() > rat(1, 2) {
        return Err(invalid("|z| must be at most 1/2"));
    }
    if precision_bits < 64 {
        return Err(invalid("precision must be at least 64 bits"));
    }
    let prec = precision_bits + GUARD;
    let zb = Ball::from_rational(z, prec);
    let acc = sum_over(0..n as i64, prec, |k| {
        let angle = rat(q as i64 * k, n as i64);
        let t = match kind {
            Trig::Cos => cos_pi(&angle, prec),
            Trig::Sin => sin_pi(&angle, prec),
        };
        exp_small(&zb.mul(&t))
    });
    Ok(to_interval(&acc, precision_bits))
}

/// The unique `N / D` inside `value`, where `D` is the policy's bound.
pub fn reconstruct(value: &IntervalValue, policy: &ReconstructionPolicy) -> Result<Rational> {
    let d = &policy.denominator_bound;
    if !d.is_positive() {
        return Err(invalid("denominator bound must be positive"));
    }
    let p = value.precision_bits as usize;
    let scaled_width = (&value.upper - &value.lower) * d;
    let limit = BigInt::one() << p.saturating_sub(policy.guard_bits as usize);
    if p < policy.guard_bits as usize || scaled_width >= limit {
        return Err(Error::AmbiguousReconstruction);
    }
    let unit = BigInt::one() << p;
    let first = (&value.lower * d).div_ceil(&unit);
    let last = (&value.upper * d).div_floor(&unit);
    if first > last {
        return Err(Error::NoIntegerNearby {
            bound: d.to_string(),
        });
    }
    if first != last {
        return Err(Error::AmbiguousReconstruction);
    }
    Ok(Rational::new(first, d.clone()))
}

fn lcm_bernoulli_denominators(n: u32) -> BigInt {
    (1..=n as usize).fold(BigInt::one(), |acc, j| acc.lcm(bernoulli(2 * j).denom()))
}

/// Denominator of the cotangent sums' interpolating polynomial for small `n`.
fn known_cot_denominator(n: u32) -> Option<u64> {
    match n {
        1 => Some(3),
        2 => Some(45),
        3 => Some(945),
        4 => Some(14175),
        _ => None,
    }
}

/// A positive integer `D` such that `D * value` is an integer.
///
/// Trigonometric power sums carry at most `2^{2m+1}` from the binomial
/// expansion; weighted families add small factors (2 or 4) from their root
/// of unity weights. For the cotangent sums without a known polynomial, every
/// product `prod_i B_{2j_i}/(2j_i)!` over a composition of `n` has a denominator
/// dividing `(2n)! L^n` with `L = lcm(den B_2, ..., den B_{2n})`.
pub fn denominator_bound_for(target: &Target) -> BigInt {
    match *target {
        Target::Sum(spec) => {
            let e = 2 * spec.m() as u64;
            match spec {
                SumSpec::Quoniam { .. } | SumSpec::BarberoR { .. } => BigInt::one(),
                SumSpec::Weight3 { .. }
                | SumSpec::WeightHalfPi { .. }
                | SumSpec::WeightPi3 { .. } => pow2(e + 3),
                SumSpec::Ell5 { .. } => pow2(e + 4),
                _ => pow2(e + 2),
            }
        }
        Target::Cot(CotSumParams { n, .. }) => match known_cot_denominator(n) {
            Some(d) => BigInt::from(d),
            None => factorial(2 * n as u64) * lcm_bernoulli_denominators(n).pow(n),
        },
        Target::HalfShiftedCot { .. }
        | Target::OddCosPower { .. }
        | Target::PathSpectrum { .. }
        | Target::CycleSpectrum { .. } => BigInt::one(),
    }
}

/// Rough bit size of the target's value, used to size the working precision.
fn magnitude_bits(target: &Target) -> u32 {
    let log2 = |x: u64| 64 - x.max(1).leading_zeros();
    match *target {
        Target::Sum(spec) => 2 * spec.m() + log2(5 * spec.n() as u64 + spec.q() as u64) + 2,
        Target::Cot(CotSumParams { n, k }) | Target::HalfShiftedCot { n, k } => {
            2 * n * (log2(4 * k as u64) + 1) + log2(k as u64)
        }
        Target::OddCosPower { n, .. } => log2(n as u64),
        Target::PathSpectrum { n, m } | Target::CycleSpectrum { n, m } => {
            2 * m + log2(n as u64) + 1
        }
    }
}

/// Starting precision for [`evaluate`]: room for the denominator bound, the
/// value's size and the rounding error of a few thousand operations.
pub fn default_precision(target: &Target) -> u32 {
    let d_bits = denominator_bound_for(target).bits() as u32;
    (d_bits + 2 * magnitude_bits(target) + 96).max(128)
}

/// Exact value of the target from its defining sum, retrying with doubled
/// precision until the enclosure is narrow enough.
pub fn evaluate(target: &Target) -> Result<Rational> {
    let policy = ReconstructionPolicy::new(denominator_bound_for(target));
    evaluate_with(target, &policy, default_precision(target))
}

pub fn evaluate_with(
    target: &Target,
    policy: &ReconstructionPolicy,
    start_precision: u32,
) -> Result<Rational> {
    let mut prec = start_precision.max(64);
    for _ in 0..=MAX_RETRIES {
        match direct_sum(target, prec) {
            Ok(value) => match reconstruct(&value, policy) {
                Err(Error::AmbiguousReconstruction) => {}
                other => return other,
            },
            Err(Error::PrecisionExhausted { .. }) => {}
            Err(e) => return Err(e),
        }
        prec *= 2;
    }
    Err(Error::PrecisionExhausted {
        precision_bits: prec / 2,
    })
}
