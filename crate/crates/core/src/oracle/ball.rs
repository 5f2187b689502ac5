//! Fixed-point midpoint-radius arithmetic.
//!
//! A [`Ball`] at precision `p` stands for every real in
//! `[(mid - rad) 2^-p, (mid + rad) 2^-p]`. Each operation widens the radius
//! enough to cover its own rounding, so the true value is always enclosed.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Ball {
    pub mid: BigInt,
    pub rad: BigInt,
    pub prec: u32,
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball {
            mid: BigInt::zero(),
            rad: BigInt::zero(),
            prec,
        }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        Ball {
            mid: v.into() << prec as usize,
            rad: BigInt::zero(),
            prec,
        }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let (q, rem) = (r.numer() << prec as usize).div_mod_floor(r.denom());
        let rad = if rem.is_zero() {
            BigInt::zero()
        } else {
            BigInt::one()
        };
        Ball { mid: q, rad, prec }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Upper bound on `|x|` in ulps.
    pub fn magnitude(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    pub fn lower(&self) -> BigInt {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> BigInt {
        &self.mid + &self.rad
    }

    pub fn add(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball {
            mid: &self.mid + &o.mid,
            rad: &self.rad + &o.rad,
            prec: self.prec,
        }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        Ball {
            mid: &self.mid - &o.mid,
            rad: &self.rad + &o.rad,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        debug_assert_eq!(self.prec, o.prec);
        let p = self.prec as usize;
        let prod = &self.mid * &o.mid;
        let mid = &prod >> p;
        let mut rad = if self.is_exact() && o.is_exact() {
            BigInt::zero()
        } else {
            let spread = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
            (spread >> p) + 1
        };
        if (&mid << p) != prod {
            rad += 1;
        }
        Ball {
            mid,
            rad,
            prec: self.prec,
        }
    }

    pub fn square(&self) -> Ball {
        self.mul(self)
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        Ball {
            mid: &self.mid * k,
            rad: &self.rad * k.abs(),
            prec: self.prec,
        }
    }

    /// Division by a non-zero integer.
    pub fn div_int(&self, k: &BigInt) -> Ball {
        assert!(!k.is_zero(), "division by zero");
        let (mid, rem) = self.mid.div_rem(k);
        let k_abs = k.abs();
        let mut rad = self.rad.div_ceil(&k_abs);
        if !rem.is_zero() {
            rad += 1;
        }
        Ball {
            mid,
            rad,
            prec: self.prec,
        }
    }

    /// Quotient enclosure; `None` if the divisor ball contains zero.
    pub fn div(&self, o: &Ball) -> Option<Ball> {
        debug_assert_eq!(self.prec, o.prec);
        let b_abs = o.mid.abs();
        if b_abs <= o.rad {
            return None;
        }
        let p = self.prec as usize;
        let num = &self.mid << p;
        let (mid, rem) = num.div_rem(&o.mid);
        // |x/y - A/B| <= (R|B| + |A|S) / ((|B| - S)|B|), in units of 2^-p
        let spread = (&self.rad * &b_abs + self.mid.abs() * &o.rad) << p;
        let mut rad = spread.div_ceil(&((&b_abs - &o.rad) * &b_abs));
        if !rem.is_zero() {
            rad += 1;
        }
        Some(Ball {
            mid,
            rad,
            prec: self.prec,
        })
    }

    pub fn pow(&self, mut e: u64) -> Ball {
        let mut result = Ball::from_int(1, self.prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Drops `bits` of precision, rounding the enclosure outward.
    pub fn coarsen(&self, bits: u32) -> (BigInt, BigInt) {
        let shift = bits as usize;
        let lower = self.lower() >> shift;
        let upper = -((-self.upper()) >> shift);
        (lower, upper)
    }
}

/// `atan(1/x)` at precision `prec`, alternating series in fixed point.
fn atan_inverse(x: u64, prec: u32) -> Ball {
    let x = BigInt::from(x);
    let x_sq = &x * &x;
    let mut power = (BigInt::one() << prec as usize) / &x;
    let mut sum = power.clone();
    let mut terms: u64 = 1;
    let mut k: u64 = 0;
    loop {
        power /= &x_sq;
        k += 1;
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        terms += 1;
    }
    // each term is floored twice; the dropped alternating tail is below one ulp
    Ball {
        mid: sum,
        rad: BigInt::from(2 * terms + 2),
        prec,
    }
}

fn pi_uncached(prec: u32) -> Ball {
    let a = atan_inverse(5, prec).mul_int(&BigInt::from(16));
    let b = atan_inverse(239, prec).mul_int(&BigInt::from(4));
    a.sub(&b)
}

/// Enclosure of pi, shared across threads per precision.
pub(crate) fn pi(prec: u32) -> Ball {
    static CACHE: OnceLock<Mutex<HashMap<u32, Ball>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("pi cache poisoned").get(&prec) {
        return b.clone();
    }
    let value = pi_uncached(prec);
    cache
        .lock()
        .expect("pi cache poisoned")
        .entry(prec)
        .or_insert(value)
        .clone()
}

/// Alternating Taylor series of cos (or sin, if `odd`) at `x`, `|x| <= 1`.
fn taylor_trig(x: &Ball, odd: bool) -> Ball {
    let prec = x.prec;
    let x_sq = x.square();
    let mut term = if odd {
        x.clone()
    } else {
        Ball::from_int(1, prec)
    };
    let mut sum = term.clone();
    let mut k: u64 = if odd { 1 } else { 0 };
    let mut negative = false;
    loop {
        term = term.mul(&x_sq).div_int(&BigInt::from((k + 1) * (k + 2)));
        k += 2;
        negative = !negative;
        sum = if negative {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
        if term.magnitude() <= BigInt::one() {
            break;
        }
    }
    sum.rad += 1;
    sum
}

/// Angle `r pi` reduced to `s pi` with `0 <= s <= 1/4`, and which function to use.
struct Reduced {
    s: Rational,
    use_sin: bool,
    negate: bool,
}

fn reduce(r: &Rational, want_sin: bool) -> Reduced {
    let two = BigInt::from(2);
    let period = r.denom() * &two;
    let mut s = Rational::new(r.numer().mod_floor(&period), r.denom().clone());
    let mut use_sin = want_sin;
    let mut negate = false;
    let one = Rational::one();
    let half = Rational::new(BigInt::one(), two.clone());
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    if s > one {
        // cos(s) = cos(2 - s), sin(s) = -sin(2 - s)
        s = Rational::from_integer(two.clone()) - s;
        if use_sin {
            negate = !negate;
        }
    }
    if s > half {
        // cos(s) = -cos(1 - s), sin(s) = sin(1 - s)
        s = &one - s;
        if !use_sin {
            negate = !negate;
        }
    }
    if s > quarter {
        s = half - s;
        use_sin = !use_sin;
    }
    Reduced { s, use_sin, negate }
}

fn trig_pi(r: &Rational, want_sin: bool, prec: u32) -> Ball {
    let red = reduce(r, want_sin);
    let value = if red.s.is_zero() {
        Ball::from_int(if red.use_sin { 0 } else { 1 }, prec)
    } else {
        let x = pi(prec).mul_int(red.s.numer()).div_int(red.s.denom());
        taylor_trig(&x, red.use_sin)
    };
    if red.negate {
        value.neg()
    } else {
        value
    }
}

/// Enclosure of `cos(r pi)`.
pub(crate) fn cos_pi(r: &Rational, prec: u32) -> Ball {
    trig_pi(r, false, prec)
}

/// Enclosure of `sin(r pi)`.
pub(crate) fn sin_pi(r: &Rational, prec: u32) -> Ball {
    trig_pi(r, true, prec)
}

/// Enclosure of `exp(x)` for `|x| <= 1/2`.
pub(crate) fn exp_small(x: &Ball) -> Ball {
    let prec = x.prec;
    debug_assert!(x.magnitude() <= (BigInt::one() << (prec as usize - 1)) + 8);
    let mut term = Ball::from_int(1, prec);
    let mut sum = term.clone();
    let mut k: u64 = 0;
    loop {
        k += 1;
        term = term.mul(x).div_int(&BigInt::from(k));
        sum = sum.add(&term);
        if term.magnitude() <= BigInt::one() {
            break;
        }
    }
    // remaining terms shrink by at least half each step
    sum.rad += 2;
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn to_f64(b: &Ball) -> f64 {
        let scale = 2f64.powi(b.prec as i32);
        let mid: f64 = b.mid.to_string().parse().unwrap();
        mid / scale
    }

    fn encloses(b: &Ball, v: f64) -> bool {
        let scale = 2f64.powi(b.prec as i32);
        let lo: f64 = b.lower().to_string().parse::<f64>().unwrap() / scale;
        let hi: f64 = b.upper().to_string().parse::<f64>().unwrap() / scale;
        lo - 1e-13 <= v && v <= hi + 1e-13
    }

    #[test]
    fn pi_digits() {
        let p = pi(200);
        assert!(p.rad < BigInt::from(4096));
        // 314159265358979323846 / 10^20
        let scaled = (&p.mid * BigInt::from(10).pow(20)) >> 200usize;
        assert_eq!(scaled, "314159265358979323846".parse::<BigInt>().unwrap());
    }

    #[test]
    fn trig_values_enclose_f64() {
        for num in -20i64..=20 {
            for den in [1i64, 2, 3, 5, 7, 12] {
                let r = rat(num, den);
                let x = num as f64 / den as f64 * std::f64::consts::PI;
                assert!(encloses(&cos_pi(&r, 80), x.cos()), "cos {num}/{den}");
                assert!(encloses(&sin_pi(&r, 80), x.sin()), "sin {num}/{den}");
            }
        }
    }

    #[test]
    fn exact_angles() {
        assert_eq!(cos_pi(&rat(0, 1), 64), Ball::from_int(1, 64));
        assert_eq!(sin_pi(&rat(1, 1), 64), Ball::from_int(0, 64));
        assert_eq!(cos_pi(&rat(1, 2), 64), Ball::from_int(0, 64));
        assert_eq!(cos_pi(&rat(1, 1), 64), Ball::from_int(-1, 64));
    }

    #[test]
    fn division_and_power() {
        let third = Ball::from_int(1, 100).div_int(&BigInt::from(3));
        let back = Ball::from_int(1, 100).div(&third).unwrap();
        assert!(
            back.lower() <= BigInt::from(3) << 100usize
                && BigInt::from(3) << 100usize <= back.upper()
        );
        let two = Ball::from_int(2, 64);
        assert_eq!(two.pow(10), Ball::from_int(1024, 64));
        let zeroish = Ball {
            mid: BigInt::from(1),
            rad: BigInt::from(2),
            prec: 100,
        };
        assert!(third.div(&zeroish).is_none());
    }

    #[test]
    fn coarsen_rounds_outward() {
        let b = Ball {
            mid: BigInt::from(-5),
            rad: BigInt::from(0),
            prec: 2,
        };
        assert_eq!(b.coarsen(2), (BigInt::from(-2), BigInt::from(-1)));
        let c = Ball {
            mid: BigInt::from(5),
            rad: BigInt::from(0),
            prec: 2,
        };
        assert_eq!(c.coarsen(2), (BigInt::from(1), BigInt::from(2)));
    }

    #[test]
    fn exp_matches_f64() {
        let b = exp_small(&Ball::from_rational(&rat(1, 2), 80));
        assert!((to_f64(&b) - 0.5f64.exp()).abs() < 1e-15);
        let c = exp_small(&Ball::from_rational(&rat(-1, 3), 80));
        assert!(encloses(&c, (-1.0f64 / 3.0).exp()));
    }
}
