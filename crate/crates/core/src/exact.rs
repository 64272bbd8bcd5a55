//! Exact scalars: arbitrary-precision rationals, dyadic rationals and points
//! of the circle `R/Z`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `x mod 1`, in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn half(x: &Rational) -> Rational {
    x / int(2)
}

/// `2^e` as a rational; negative exponents allowed.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// If `x` is `±2^e`, returns `e`.
pub fn log2_exact(x: &Rational) -> Option<i64> {
    if !x.is_positive() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let is_pow = |v: &BigInt| v.is_positive() && (v & (v - BigInt::one())).is_zero();
    if n.is_one() && is_pow(d) {
        Some(-(d.bits() as i64 - 1))
    } else if d.is_one() && is_pow(n) {
        Some(n.bits() as i64 - 1)
    } else {
        None
    }
}

pub fn is_dyadic(x: &Rational) -> bool {
    let d = x.denom();
    (d & (d - BigInt::one())).is_zero()
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse {
        input: s.to_string(),
        position: 0,
        message: "expected a rational `p/q` or integer `p`".into(),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse {
                    input: s.to_string(),
                    position: 0,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Canonical text of a rational: `p/q` in lowest terms, or `p` for integers.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of positive integers.
pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1, |acc, v| acc.lcm(&v))
}

/// A dyadic rational `numerator / 2^exponent` in canonical form
/// (odd numerator, or exponent zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: BigInt, exponent: u32) -> Self {
        let mut n = numerator;
        let mut e = exponent;
        while e > 0 && n.is_even() {
            n >>= 1;
            e -= 1;
        }
        if n.is_zero() {
            e = 0;
        }
        Dyadic { numerator: n, exponent: e }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }
}

impl TryFrom<&Rational> for Dyadic {
    type Error = Error;

    fn try_from(x: &Rational) -> Result<Self, Error> {
        if !is_dyadic(x) {
            return Err(Error::NotDyadic(fmt_rational(x)));
        }
        let e = x.denom().bits() as u32 - 1;
        Ok(Dyadic::new(x.numer().clone(), e))
    }
}

/// A point of the circle, represented by its unique rational in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePoint(Rational);

impl CirclePoint {
    pub fn new(x: Rational) -> Self {
        CirclePoint(frac(&x))
    }

    pub fn zero() -> Self {
        CirclePoint(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    /// Circular distance: the shorter of the two arc lengths between the
    /// points, in `[0, 1/2]`.
    pub fn distance(&self, other: &CirclePoint) -> Rational {
        let d = frac(&(&self.0 - &other.0));
        let e = Rational::one() - &d;
        if d <= e {
            d
        } else {
            e
        }
    }

    /// Length of the positively oriented arc from `self` to `other`, in `[0, 1)`.
    pub fn forward_to(&self, other: &CirclePoint) -> Rational {
        frac(&(&other.0 - &self.0))
    }

    /// True when `self`, `b`, `c` are distinct and occur in this order going
    /// around the circle in the positive direction.
    pub fn cyclic_order(&self, b: &CirclePoint, c: &CirclePoint) -> bool {
        if self == b || b == c || self == c {
            return false;
        }
        self.forward_to(b) < self.forward_to(c)
    }
}

impl From<Rational> for CirclePoint {
    fn from(x: Rational) -> Self {
        CirclePoint::new(x)
    }
}

impl FromStr for CirclePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse_rational(s).map(CirclePoint::new)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

/// Simplest dyadic strictly between `lo` and `hi` (lowest power of two in the
/// denominator, then smallest value). Requires `lo < hi`.
pub fn simplest_dyadic_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    let mut e = 0i64;
    loop {
        let scale = pow2(e);
        // smallest k with k / 2^e > lo
        let k = (lo * &scale).floor() + Rational::one();
        let cand = &k / &scale;
        if cand.cmp(hi) == Ordering::Less {
            return cand;
        }
        e += 1;
    }
}

/// Lower and upper rational brackets of `x^(1/n)` at precision `10^-digits`.
/// Returns `(lo, hi, exact)`; `exact` means `lo == hi == x^(1/n)`.
pub fn nth_root_bracket(x: &Rational, n: u32, digits: u32) -> (Rational, Rational, bool) {
    assert!(n >= 1);
    assert!(!x.is_negative(), "root of a negative number");
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * Rational::from_integer(scale.pow(n));
    let floor = scaled.floor().to_integer();
    let r = floor.nth_root(n);
    let lo = Rational::new(r.clone(), scale.clone());
    let exact = Rational::from_integer(r.pow(n)) == scaled;
    if exact {
        (lo.clone(), lo, true)
    } else {
        let hi = Rational::new(r + BigInt::one(), scale);
        (lo, hi, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(fmt_rational(&rat(3, 4)), "3/4");
        assert_eq!(fmt_rational(&int(-2)), "-2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn dyadic_canonical() {
        let d = Dyadic::new(BigInt::from(12), 5);
        assert_eq!(d.numerator(), &BigInt::from(3));
        assert_eq!(d.exponent(), 3);
        assert_eq!(d.to_rational(), rat(3, 8));
        assert!(Dyadic::try_from(&rat(1, 3)).is_err());
        assert_eq!(Dyadic::try_from(&int(5)).unwrap().exponent(), 0);
    }

    #[test]
    fn circle_points() {
        let a = CirclePoint::new(rat(9, 8));
        assert_eq!(a.value(), &rat(1, 8));
        let b = CirclePoint::new(rat(7, 8));
        assert_eq!(a.distance(&b), rat(1, 4));
        assert!(b.cyclic_order(&CirclePoint::zero(), &a));
        assert!(!a.cyclic_order(&CirclePoint::zero(), &b));
    }

    #[test]
    fn log2_and_roots() {
        assert_eq!(log2_exact(&rat(1, 8)), Some(-3));
        assert_eq!(log2_exact(&int(4)), Some(2));
        assert_eq!(log2_exact(&int(3)), None);
        let (lo, hi, exact) = nth_root_bracket(&int(9), 2, 4);
        assert!(exact && lo == int(3) && hi == int(3));
        let (lo, hi, exact) = nth_root_bracket(&rat(3, 4), 2, 4);
        assert!(!exact);
        assert_eq!(lo, rat(8660, 10000));
        assert_eq!(hi, rat(8661, 10000));
    }

    #[test]
    fn simplest_dyadic() {
        assert_eq!(simplest_dyadic_between(&rat(3, 4), &int(1)), rat(7, 8));
        assert_eq!(simplest_dyadic_between(&rat(1, 3), &rat(2, 3)), rat(1, 2));
        assert_eq!(simplest_dyadic_between(&int(0), &rat(1, 5)), rat(1, 8));
    }
}
