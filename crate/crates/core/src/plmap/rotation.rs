use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, CirclePoint, Rational};
use crate::plmap::PlMap;

/// A rational rotation number `p/q` in `[0, 1)`, lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationNumber {
    value: Rational,
}

impl RotationNumber {
    pub fn new(value: Rational) -> Self {
        RotationNumber { value: crate::exact::frac(&value) }
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn numerator(&self) -> u64 {
        self.value.numer().to_u64().expect("rotation numerator fits")
    }

    pub fn denominator(&self) -> u64 {
        self.value.denom().to_u64().expect("rotation denominator fits")
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `m * self mod 1`.
    pub fn times(&self, m: i64) -> RotationNumber {
        RotationNumber::new(&self.value * Rational::from_integer(BigInt::from(m)))
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.value))
    }
}

impl PlMap {
    /// Exact rotation number by search over periods `q = 1..=q_max`: the
    /// first `q` for which `f^q` has a fixed point is the denominator, and
    /// the lift displacement `F^q(x) - x` at such a point is the numerator.
    pub fn rotation_number(&self, q_max: u32) -> Result<RotationNumber> {
        if q_max == 0 {
            return Err(Error::InvalidArgument("q_max must be at least 1".into()));
        }
        let mut fq = self.clone();
        for q in 1..=q_max {
            if q > 1 {
                fq = self.compose(&fq);
            }
            let fix = fq.fixed_set();
            if let Some(x) = fix.boundary_points().into_iter().next().or_else(|| {
                fix.is_full().then(CirclePoint::zero)
            }) {
                let p = self.lift_displacement(&x, q);
                let rot = p / Rational::from_integer(BigInt::from(q));
                let rot = RotationNumber::new(rot);
                debug_assert_eq!(rot.denominator(), q as u64);
                return Ok(rot);
            }
        }
        Err(Error::NotFoundWithinBound { q_max })
    }

    /// `F^n(x) - x` for the stored lift `F`.
    pub fn lift_displacement(&self, x: &CirclePoint, n: u32) -> Rational {
        let mut t = x.value().clone();
        for _ in 0..n {
            t = self.lift_eval(&t);
        }
        t - x.value()
    }

    /// A periodic orbit of exactly `q` points realizing `rot = p/q`.
    pub fn periodic_orbit_witness(&self, rot: &RotationNumber) -> Result<Vec<CirclePoint>> {
        let q = rot.denominator() as u32;
        let fq = self.power(q as i64);
        let fix = fq.fixed_set();
        let x = fix
            .boundary_points()
            .into_iter()
            .next()
            .or_else(|| fix.is_full().then(CirclePoint::zero))
            .ok_or_else(|| {
                Error::InvalidArgument(format!("rotation number {rot} does not match the map"))
            })?;
        let disp = self.lift_displacement(&x, q);
        let claimed = rot.value() * Rational::from_integer(BigInt::from(q));
        // F^q(x) - x is an integer congruent to p mod q
        let ok = disp.is_integer()
            && (disp.to_integer() - claimed.to_integer()).mod_floor(&BigInt::from(q)).is_zero();
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "rotation number {rot} does not match the map"
            )));
        }
        let mut orbit = Vec::with_capacity(q as usize);
        let mut p = x;
        for _ in 0..q {
            orbit.push(p.clone());
            p = self.evaluate(&p);
        }
        let mut sorted = orbit.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != q as usize {
            return Err(Error::InvalidArgument(format!(
                "rotation number {rot} does not match the map"
            )));
        }
        Ok(orbit)
    }
}
