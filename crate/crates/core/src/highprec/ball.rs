//! Midpoint-radius real arithmetic.
//!
//! A [`BoundedReal`] is a dyadic midpoint plus a short dyadic radius. Each
//! operation takes the working precision explicitly, rounds the midpoint,
//! and adds the exact rounding error (rounded up) to the radius, so the
//! result ball always contains the image of the operand balls.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::dyadic::{Dyadic, Round};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BoundedReal {
    mid: Dyadic,
    rad: Dyadic,
}

/// Rounds `x` to `prec` bits and returns it with a bound on the error.
fn round_with_err(x: Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    let r = x.round(prec, Round::Floor);
    let err = x.sub(&r);
    (r, err.mag_up())
}

impl BoundedReal {
    pub fn new(mid: Dyadic, rad: Dyadic) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        BoundedReal {
            mid,
            rad: rad.mag_up(),
        }
    }

    pub fn exact(mid: Dyadic) -> Self {
        BoundedReal {
            mid,
            rad: Dyadic::zero(),
        }
    }

    pub fn zero() -> Self {
        BoundedReal::default()
    }

    pub fn one() -> Self {
        BoundedReal::exact(Dyadic::one())
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        BoundedReal::exact(Dyadic::from_int(v))
    }

    /// Encloses an exact rational at `prec` bits (exact when dyadic).
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let den = q.denom();
        if den.is_zero() {
            panic!("zero denominator");
        }
        if (den & (den - 1u32)).is_zero() {
            // power of two: representable exactly
            let shift = den.bits() as i64 - 1;
            return BoundedReal::exact(Dyadic::new(q.numer().clone(), -shift));
        }
        let (d, e) = Dyadic::from_rational(q, prec + 2);
        BoundedReal::new(d, Dyadic::pow2(e)).rounded(prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    /// Upper bound on `|x|` for every `x` in the ball.
    pub fn abs_upper(&self) -> Dyadic {
        self.mid.abs().add(&self.rad)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Rounds the midpoint to `prec` bits, widening the radius accordingly.
    pub fn rounded(&self, prec: u32) -> Self {
        let (mid, err) = round_with_err(self.mid.clone(), prec);
        BoundedReal {
            mid,
            rad: self.rad.add(&err).mag_up(),
        }
    }

    /// Adds `extra` (a non-negative error bound) to the radius.
    pub fn widened(&self, extra: &Dyadic) -> Self {
        BoundedReal {
            mid: self.mid.clone(),
            rad: self.rad.add(&extra.mag_up()).mag_up(),
        }
    }

    pub fn neg(&self) -> Self {
        BoundedReal {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        let (mid, err) = round_with_err(self.mid.add(&other.mid), prec);
        BoundedReal {
            mid,
            rad: self.rad.add(&other.rad).add(&err).mag_up(),
        }
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let (mid, err) = round_with_err(self.mid.mul(&other.mid), prec);
        let prop = self
            .mid
            .mag_up()
            .mul(&other.rad)
            .add(&other.mid.mag_up().mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        BoundedReal {
            mid,
            rad: self.rad_sum(&prop, &err),
        }
    }

    fn rad_sum(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        a.mag_up().add(b).mag_up()
    }

    pub fn sqr(&self, prec: u32) -> Self {
        self.mul(self, prec)
    }

    pub fn mul_int(&self, k: &BigInt, prec: u32) -> Self {
        let (mid, err) = round_with_err(self.mid.mul_int(k), prec);
        let prop = self.rad.mul_int(&k.abs());
        BoundedReal {
            mid,
            rad: self.rad_sum(&prop, &err),
        }
    }

    /// Division by a non-zero integer.
    pub fn div_int(&self, d: &BigInt, prec: u32) -> Self {
        assert!(!d.is_zero(), "division by zero");
        let (q, e) = self.mid.div_int_floor(d, prec);
        let (mid, err) = round_with_err(q, prec);
        let prop = self.rad.div_up(&Dyadic::from_int(d.abs()));
        BoundedReal {
            mid,
            rad: prop.add(&Dyadic::pow2(e)).add(&err).mag_up(),
        }
    }

    pub fn mul_rational(&self, q: &BigRational, prec: u32) -> Self {
        if q.is_integer() {
            return self.mul_int(q.numer(), prec);
        }
        self.mul_int(q.numer(), prec + 8).div_int(q.denom(), prec)
    }

    pub fn mul_2exp(&self, k: i64) -> Self {
        BoundedReal {
            mid: self.mid.mul_2exp(k),
            rad: self.rad.mul_2exp(k),
        }
    }

    /// Ball quotient; `None` when the divisor ball contains zero.
    pub fn div(&self, other: &Self, prec: u32) -> Option<Self> {
        let den_low = other.mid.abs().sub(&other.rad);
        if !den_low.is_positive() {
            return None;
        }
        let b = &other.mid;
        // midpoint quotient a/b to prec bits, truncation error below 2^e
        let (q, e) = self.mid.div_int_floor(b.mantissa(), prec + 2);
        let q = q.mul_2exp(-b.exponent());
        let e = e - b.exponent();
        let (mid, err) = round_with_err(q, prec);
        // |a/b - a'/b'| <= (|a| s + |b| r) / (|b| (|b| - s))
        let prop = if self.rad.is_zero() && other.rad.is_zero() {
            Dyadic::zero()
        } else {
            let top = self
                .mid
                .mag_up()
                .mul(&other.rad)
                .add(&b.mag_up().mul(&self.rad));
            let bottom = b.mag_down().mul(&den_low.mag_down());
            top.div_up(&bottom)
        };
        Some(BoundedReal {
            mid,
            rad: prop.add(&Dyadic::pow2(e)).add(&err).mag_up(),
        })
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lower().to_rational() <= *q && *q <= self.upper().to_rational()
    }

    /// True when `other` lies entirely inside `self`.
    pub fn contains_ball(&self, other: &Self) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        !(self.upper() < other.lower() || other.upper() < self.lower())
    }

    /// Every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.upper() < other.lower()
    }

    pub fn certainly_gt(&self, other: &Self) -> bool {
        other.certainly_lt(self)
    }

    /// `Some(Less | Greater)` when the balls are disjoint, `None` otherwise.
    pub fn certified_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.certainly_lt(other) {
            Some(Ordering::Less)
        } else if other.certainly_lt(self) {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    /// Sign of every point of the ball, if they all agree.
    pub fn certified_sign(&self) -> Option<Ordering> {
        if self.is_positive() {
            Some(Ordering::Greater)
        } else if self.is_negative() {
            Some(Ordering::Less)
        } else if self.mid.is_zero() && self.rad.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Smallest ball containing both operands.
    pub fn hull(&self, other: &Self) -> Self {
        let lo = core::cmp::min(self.lower(), other.lower());
        let hi = core::cmp::max(self.upper(), other.upper());
        let mid = lo.add(&hi).mul_2exp(-1);
        let rad = hi.sub(&mid);
        BoundedReal::new(mid, rad)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }
}

impl fmt::Display for BoundedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} +/- {:.3e}", self.to_f64(), self.rad_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_enclosure() {
        for (n, d) in [(1, 3), (-2, 7), (22, 7), (1, 1024), (5, 1)] {
            let b = BoundedReal::from_rational(&q(n, d), 64);
            assert!(b.contains_rational(&q(n, d)), "{n}/{d}");
            assert!(b.rad_f64() < 1e-18);
        }
        assert!(BoundedReal::from_rational(&q(3, 8), 10).is_exact());
    }

    #[test]
    fn field_ops_enclose_exact_results() {
        let a = q(1, 3);
        let b = q(-5, 7);
        let ba = BoundedReal::from_rational(&a, 40);
        let bb = BoundedReal::from_rational(&b, 40);
        assert!(ba.add(&bb, 40).contains_rational(&(&a + &b)));
        assert!(ba.sub(&bb, 40).contains_rational(&(&a - &b)));
        assert!(ba.mul(&bb, 40).contains_rational(&(&a * &b)));
        assert!(ba.div(&bb, 40).unwrap().contains_rational(&(&a / &b)));
        assert!(ba.div_int(&BigInt::from(-9), 40).contains_rational(&(&a / q(-9, 1))));
        assert!(ba
            .mul_rational(&q(13, 2), 40)
            .contains_rational(&(&a * q(13, 2))));
    }

    #[test]
    fn division_by_ball_containing_zero_fails() {
        let z = BoundedReal::new(Dyadic::pow2(-10), Dyadic::pow2(-9));
        assert!(BoundedReal::one().div(&z, 64).is_none());
    }

    #[test]
    fn comparisons_are_certified() {
        let a = BoundedReal::new(Dyadic::from_int(1), Dyadic::pow2(-4));
        let b = BoundedReal::new(Dyadic::from_int(2), Dyadic::pow2(-4));
        let c = BoundedReal::new(Dyadic::new(17.into(), -4), Dyadic::pow2(-4));
        assert_eq!(a.certified_cmp(&b), Some(Ordering::Less));
        assert_eq!(a.certified_cmp(&c), None);
        assert!(a.overlaps(&c));
        let h = a.hull(&b);
        assert!(h.contains_ball(&a) && h.contains_ball(&b));
    }
}
