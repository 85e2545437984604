//! Exact binary fractions `man * 2^exp`.
//!
//! Every operation here is exact except the explicit rounding helpers.
//! Ball arithmetic builds on these by rounding midpoints and pushing the
//! exact rounding error into the radius.

use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Mantissa width kept for radii.
pub(crate) const MAG_BITS: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        Dyadic { man, exp }.normalized()
    }

    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Dyadic::new(v.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: e,
        }
    }

    fn normalized(mut self) -> Self {
        match self.man.trailing_zeros() {
            None => {
                self.exp = 0;
            }
            Some(0) => {}
            Some(tz) => {
                self.man >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Smallest `e` with `|self| < 2^e`; `i64::MIN` for zero.
    pub fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.bits() as i64
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (lo, hi) = if self.exp <= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let shift = (hi.exp - lo.exp) as usize;
        Dyadic::new(&lo.man + (&hi.man << shift), lo.exp)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    pub fn mul_int(&self, k: &BigInt) -> Dyadic {
        Dyadic::new(&self.man * k, self.exp)
    }

    pub fn mul_2exp(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds to at most `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, mode: Round) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let man = match mode {
            Round::Floor => &self.man >> shift,
            Round::Ceil => -((-&self.man) >> shift),
        };
        Dyadic::new(man, self.exp + shift as i64)
    }

    /// Rounds the magnitude up to a short mantissa; the result is `>= |self|`.
    pub fn mag_up(&self) -> Dyadic {
        self.abs().round(MAG_BITS, Round::Ceil)
    }

    /// Rounds the magnitude down to a short mantissa; the result is `<= |self|`.
    pub fn mag_down(&self) -> Dyadic {
        self.abs().round(MAG_BITS, Round::Floor)
    }

    /// Upper bound of `|self| / |other|` with a short mantissa.
    ///
    /// # Panics
    ///
    /// Panics if `other` is zero.
    pub fn div_up(&self, other: &Dyadic) -> Dyadic {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let num = self.man.abs();
        let den = other.man.abs();
        let shift = (MAG_BITS as i64 + 2 + den.bits() as i64 - num.bits() as i64).max(0);
        let (q, r) = (num << shift as usize).div_rem(&den);
        let q = if r.is_zero() { q } else { q + 1u32 };
        Dyadic::new(q, self.exp - other.exp - shift).round(MAG_BITS, Round::Ceil)
    }

    /// `floor(self / d)` style quotient with about `prec` significant bits.
    ///
    /// Returns the quotient and an exponent `e` such that the exact value
    /// lies in `[q, q + 2^e)`.
    pub(crate) fn div_int_floor(&self, d: &BigInt, prec: u32) -> (Dyadic, i64) {
        debug_assert!(!d.is_zero());
        let (man, d) = if d.is_negative() {
            (-&self.man, -d)
        } else {
            (self.man.clone(), d.clone())
        };
        let shift = (prec as i64 + 2 + d.bits() as i64 - man.bits() as i64).max(0);
        let q = (man << shift as usize).div_floor(&d);
        let e = self.exp - shift;
        (Dyadic::new(q, e), e)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Approximates a rational with about `prec` significant bits; the
    /// exact value lies in `[d, d + 2^e)`.
    pub fn from_rational(q: &BigRational, prec: u32) -> (Dyadic, i64) {
        Dyadic::from_int(q.numer().clone()).div_int_floor(q.denom(), prec)
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            &self.man >> (-self.exp) as usize
        }
    }

    /// Smallest integer `>= self`.
    pub fn ceil_int(&self) -> BigInt {
        -(self.neg().floor_int())
    }

    /// Nearest `f64`; only for diagnostics and display.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (man, exp) = if bits > 60 {
            let shift = bits - 60;
            (&self.man >> shift, self.exp + shift as i64)
        } else {
            (self.man.clone(), self.exp)
        };
        let m = man.to_f64().unwrap_or(0.0);
        scale_f64(m, exp)
    }

    pub fn signum(&self) -> Ordering {
        match self.man.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

fn scale_f64(mut m: f64, mut exp: i64) -> f64 {
    while exp > 0 {
        let step = exp.min(1000);
        m *= f64::from_bits(((1023 + step) as u64) << 52);
        exp -= step;
        if m.is_infinite() {
            return m;
        }
    }
    while exp < 0 {
        let step = (-exp).min(1000);
        m /= f64::from_bits(((1023 + step) as u64) << 52);
        exp += step;
        if m == 0.0 {
            return m;
        }
    }
    m
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.signum(), other.signum());
        if a != b || a == Ordering::Equal {
            return a.cmp(&b);
        }
        self.sub(other).signum()
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let x = d(12, 0);
        assert_eq!(x.mantissa(), &BigInt::from(3));
        assert_eq!(x.exponent(), 2);
        assert_eq!(d(0, 17), Dyadic::zero());
    }

    #[test]
    fn exact_arithmetic() {
        let a = d(3, -2); // 0.75
        let b = d(5, 1); // 10
        assert_eq!(a.add(&b), d(43, -2));
        assert_eq!(a.sub(&b), d(-37, -2));
        assert_eq!(a.mul(&b), d(15, -1));
        assert!(a < b);
        assert!(a.neg() < a);
        assert_eq!(a.to_rational(), BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn directed_rounding_brackets_value() {
        let x = d(-0b1011011, -3);
        let lo = x.round(3, Round::Floor);
        let hi = x.round(3, Round::Ceil);
        assert!(lo <= x && x <= hi);
        assert!(lo.bits() <= 3 && hi.bits() <= 3);
        let y = d(0b1011011, -3);
        assert!(y.round(3, Round::Floor) <= y && y <= y.round(3, Round::Ceil));
    }

    #[test]
    fn div_up_is_an_upper_bound() {
        let a = d(1, 0);
        let b = d(3, 0);
        let q = a.div_up(&b);
        assert!(q.mul(&b) >= a);
        assert!(q.mul(&b).sub(&a) < Dyadic::pow2(-25));
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(d(-7, -1).floor_int(), BigInt::from(-4));
        assert_eq!(d(-7, -1).ceil_int(), BigInt::from(-3));
        assert_eq!(d(7, -1).floor_int(), BigInt::from(3));
        assert_eq!(d(5, 2).ceil_int(), BigInt::from(20));
    }

    #[test]
    fn rational_rounding_error_bound() {
        let q = BigRational::new(1.into(), 10.into());
        let (r, e) = Dyadic::from_rational(&q, 60);
        let diff = (r.to_rational() - &q).abs();
        assert!(diff < Dyadic::pow2(e + 1).to_rational());
        assert!((r.to_f64() - 0.1).abs() < 1e-17);
    }
}
