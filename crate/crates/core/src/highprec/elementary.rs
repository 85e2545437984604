//! Certified `sqrt 5`, golden ratio, `ln` and `exp` on balls.
//!
//! Each function evaluates at the midpoint with extra working bits, adds
//! a rigorous series-tail bound, then widens by a derivative bound over
//! the input radius.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use spin::Mutex;

use super::ball::BoundedReal;
use super::dyadic::Dyadic;
use crate::error::{Error, Result};

/// `floor(sqrt(n) * 2^k) / 2^k` enclosed with radius `2^-k`.
pub fn sqrt_int(n: u64, prec: u32) -> BoundedReal {
    let k = prec as usize + 4;
    let scaled = BigInt::from(n) << (2 * k);
    let root = scaled.sqrt();
    BoundedReal::new(Dyadic::new(root, -(k as i64)), Dyadic::pow2(-(k as i64))).rounded(prec)
}

/// The golden ratio `(1 + sqrt 5) / 2`.
pub fn golden_ratio(prec: u32) -> BoundedReal {
    let wp = prec + 8;
    sqrt_int(5, wp)
        .add(&BoundedReal::one(), wp)
        .mul_2exp(-1)
        .rounded(prec)
}

/// `atanh(z) = sum z^(2j+1)/(2j+1)` for `|z| <= 1/3`.
fn atanh_small(z: &BoundedReal, wp: u32) -> BoundedReal {
    let mag = z.abs_upper();
    if mag.is_zero() {
        return BoundedReal::zero();
    }
    let z2 = z.sqr(wp);
    let target = mag.mag_exp() - wp as i64 - 8;
    let mut sum = BoundedReal::zero();
    let mut pw = z.clone();
    let mut j: u64 = 0;
    loop {
        sum = sum.add(&pw.div_int(&BigInt::from(2 * j + 1), wp), wp);
        pw = pw.mul(&z2, wp);
        j += 1;
        if pw.abs_upper().mag_exp() < target {
            break;
        }
    }
    // remaining terms: sum_{m>=0} |pw| z^(2m) <= |pw| / (1 - 1/9) < 2|pw|
    sum.widened(&pw.abs_upper().mul_2exp(1))
}

static LN2_CACHE: Mutex<Vec<(u32, BoundedReal)>> = Mutex::new(Vec::new());

/// `ln 2 = 2 atanh(1/3)`, cached per precision.
pub fn ln2(prec: u32) -> BoundedReal {
    if let Some((_, v)) = LN2_CACHE.lock().iter().find(|(p, _)| *p == prec) {
        return v.clone();
    }
    let wp = prec + 16;
    let third = BoundedReal::one().div_int(&BigInt::from(3), wp);
    let v = atanh_small(&third, wp).mul_2exp(1).rounded(prec);
    let mut cache = LN2_CACHE.lock();
    if !cache.iter().any(|(p, _)| *p == prec) {
        cache.push((prec, v.clone()));
    }
    v
}

/// Natural logarithm of a certified-positive ball.
pub fn ln(x: &BoundedReal, prec: u32) -> Result<BoundedReal> {
    let low = x.lower();
    if !low.is_positive() {
        return Err(Error::NotPositive("logarithm argument"));
    }
    let wp = prec + 24;
    let mid = x.mid();
    let bits = mid.bits() as i64;
    // mid = m * 2^k with m in [1, 2), then fold into [3/4, 3/2]
    let mut k = mid.exponent() + bits - 1;
    let mut m = Dyadic::new(mid.mantissa().clone(), 1 - bits);
    if m > Dyadic::new(BigInt::from(3), -1) {
        m = m.mul_2exp(-1);
        k += 1;
    }
    let num = BoundedReal::exact(m.sub(&Dyadic::one()));
    let den = BoundedReal::exact(m.add(&Dyadic::one()));
    let z = num.div(&den, wp).expect("m + 1 > 0");
    let mut v = atanh_small(&z, wp).mul_2exp(1);
    if k != 0 {
        v = v.add(&ln2(wp).mul_int(&BigInt::from(k), wp), wp);
    }
    if !x.is_exact() {
        // |ln(mid +- r) - ln(mid)| <= r / (mid - r)
        v = v.widened(&x.rad().div_up(&low.mag_down()));
    }
    Ok(v.rounded(prec))
}

/// Exponential of a ball.
pub fn exp(x: &BoundedReal, prec: u32) -> BoundedReal {
    let mid = x.mid();
    let mut v = if mid.is_zero() {
        BoundedReal::one()
    } else {
        // halve until |r| < 2^-10, sum the series, square back up
        let s = (mid.mag_exp() + 10).max(0);
        let wp = prec + s as u32 + 24;
        let r = BoundedReal::exact(mid.mul_2exp(-s));
        let target = -(wp as i64) - 6;
        let mut sum = BoundedReal::one();
        let mut term = BoundedReal::one();
        let mut k: u64 = 1;
        loop {
            term = term.mul(&r, wp).div_int(&BigInt::from(k), wp);
            sum = sum.add(&term, wp);
            k += 1;
            if term.abs_upper().mag_exp() < target {
                break;
            }
        }
        // tail after term k-1 is at most |term| * |r| / (1 - |r|) < |term|
        sum = sum.widened(&term.abs_upper());
        for _ in 0..s {
            sum = sum.sqr(wp);
        }
        sum
    };
    if !x.is_exact() {
        // exp(mid +- r) within exp(mid) * (e^r - 1) of exp(mid)
        let r = x.rad();
        let factor = if *r <= Dyadic::one() {
            r.mul(&Dyadic::from_int(3))
        } else {
            let bits = r.mul_2exp(1).ceil_int().to_i64().unwrap_or(i64::MAX / 4);
            Dyadic::pow2(bits)
        };
        v = v.widened(&v.abs_upper().mul(&factor));
    }
    v.rounded(prec)
}

/// `exp(t * log_base)`, the power `base^t` from a precomputed logarithm.
pub fn pow_from_ln(log_base: &BoundedReal, t: &BoundedReal, prec: u32) -> BoundedReal {
    let wp = prec + 12;
    exp(&log_base.mul(t, wp), prec)
}

/// `base^t` for a certified-positive base.
pub fn pow(base: &BoundedReal, t: &BoundedReal, prec: u32) -> Result<BoundedReal> {
    let l = ln(base, prec + 12)?;
    Ok(pow_from_ln(&l, t, prec))
}

/// `ln(n)` for a positive integer.
pub fn ln_int(n: &BigInt, prec: u32) -> Result<BoundedReal> {
    ln(&BoundedReal::from_int(n.clone()), prec)
}

/// Natural log of a positive rational.
pub fn ln_rational(q: &num_rational::BigRational, prec: u32) -> Result<BoundedReal> {
    if q.numer() == q.denom() {
        return Ok(BoundedReal::zero());
    }
    let wp = prec + 8;
    let a = ln_int(q.numer(), wp)?;
    let b = if q.denom().is_one() {
        BoundedReal::zero()
    } else {
        ln_int(q.denom(), wp)?
    };
    Ok(a.sub(&b, wp).rounded(prec))
}
