//! Exact decimal literals and significant-digit formatting.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An exact value `digits * 10^exp10`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    digits: BigInt,
    exp10: i64,
}

fn pow10(e: u64) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

impl Decimal {
    pub fn new(digits: impl Into<BigInt>, exp10: i64) -> Self {
        let mut digits = digits.into();
        let mut exp10 = exp10;
        if digits.is_zero() {
            return Decimal {
                digits,
                exp10: 0,
            };
        }
        let ten = BigInt::from(10u32);
        loop {
            let (q, r) = digits.div_rem(&ten);
            if !r.is_zero() {
                break;
            }
            digits = q;
            exp10 += 1;
        }
        Decimal { digits, exp10 }
    }

    pub fn digits(&self) -> &BigInt {
        &self.digits
    }

    pub fn exp10(&self) -> i64 {
        self.exp10
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_zero()
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp10 >= 0 {
            BigRational::from_integer(&self.digits * pow10(self.exp10 as u64))
        } else {
            BigRational::new(self.digits.clone(), pow10((-self.exp10) as u64))
        }
    }

    /// `self + k` for an integer `k`.
    pub fn add_int(&self, k: i64) -> Decimal {
        if self.exp10 >= 0 {
            Decimal::new(&self.digits * pow10(self.exp10 as u64) + k, 0)
        } else {
            let scale = pow10((-self.exp10) as u64);
            Decimal::new(&self.digits + BigInt::from(k) * scale, self.exp10)
        }
    }

    /// Rounds a rational to `sig` significant digits toward `+inf` or `-inf`.
    pub fn round_sig(q: &BigRational, sig: u32, up: bool) -> Decimal {
        if q.is_zero() {
            return Decimal::new(0, 0);
        }
        let e = floor_log10(&q.abs());
        let shift = sig as i64 - 1 - e;
        let scaled = scale_pow10(q, shift);
        let n = if up { scaled.ceil() } else { scaled.floor() };
        Decimal::new(n.to_integer(), -shift)
    }

    /// Largest `e` with `10^e <= |self|`; `None` for zero.
    pub fn floor_log10(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp10 + self.digits.abs().to_string().len() as i64 - 1)
        }
    }
}

/// `q * 10^k`.
fn scale_pow10(q: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        q * BigRational::from_integer(pow10(k as u64))
    } else {
        q / BigRational::from_integer(pow10((-k) as u64))
    }
}

/// Largest `e` with `10^e <= q` for positive `q`.
pub fn floor_log10(q: &BigRational) -> i64 {
    debug_assert!(q.is_positive());
    let bits = q.numer().bits() as i64 - q.denom().bits() as i64;
    // log10(2) ~ 0.30103; start near the answer, then correct exactly
    let mut e = (bits * 30103).div_euclid(100_000);
    loop {
        let lo = scale_pow10(&BigRational::one(), e);
        if lo > *q {
            e -= 1;
            continue;
        }
        let hi = scale_pow10(&BigRational::one(), e + 1);
        if hi <= *q {
            e += 1;
            continue;
        }
        return e;
    }
}

/// Formats a rational with `sig` significant digits, rounding half away
/// from zero, as `d.ddd...e<exp>`.
pub fn format_sig(q: &BigRational, sig: u32) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let mut e = floor_log10(&a);
    let mut n = scale_pow10(&a, sig as i64 - 1 - e).round().to_integer();
    if n >= pow10(sig as u64) {
        n /= BigInt::from(10u32);
        e += 1;
    }
    let s = n.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

impl fmt::Display for Decimal {
    /// Scientific notation with every stored digit, e.g. `8e-1`, `1.5e-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let s = self.digits.abs().to_string();
        let e = self.exp10 + s.len() as i64 - 1;
        let sign = if self.digits.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            write!(f, "{sign}{head}e{e}")
        } else {
            write!(f, "{sign}{head}.{tail}e{e}")
        }
    }
}

impl FromStr for Decimal {
    type Err = Error;

    /// Accepts `[+-]digits[.digits][(e|E)[+-]digits]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidDecimal(s.to_string());
        let t = s.trim();
        let (neg, rest) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (mantissa, exponent) = match rest.find(['e', 'E']) {
            Some(i) => (&rest[..i], Some(&rest[i + 1..])),
            None => (rest, None),
        };
        let (int, frac) = match mantissa.split_once('.') {
            Some((a, b)) => (a, b),
            None => (mantissa, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let mut exp10: i64 = match exponent {
            None => 0,
            Some(e) => {
                let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
                if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                e.parse().map_err(|_| bad())?
            }
        };
        exp10 -= frac.len() as i64;
        let joined = format!("{int}{frac}");
        let mut digits: BigInt = joined.parse().map_err(|_| bad())?;
        if neg {
            digits = -digits;
        }
        Ok(Decimal::new(digits, exp10))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_literals() {
        let d: Decimal = "8e-1".parse().unwrap();
        assert_eq!(d.to_rational(), q(4, 5));
        let d: Decimal = "-1.25E+2".parse().unwrap();
        assert_eq!(d.to_rational(), q(-125, 1));
        let d: Decimal = ".5".parse().unwrap();
        assert_eq!(d.to_rational(), q(1, 2));
        let d: Decimal = "1.8".parse().unwrap();
        assert_eq!(d, Decimal::new(18, -1));
        let d: Decimal = "2.0000e-16".parse().unwrap();
        assert_eq!(d, Decimal::new(2, -16));
        for bad in ["", "e5", "1e", "1.2.3", "abc", "--1", "1e+-2", "."] {
            assert!(bad.parse::<Decimal>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn display_is_scientific() {
        assert_eq!(Decimal::new(8, -1).to_string(), "8e-1");
        assert_eq!(Decimal::new(15, -3).to_string(), "1.5e-2");
        assert_eq!(Decimal::new(-2, -16).to_string(), "-2e-16");
        assert_eq!(Decimal::new(0, 5).to_string(), "0");
        let back: Decimal = Decimal::new(123456, -20).to_string().parse().unwrap();
        assert_eq!(back, Decimal::new(123456, -20));
    }

    #[test]
    fn add_int_is_exact() {
        let t = Decimal::new(2, -16).add_int(1);
        assert_eq!(t.to_rational(), q(1, 1) + q(2, 10_i64.pow(16)));
        assert_eq!(Decimal::new(5, 2).add_int(-1), Decimal::new(499, 0));
    }

    #[test]
    fn significant_digit_rounding() {
        let x = q(194066094, 1_000_000_000);
        assert_eq!(Decimal::round_sig(&x, 1, true), Decimal::new(2, -1));
        assert_eq!(Decimal::round_sig(&x, 1, false), Decimal::new(1, -1));
        assert_eq!(Decimal::round_sig(&q(95, 100), 1, true), Decimal::new(1, 0));
        assert_eq!(format_sig(&q(1, 3), 12), "3.33333333333e-1");
        assert_eq!(format_sig(&q(-2, 1), 12), "-2e0");
        assert_eq!(format_sig(&q(999_999, 1_000_000), 3), "1e0");
        assert_eq!(floor_log10(&q(1, 1000)), -3);
        assert_eq!(floor_log10(&q(999, 1)), 2);
        assert_eq!(Decimal::new(123, -5).floor_log10(), Some(-3));
    }
}
