//! The weights `max{f_i, phi f_(i-1)}` and the objectives built on them.
//!
//! `G_x(t) = sum x_i max{f_i, phi f_(i-1)}^t` and its perturbed twin `H`,
//! where `phi` is replaced by another positive ratio `psi`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use super::ball::BoundedReal;
use super::elementary::{golden_ratio, ln, ln_int, pow_from_ln};
use super::PrecisionContext;
use crate::error::{Error, Result};
use crate::fib::fib_int;

/// Largest index for which the odd/even rule has been certified.
static PARITY_CHECKED: AtomicUsize = AtomicUsize::new(1);

/// Certifies `f_i > phi f_(i-1)` for odd `i` and the reverse for even `i`,
/// for all `2 <= i <= max_i`, escalating precision until every comparison
/// separates.
pub fn verify_parity_rule(max_i: usize) -> Result<()> {
    let done = PARITY_CHECKED.load(AtomicOrdering::Acquire);
    if max_i <= done {
        return Ok(());
    }
    for i in (done + 1)..=max_i {
        let fi = BoundedReal::from_int(fib_int(i));
        let fprev = fib_int(i - 1);
        // |f_i - phi f_(i-1)| = phi^-(i-1), so ~0.7 i bits suffice
        let mut bits = 64 + i as u32;
        let ord = loop {
            let rhs = golden_ratio(bits).mul_int(&fprev, bits);
            if let Some(ord) = fi.certified_cmp(&rhs) {
                break ord;
            }
            if bits > 1 << 16 {
                return Err(Error::AmbiguousMax { j: i, bits });
            }
            bits *= 2;
        };
        let expected = if i % 2 == 1 {
            Ordering::Greater
        } else {
            Ordering::Less
        };
        assert_eq!(ord, expected, "parity rule broken at i={i}");
    }
    PARITY_CHECKED.fetch_max(max_i, AtomicOrdering::AcqRel);
    Ok(())
}

/// `max{f_i, phi f_(i-1)}`: exactly `f_i` for odd `i`, `phi f_(i-1)` for even.
///
/// # Panics
///
/// Panics if `i == 0`.
pub fn weight(i: usize, ctx: &PrecisionContext) -> BoundedReal {
    assert!(i >= 1, "weights are indexed from 1");
    verify_parity_rule(i).expect("parity rule certifies at finite precision");
    if i % 2 == 1 {
        BoundedReal::from_int(fib_int(i))
    } else {
        golden_ratio(ctx.bits() + 4).mul_int(&fib_int(i - 1), ctx.bits())
    }
}

pub(crate) fn ln_weight(i: usize, bits: u32) -> BoundedReal {
    let wp = bits + 8;
    if i % 2 == 1 {
        ln_int(&fib_int(i), wp).expect("f_i >= 1")
    } else {
        let lphi = ln(&golden_ratio(wp + 4), wp).expect("phi > 0");
        let lf = ln_int(&fib_int(i - 1), wp).expect("f_(i-1) >= 1");
        lphi.add(&lf, wp)
    }
}

/// The ratio that replaces `phi` in `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Psi {
    /// `psi = phi`, which makes `H` coincide with `G`.
    Golden,
    /// `psi = log q / log p` for a pair of integers `p, q >= 2`.
    LogRatio { p: BigUint, q: BigUint },
    Rational(BigRational),
    /// A precomputed enclosure; cannot be refined by escalation.
    Fixed(BoundedReal),
}

impl Psi {
    pub fn eval(&self, bits: u32) -> Result<BoundedReal> {
        match self {
            Psi::Golden => Ok(golden_ratio(bits)),
            Psi::LogRatio { p, q } => {
                let wp = bits + 8;
                let lp = ln_int(&BigInt::from(p.clone()), wp)?;
                let lq = ln_int(&BigInt::from(q.clone()), wp)?;
                lq.div(&lp, bits).ok_or(Error::NotPositive("log p"))
            }
            Psi::Rational(r) => Ok(BoundedReal::from_rational(r, bits)),
            Psi::Fixed(b) => Ok(b.clone()),
        }
    }
}

/// `max{f_j, psi f_(j-1)}` with the branch certified by interval comparison,
/// escalating precision on overlap.
pub fn h_weight(j: usize, psi: &Psi, ctx: &PrecisionContext) -> Result<BoundedReal> {
    assert!(j >= 1, "weights are indexed from 1");
    let fj = fib_int(j);
    if j == 1 {
        return Ok(BoundedReal::from_int(fj));
    }
    let fprev = fib_int(j - 1);
    let bits = ctx.bits();
    if let Psi::Rational(r) = psi {
        let rhs = r * BigRational::from_integer(fprev.clone());
        let lhs = BigRational::from_integer(fj.clone());
        return Ok(if lhs >= rhs {
            BoundedReal::from_int(fj)
        } else {
            BoundedReal::from_rational(&rhs, bits)
        });
    }
    let lhs = BoundedReal::from_int(fj.clone());
    for c in ctx.ladder() {
        let rhs = psi.eval(c.bits() + 4)?.mul_int(&fprev, c.bits());
        match lhs.certified_cmp(&rhs) {
            Some(Ordering::Less) => {
                return Ok(if c.bits() == bits {
                    rhs
                } else {
                    psi.eval(bits + 4)?.mul_int(&fprev, bits)
                });
            }
            Some(_) => return Ok(lhs),
            None => {}
        }
    }
    Err(Error::AmbiguousMax {
        j,
        bits: ctx.max_bits(),
    })
}

/// Powers `W_1^t, ..., W_n^t` of a weight sequence at a fixed `t`.
#[derive(Clone, Debug)]
pub struct PowerTable {
    bits: u32,
    powers: Vec<BoundedReal>,
}

impl PowerTable {
    /// Table for `G`: weights `max{f_i, phi f_(i-1)}`, `1 <= i <= n`.
    pub fn golden(n: usize, t: &BoundedReal, bits: u32) -> Self {
        verify_parity_rule(n).expect("parity rule certifies at finite precision");
        let wp = bits + 8;
        let powers = (1..=n)
            .map(|i| pow_from_ln(&ln_weight(i, wp), t, wp).rounded(bits))
            .collect();
        PowerTable { bits, powers }
    }

    /// Table for `H` with the given `psi`.
    pub fn perturbed(n: usize, psi: &Psi, t: &BoundedReal, ctx: &PrecisionContext) -> Result<Self> {
        let bits = ctx.bits();
        let wp = bits + 8;
        let wctx = ctx.with_bits(wp.min(ctx.max_bits()).max(bits));
        let mut powers = Vec::with_capacity(n);
        for j in 1..=n {
            let w = h_weight(j, psi, &wctx)?;
            let l = ln(&w, wp)?;
            powers.push(pow_from_ln(&l, t, wp).rounded(bits));
        }
        Ok(PowerTable { bits, powers })
    }

    /// Wraps explicit powers; `powers[i - 1]` is the `i`-th entry.
    pub fn from_powers(powers: Vec<BoundedReal>, bits: u32) -> Self {
        PowerTable { bits, powers }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    /// `W_i^t` for `1 <= i <= n`.
    pub fn power(&self, i: usize) -> &BoundedReal {
        &self.powers[i - 1]
    }

    pub fn powers(&self) -> &[BoundedReal] {
        &self.powers
    }

    /// `sum x_i W_i^t` in ascending `i`; zero entries contribute nothing.
    pub fn eval(&self, x: &[BigRational]) -> BoundedReal {
        assert_eq!(x.len(), self.powers.len(), "dimension mismatch");
        let wp = self.bits + 4;
        let mut acc = BoundedReal::zero();
        for (xi, p) in x.iter().zip(&self.powers) {
            if xi.is_zero() {
                continue;
            }
            acc = acc.add(&p.mul_rational(xi, wp), wp);
        }
        acc.rounded(self.bits)
    }

    /// Integer-coefficient evaluation used by the lattice oracle.
    pub fn eval_u64(&self, x: &[u64]) -> BoundedReal {
        assert_eq!(x.len(), self.powers.len(), "dimension mismatch");
        let wp = self.bits + 4;
        let mut acc = BoundedReal::zero();
        for (&xi, p) in x.iter().zip(&self.powers) {
            if xi == 0 {
                continue;
            }
            acc = acc.add(&p.mul_int(&BigInt::from(xi), wp), wp);
        }
        acc.rounded(self.bits)
    }
}

/// `G_x(t)` with a sound error radius.
pub fn g_eval(x: &[BigRational], t: &BoundedReal, ctx: &PrecisionContext) -> BoundedReal {
    PowerTable::golden(x.len(), t, ctx.bits()).eval(x)
}

/// `H_x(t)` for the given `psi`.
pub fn h_eval(
    x: &[BigRational],
    psi: &Psi,
    t: &BoundedReal,
    ctx: &PrecisionContext,
) -> Result<BoundedReal> {
    Ok(PowerTable::perturbed(x.len(), psi, t, ctx)?.eval(x))
}
