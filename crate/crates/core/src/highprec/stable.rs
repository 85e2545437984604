//! The switch points `s_i`.
//!
//! `s_i` is the unique root of
//! `h(s) = W_(i+2)^s - W_(i+1)^s - W_i^s` on `[1, 2]`, where `W_j` is the
//! weight `max{f_j, phi f_(j-1)}`. It is found by bisection with every sign
//! decision certified by ball arithmetic.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use spin::Mutex;

use super::ball::BoundedReal;
use super::dyadic::Dyadic;
use super::elementary::exp;
use super::objective::{ln_weight, verify_parity_rule};
use super::PrecisionContext;
use crate::error::{Error, Result};

static S_CACHE: Mutex<BTreeMap<(usize, u32, u32), BoundedReal>> = Mutex::new(BTreeMap::new());

struct SEquation {
    logs: [BoundedReal; 3],
}

impl SEquation {
    fn new(i: usize, wp: u32) -> Self {
        SEquation {
            logs: [ln_weight(i, wp), ln_weight(i + 1, wp), ln_weight(i + 2, wp)],
        }
    }

    fn eval(&self, s: &Dyadic, wp: u32) -> BoundedReal {
        let s = BoundedReal::exact(s.clone());
        let p = |l: &BoundedReal| exp(&l.mul(&s, wp), wp);
        p(&self.logs[2])
            .sub(&p(&self.logs[1]), wp)
            .sub(&p(&self.logs[0]), wp)
    }
}

/// Certified sign of `h(s)`, escalating the working precision on overlap.
fn sign_at(
    i: usize,
    eqs: &mut Vec<(u32, SEquation)>,
    s: &Dyadic,
    start: u32,
    ceiling: u32,
) -> Option<Ordering> {
    let mut wp = start;
    loop {
        if !eqs.iter().any(|(p, _)| *p == wp) {
            eqs.push((wp, SEquation::new(i, wp)));
        }
        let eq = &eqs.iter().find(|(p, _)| *p == wp).unwrap().1;
        if let Some(ord) = eq.eval(s, wp).certified_sign() {
            return Some(ord);
        }
        if wp >= ceiling {
            return None;
        }
        wp = (wp * 2).min(ceiling);
    }
}

/// Returns an enclosure of `s_i` whose radius is at most `2^-(bits+1)`
/// whenever the sign of `h` can be certified that close to the root within
/// `max_bits` (plus guard bits).
pub fn solve_s(i: usize, ctx: &PrecisionContext) -> Result<BoundedReal> {
    assert!(i >= 1, "s_i is indexed from 1");
    let key = (i, ctx.bits(), ctx.max_bits());
    if let Some(v) = S_CACHE.lock().get(&key) {
        return Ok(v.clone());
    }
    verify_parity_rule(i + 2)?;
    let guard = 16;
    let start = ctx.bits() + guard;
    let ceiling = ctx.max_bits() + guard;
    let mut eqs = Vec::new();

    let mut lo = Dyadic::one();
    let mut hi = Dyadic::from_int(2);
    if sign_at(i, &mut eqs, &lo, start, ceiling) != Some(Ordering::Less)
        || sign_at(i, &mut eqs, &hi, start, ceiling) != Some(Ordering::Greater)
    {
        return Err(Error::BracketFailure {
            i,
            bits: ctx.max_bits(),
        });
    }
    let width_target = Dyadic::pow2(-(ctx.bits() as i64));
    while hi.sub(&lo) > width_target {
        let mid = lo.add(&hi).mul_2exp(-1);
        match sign_at(i, &mut eqs, &mid, start, ceiling) {
            Some(Ordering::Less) => lo = mid,
            Some(Ordering::Greater) => hi = mid,
            Some(Ordering::Equal) => {
                lo = mid.clone();
                hi = mid;
            }
            // the bracket is still a valid enclosure; stop refining
            None => break,
        }
    }
    let center = lo.add(&hi).mul_2exp(-1);
    let rad = hi.sub(&center);
    let v = BoundedReal::new(center, rad);
    S_CACHE.lock().insert(key, v.clone());
    Ok(v)
}

/// `s_1, ..., s_max_i`.
pub fn solve_s_range(max_i: usize, ctx: &PrecisionContext) -> Result<Vec<BoundedReal>> {
    (1..=max_i).map(|i| solve_s(i, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highprec::elementary::golden_ratio;
    use crate::highprec::objective::weight;
    use crate::highprec::pow;

    #[test]
    fn s1_satisfies_its_defining_equation() {
        let ctx = PrecisionContext::default();
        let s1 = solve_s(1, &ctx).unwrap();
        assert!(s1.rad().mag_exp() <= -(ctx.bits() as i64));
        let bits = 200;
        // weight(3) = 2, weight(2) = phi, weight(1) = 1
        let two = weight(3, &ctx);
        assert_eq!(two, BoundedReal::from_int(2));
        let residual = pow(&two, &s1, bits)
            .unwrap()
            .sub(&pow(&golden_ratio(bits), &s1, bits).unwrap(), bits)
            .sub(&BoundedReal::one(), bits);
        assert!(residual.contains(&Dyadic::zero()));
        assert!(residual.abs_upper().to_f64() < 1e-26);
    }

    #[test]
    fn first_values_are_decreasing_and_above_one() {
        let ctx = PrecisionContext::default();
        let s = solve_s_range(6, &ctx).unwrap();
        for w in s.windows(2) {
            assert!(w[1].certainly_lt(&w[0]));
        }
        assert!(s.iter().all(|v| v.certainly_gt(&BoundedReal::one())));
    }
}
