//! Brute-force comparison of the `F_n^+` minimum with the minimum over
//! every lattice point.

use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::minimize::{minimize_over, MinimizationResult};
use crate::candidates::enumerate_f_plus;
use crate::error::{Error, Result};
use crate::fib::fib_u64;
use crate::highprec::{BoundedReal, Dyadic, PowerTable, TSchedule};
use crate::highprec::PrecisionContext;
use crate::lattice::visit_lattice;

/// Default largest `n` for the oracle.
pub const ORACLE_MAX_N: usize = 20;

/// Lattice minimum against the `F_n^+` minimum at one `t`.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub i: Option<usize>,
    pub t: BigRational,
    /// Enclosure of the minimum over the lattice.
    pub lattice_min: BoundedReal,
    pub lattice_argmin: Vec<u64>,
    /// Whether every other lattice point is certified strictly above.
    pub lattice_unique: bool,
    pub lattice_count: u64,
    pub fplus: MinimizationResult,
    /// The two minima are equal within their certified radii.
    pub equal: bool,
    /// For an integral `F_n^+` minimizer, whether the lattice minimizer is
    /// the same point; `None` when the minimizer is fractional.
    pub unique_match: Option<bool>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.equal && self.unique_match != Some(false)
    }
}

/// Fixed-point lower and upper bounds of `W_i^t`, scaled by `2^shift`.
struct FixedPowers {
    shift: i64,
    lo: Vec<u128>,
    hi: Vec<u128>,
}

impl FixedPowers {
    fn new(table: &PowerTable, n: usize) -> Self {
        let top = table
            .powers()
            .iter()
            .map(|p| p.upper().mag_exp().max(0))
            .max()
            .unwrap_or(0);
        let fbits = 64 - fib_u64(n).unwrap_or(u64::MAX).leading_zeros() as i64;
        let nbits = 64 - (n as u64).leading_zeros() as i64;
        let shift = (124 - top - fbits - nbits).max(0);
        let conv = |d: Dyadic, up: bool| -> u128 {
            let s = d.mul_2exp(shift);
            let v: BigInt = if up { s.ceil_int() } else { s.floor_int() };
            v.to_u128().unwrap_or(0)
        };
        FixedPowers {
            shift,
            lo: table.powers().iter().map(|p| conv(p.lower(), false)).collect(),
            hi: table.powers().iter().map(|p| conv(p.upper(), true)).collect(),
        }
    }

    fn eval(&self, x: &[u64]) -> Option<(u128, u128)> {
        let mut lo = 0u128;
        let mut hi = 0u128;
        for (j, &v) in x.iter().enumerate() {
            if v == 0 {
                continue;
            }
            lo = lo.checked_add(self.lo[j].checked_mul(v as u128)?)?;
            hi = hi.checked_add(self.hi[j].checked_mul(v as u128)?)?;
        }
        Some((lo, hi))
    }

    fn to_ball(&self, lo: u128, hi: u128) -> BoundedReal {
        let lo = Dyadic::new(BigInt::from(lo), -self.shift);
        let hi = Dyadic::new(BigInt::from(hi), -self.shift);
        let mid = lo.add(&hi).mul_2exp(-1);
        let rad = hi.sub(&mid);
        BoundedReal::new(mid, rad)
    }
}

/// Running minimum over lattice points for one `t`.
struct Tracker {
    fixed: FixedPowers,
    best: Option<(u128, u128, Vec<u64>)>,
    // smallest lower bound among points other than the current best
    second_lo: Option<u128>,
    min_hi: u128,
}

impl Tracker {
    fn new(table: &PowerTable, n: usize) -> Self {
        Tracker {
            fixed: FixedPowers::new(table, n),
            best: None,
            second_lo: None,
            min_hi: u128::MAX,
        }
    }

    fn push(&mut self, x: &[u64]) {
        // x_i <= f_n, so the shift chosen in FixedPowers::new keeps every
        // sum below 2^124
        let (lo, hi) = self.fixed.eval(x).expect("fixed-point range");
        self.min_hi = self.min_hi.min(hi);
        match &mut self.best {
            Some((blo, bhi, bx)) if lo < *blo => {
                self.second_lo = Some(self.second_lo.map_or(*blo, |s| s.min(*blo)));
                *blo = lo;
                *bhi = hi;
                bx.clear();
                bx.extend_from_slice(x);
            }
            Some(_) => self.second_lo = Some(self.second_lo.map_or(lo, |s| s.min(lo))),
            None => self.best = Some((lo, hi, x.to_vec())),
        }
    }

    /// `(minimum enclosure, argmin, unique)`.
    fn finish(self) -> Option<(BoundedReal, Vec<u64>, bool)> {
        let (lo, hi, x) = self.best?;
        let unique = self.second_lo.is_none_or(|s| s > hi);
        Some((self.fixed.to_ball(lo, self.min_hi.min(hi)), x, unique))
    }
}

fn check_range(n: usize, max_n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    if n > max_n {
        return Err(Error::LatticeGuard { n, max: max_n });
    }
    Ok(())
}

/// Runs the oracle at several values of `t` with a single lattice pass.
/// `max_n` bounds the dimension (see [`ORACLE_MAX_N`]).
pub fn oracle_crosscheck_many(
    n: usize,
    ts: &[(Option<usize>, BigRational)],
    ctx: &PrecisionContext,
    max_n: usize,
) -> Result<Vec<OracleReport>> {
    check_range(n, max_n)?;
    let cands = enumerate_f_plus(n)?;
    let mut fmins = Vec::with_capacity(ts.len());
    let mut trackers = Vec::with_capacity(ts.len());
    for (i, t) in ts {
        let mut r = minimize_over(&cands, t, ctx)?;
        r.i = *i;
        let tb = BoundedReal::from_rational(t, r.bits_used);
        trackers.push(Tracker::new(&PowerTable::golden(n, &tb, r.bits_used), n));
        fmins.push(r);
    }
    let mut count = 0u64;
    visit_lattice(n, max_n > crate::lattice::LATTICE_MAX_N, |x| {
        count += 1;
        for tr in trackers.iter_mut() {
            tr.push(x);
        }
        ControlFlow::Continue(())
    })?;
    let mut out = Vec::with_capacity(ts.len());
    for ((tr, fplus), (i, t)) in trackers.into_iter().zip(fmins).zip(ts) {
        let (lattice_min, lattice_argmin, lattice_unique) =
            tr.finish().expect("the lattice always contains (0, ..., 0, 1)");
        let equal = lattice_min.overlaps(&fplus.min_value);
        let unique_match = fplus.argmin.to_u64().map(|z| {
            if fplus.is_unique() {
                lattice_unique && z == lattice_argmin
            } else {
                z == lattice_argmin
            }
        });
        out.push(OracleReport {
            i: *i,
            t: t.clone(),
            lattice_min,
            lattice_argmin,
            lattice_unique,
            lattice_count: count,
            fplus,
            equal,
            unique_match,
        });
    }
    Ok(out)
}

/// The oracle at one `t`.
pub fn oracle_crosscheck(n: usize, t: &BigRational, ctx: &PrecisionContext) -> Result<OracleReport> {
    let mut v = oracle_crosscheck_many(n, &[(None, t.clone())], ctx, ORACLE_MAX_N)?;
    Ok(v.pop().expect("one report per t"))
}

/// The oracle at every `t_i` of a schedule.
pub fn oracle_crosscheck_schedule(
    schedule: &TSchedule,
    ctx: &PrecisionContext,
    max_n: usize,
) -> Result<Vec<OracleReport>> {
    let ts: Vec<_> = (1..schedule.n()).map(|i| (Some(i), schedule.t(i))).collect();
    oracle_crosscheck_many(schedule.n(), &ts, ctx, max_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highprec::{t_schedule, ScheduleMode};

    #[test]
    fn n3_at_1_8() {
        let ctx = PrecisionContext::default();
        let r = oracle_crosscheck(3, &BigRational::new(9.into(), 5.into()), &ctx).unwrap();
        assert!(r.equal);
        assert_eq!(r.unique_match, Some(true));
        assert_eq!(r.lattice_argmin, [1, 1, 0]);
        assert_eq!(r.lattice_count, 2);
    }

    #[test]
    fn n4_auto_schedule() {
        let ctx = PrecisionContext::default();
        let sch = t_schedule(4, ScheduleMode::Auto, &ctx).unwrap();
        let reps = oracle_crosscheck_schedule(&sch, &ctx, ORACLE_MAX_N).unwrap();
        assert_eq!(reps.len(), 3);
        assert!(reps.iter().all(|r| r.passed() && r.lattice_count == 3));
    }

    #[test]
    fn fixed_point_matches_balls() {
        let t = BoundedReal::from_rational(&BigRational::new(17.into(), 10.into()), 96);
        let table = PowerTable::golden(9, &t, 96);
        let f = FixedPowers::new(&table, 9);
        let x = [3u64, 0, 5, 0, 0, 1, 0, 2, 0];
        let (lo, hi) = f.eval(&x).unwrap();
        assert!(f.to_ball(lo, hi).overlaps(&table.eval_u64(&x)));
        assert!(((hi - lo) as f64) * 2f64.powi(-(f.shift as i32)) < 1e-20);
    }

    #[test]
    fn range_is_guarded() {
        let ctx = PrecisionContext::default();
        let t = BigRational::new(3.into(), 2.into());
        assert!(oracle_crosscheck(21, &t, &ctx).is_err());
        assert!(oracle_crosscheck(2, &t, &ctx).is_err());
    }
}
