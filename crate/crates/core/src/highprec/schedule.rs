//! Parameter schedules `t_1 > s_1 > t_2 > s_2 > ... > t_(n-1) > s_(n-1)`.

use alloc::format;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use super::ball::BoundedReal;
use super::decimal::{floor_log10, Decimal};
use super::stable::solve_s;
use super::PrecisionContext;
use crate::error::{Error, Result};

/// Published table of `(s_i - 1, t_i - 1)` for `1 <= i <= 38`.
pub const FIGURE1_ROWS: [(&str, &str); 38] = [
    ("7.146171809e-1", "8e-1"),
    ("1.940660944e-1", "2e-1"),
    ("7.478824327e-2", "8e-2"),
    ("2.743232714e-2", "3e-2"),
    ("1.050775991e-2", "2e-2"),
    ("3.990473545e-3", "4e-3"),
    ("1.524905897e-3", "2e-3"),
    ("5.819727416e-4", "6e-4"),
    ("2.223084584e-4", "3e-4"),
    ("8.490386498e-5", "9e-5"),
    ("3.243070303e-5", "4e-5"),
    ("1.238720471e-5", "2e-5"),
    ("4.731497826e-6", "5e-6"),
    ("1.807266635e-6", "2e-6"),
    ("6.903145697e-7", "7e-7"),
    ("2.636766023e-7", "3e-7"),
    ("1.007155030e-7", "2e-7"),
    ("3.846989684e-8", "4e-8"),
    ("1.469419311e-8", "2e-8"),
    ("5.612682286e-9", "6e-9"),
    ("2.143853866e-9", "3e-9"),
    ("8.188793092e-10", "9e-10"),
    ("3.127840634e-10", "4e-10"),
    ("1.194728810e-10", "2e-10"),
    ("4.563457984e-11", "5e-11"),
    ("1.743085843e-11", "2e-11"),
    ("6.657995469e-12", "7e-12"),
    ("2.543127972e-12", "3e-12"),
    ("9.713884477e-13", "1e-12"),
    ("3.710373707e-13", "4e-13"),
    ("1.417236645e-13", "2e-13"),
    ("5.413362284e-14", "6e-14"),
    ("2.067720399e-14", "3e-14"),
    ("7.897989132e-15", "9e-15"),
    ("3.016763405e-15", "5e-15"),
    ("1.152301085e-15", "2e-15"),
    ("4.401398491e-16", "8e-16"),
    ("1.681184625e-16", "2e-16"),
];

/// Largest `n` the tabulated preset supports; `t_(n-1)` beyond the table
/// comes from the automatic rule.
pub const FIGURE1_MAX_N: usize = FIGURE1_ROWS.len() + 2;

/// Tabulated `t_i - 1`, if `i` is covered.
pub fn figure1_t_minus_1(i: usize) -> Option<Decimal> {
    let (_, t) = FIGURE1_ROWS.get(i.checked_sub(1)?)?;
    Some(t.parse().expect("table literals parse"))
}

/// How the `t_i` are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScheduleMode {
    /// The published table, extended by the automatic rule at `n = 40`.
    Figure1,
    /// `t_i - 1` is `s_i - 1` rounded up to one significant digit, or the
    /// midpoint choice when that misses the interval; `t_1 = 1.8`.
    Auto,
    /// A short decimal near the mean of `s_i` and `s_(i-1)`; `t_1 = 1.8`.
    Midpoint,
    /// User-supplied `t_i - 1` values, validated but never altered.
    File(Vec<Decimal>),
}

impl ScheduleMode {
    pub fn name(&self) -> &'static str {
        match self {
            ScheduleMode::Figure1 => "figure1",
            ScheduleMode::Auto => "auto",
            ScheduleMode::Midpoint => "midpoint",
            ScheduleMode::File(_) => "file",
        }
    }
}

/// A validated schedule: exact `t_i` with the `s_i` enclosures that
/// certify the interlacing.
#[derive(Clone, Debug)]
pub struct TSchedule {
    n: usize,
    t_minus_1: Vec<Decimal>,
    s: Vec<BoundedReal>,
    mode: ScheduleMode,
}

impl TSchedule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> &ScheduleMode {
        &self.mode
    }

    /// `t_i - 1` for `i = 1..n-1`.
    pub fn t_minus_1(&self) -> &[Decimal] {
        &self.t_minus_1
    }

    /// `s_1, ..., s_(n-1)`.
    pub fn s(&self) -> &[BoundedReal] {
        &self.s
    }

    /// Exact `t_i`, `1 <= i <= n-1`.
    pub fn t(&self, i: usize) -> BigRational {
        self.t_minus_1[i - 1].to_rational() + BigRational::one()
    }

    /// `t_i` as a ball at the given precision (exact for dyadic `t_i`).
    pub fn t_ball(&self, i: usize, bits: u32) -> BoundedReal {
        BoundedReal::from_rational(&self.t(i), bits)
    }

    pub fn len(&self) -> usize {
        self.t_minus_1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_minus_1.is_empty()
    }
}

fn certainly_below(b: &BoundedReal, q: &BigRational) -> bool {
    b.upper().to_rational() < *q
}

fn certainly_above(b: &BoundedReal, q: &BigRational) -> bool {
    b.lower().to_rational() > *q
}

/// Checks `s_i < t_i < s_(i-1)` (and `t_1 > s_1`) for one index.
fn inside(i: usize, t_minus_1: &BigRational, s: &[BoundedReal]) -> bool {
    let t = t_minus_1 + BigRational::one();
    certainly_below(&s[i - 1], &t) && (i == 1 || certainly_above(&s[i - 2], &t))
}

fn s_minus_1(b: &BoundedReal) -> BigRational {
    b.mid().to_rational() - BigRational::one()
}

/// `s_i - 1` rounded up to one significant digit, strictly above.
fn round_up_rule(s_i: &BoundedReal) -> Decimal {
    let q = s_minus_1(s_i);
    let e = floor_log10(&q);
    let unit = Decimal::new(1, e).to_rational();
    let k = (&q / &unit).floor().to_integer() + 1;
    Decimal::new(k, e)
}

/// Shortest decimal near the mean of `s_i - 1` and `s_(i-1) - 1` that lies
/// strictly inside the interval.
fn midpoint_rule(i: usize, s: &[BoundedReal]) -> Option<Decimal> {
    let mean = (s_minus_1(&s[i - 1]) + s_minus_1(&s[i - 2])) / BigRational::from_integer(2.into());
    for sig in 1..=60 {
        for up in [false, true] {
            let d = Decimal::round_sig(&mean, sig, up);
            if inside(i, &d.to_rational(), s) {
                return Some(d);
            }
        }
    }
    None
}

fn auto_rule(i: usize, s: &[BoundedReal]) -> Option<Decimal> {
    let d = round_up_rule(&s[i - 1]);
    if inside(i, &d.to_rational(), s) {
        Some(d)
    } else {
        midpoint_rule(i, s)
    }
}

/// Precision used to certify the interlacing. The schedule is input data,
/// so it is always checked at no less than 128 bits even when the
/// minimization runs at lower precision.
fn schedule_context(ctx: &PrecisionContext) -> PrecisionContext {
    let bits = ctx.bits().max(128);
    PrecisionContext::new(bits, ctx.max_bits().max(bits)).expect("bits <= max_bits")
}

fn violation(index: usize, detail: alloc::string::String) -> Error {
    Error::InterlacingViolation { index, detail }
}

/// Builds `t_1, ..., t_(n-1)` and certifies the interlacing against freshly
/// computed `s_i`.
pub fn t_schedule(n: usize, mode: ScheduleMode, ctx: &PrecisionContext) -> Result<TSchedule> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    if mode == ScheduleMode::Figure1 && n > FIGURE1_MAX_N {
        return Err(Error::TableExhausted {
            n,
            max: FIGURE1_MAX_N,
        });
    }
    if let ScheduleMode::File(values) = &mode {
        if values.len() != n - 1 {
            return Err(Error::ScheduleLength {
                expected: n - 1,
                got: values.len(),
            });
        }
    }
    let sctx = schedule_context(ctx);
    let s = (1..n)
        .map(|i| solve_s(i, &sctx))
        .collect::<Result<Vec<_>>>()?;
    let t1_default: Decimal = Decimal::new(8, -1);

    let mut t_minus_1 = Vec::with_capacity(n - 1);
    for i in 1..n {
        let d = match &mode {
            ScheduleMode::Figure1 => match figure1_t_minus_1(i) {
                Some(d) => d,
                None => auto_rule(i, &s).ok_or_else(|| {
                    violation(i, "no decimal certified inside (s_i, s_(i-1))".into())
                })?,
            },
            ScheduleMode::File(values) => values[i - 1].clone(),
            ScheduleMode::Auto | ScheduleMode::Midpoint if i == 1 => t1_default.clone(),
            ScheduleMode::Auto => auto_rule(i, &s).ok_or_else(|| {
                violation(i, "no decimal certified inside (s_i, s_(i-1))".into())
            })?,
            ScheduleMode::Midpoint => midpoint_rule(i, &s).ok_or_else(|| {
                violation(i, "no decimal certified inside (s_i, s_(i-1))".into())
            })?,
        };
        if !inside(i, &d.to_rational(), &s) {
            let detail = if i == 1 {
                format!("t_1 - 1 = {d} is not certified above s_1 - 1")
            } else {
                format!("t_{i} - 1 = {d} is not certified inside (s_{i} - 1, s_{} - 1)", i - 1)
            };
            return Err(violation(i, detail));
        }
        t_minus_1.push(d);
    }
    Ok(TSchedule {
        n,
        t_minus_1,
        s,
        mode,
    })
}
