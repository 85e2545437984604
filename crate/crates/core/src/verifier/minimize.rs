use alloc::vec::Vec;

use num_rational::BigRational;

use crate::candidates::{enumerate_f_plus, CandidateVector};
use crate::error::Result;
use crate::highprec::{BoundedReal, PowerTable, PrecisionContext};

/// Outcome of a certified comparison of a finite list of values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// The best value is strictly below every other, with disjoint intervals.
    Unique,
    /// Some other value could not be separated from the best at `max_bits`.
    Ambiguous,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Unique => "unique",
            Status::Ambiguous => "ambiguous",
        }
    }
}

/// Raw argmin over indexed values.
#[derive(Clone, Debug)]
pub struct Argmin {
    pub best: usize,
    pub runner_up: Option<usize>,
    /// Indices whose intervals still meet the best one.
    pub overlapping: Vec<usize>,
    pub values: Vec<BoundedReal>,
    pub bits: u32,
}

impl Argmin {
    pub fn status(&self) -> Status {
        if self.overlapping.is_empty() {
            Status::Unique
        } else {
            Status::Ambiguous
        }
    }

    /// `value(runner_up) - value(best)`.
    pub fn gap(&self) -> Option<BoundedReal> {
        let r = self.runner_up?;
        Some(self.values[r].sub(&self.values[self.best], self.bits))
    }
}

/// Smallest midpoint wins; ties go to the earlier index.
pub(crate) fn pick(values: Vec<BoundedReal>, bits: u32) -> Argmin {
    assert!(!values.is_empty(), "nothing to minimize");
    let mut best = 0;
    for (j, v) in values.iter().enumerate().skip(1) {
        if v.mid() < values[best].mid() {
            best = j;
        }
    }
    let mut runner_up: Option<usize> = None;
    let mut overlapping = Vec::new();
    for (j, v) in values.iter().enumerate() {
        if j == best {
            continue;
        }
        if runner_up.is_none_or(|r| v.mid() < values[r].mid()) {
            runner_up = Some(j);
        }
        if !v.certainly_gt(&values[best]) {
            overlapping.push(j);
        }
    }
    Argmin {
        best,
        runner_up,
        overlapping,
        values,
        bits,
    }
}

/// Evaluates at increasing precision until the argmin separates or the
/// ceiling is reached.
pub(crate) fn certified_argmin<F>(ctx: &PrecisionContext, mut eval: F) -> Result<Argmin>
where
    F: FnMut(u32) -> Result<Vec<BoundedReal>>,
{
    let mut last = None;
    for c in ctx.ladder() {
        let a = pick(eval(c.bits())?, c.bits());
        if a.status() == Status::Unique {
            return Ok(a);
        }
        last = Some(a);
    }
    Ok(last.expect("the ladder is never empty"))
}

/// The certified minimizer of `G_x(t)` over `F_n^+` at one `t`.
#[derive(Clone, Debug)]
pub struct MinimizationResult {
    /// Schedule index, when the minimization belongs to a schedule.
    pub i: Option<usize>,
    pub t: BigRational,
    pub argmin: CandidateVector,
    pub min_value: BoundedReal,
    pub runner_up: Option<CandidateVector>,
    /// Runner-up value minus the minimum; its lower end is positive
    /// whenever the status is unique.
    pub gap: Option<BoundedReal>,
    pub status: Status,
    pub bits_used: u32,
    /// Candidates that could not be separated from the reported argmin.
    pub ambiguous_with: Vec<CandidateVector>,
}

impl MinimizationResult {
    pub fn is_unique(&self) -> bool {
        self.status == Status::Unique
    }
}

/// Values of `G_x(t)` for every candidate at the given precision.
pub fn g_values(candidates: &[CandidateVector], n: usize, t: &BigRational, bits: u32) -> Vec<BoundedReal> {
    let tb = BoundedReal::from_rational(t, bits);
    let table = PowerTable::golden(n, &tb, bits);
    candidates.iter().map(|x| table.eval(x.entries())).collect()
}

/// Certified argmin over an explicit candidate list.
pub fn minimize_over(
    candidates: &[CandidateVector],
    t: &BigRational,
    ctx: &PrecisionContext,
) -> Result<MinimizationResult> {
    let n = candidates.first().expect("non-empty candidate list").n();
    let a = certified_argmin(ctx, |bits| Ok(g_values(candidates, n, t, bits)))?;
    Ok(MinimizationResult {
        i: None,
        t: t.clone(),
        argmin: candidates[a.best].clone(),
        min_value: a.values[a.best].clone(),
        runner_up: a.runner_up.map(|r| candidates[r].clone()),
        gap: a.gap(),
        status: a.status(),
        bits_used: a.bits,
        ambiguous_with: a.overlapping.iter().map(|&j| candidates[j].clone()).collect(),
    })
}

/// Minimizes `G_x(t)` over `F_n^+`, escalating precision on overlap.
pub fn minimize_over_fplus(n: usize, t: &BigRational, ctx: &PrecisionContext) -> Result<MinimizationResult> {
    let cands = enumerate_f_plus(n)?;
    minimize_over(&cands, t, ctx)
}
