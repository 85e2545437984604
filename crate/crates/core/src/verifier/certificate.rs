use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::minimize::{minimize_over, MinimizationResult};
use crate::candidates::{enumerate_f_plus, y_vector};
use crate::error::Result;
use crate::highprec::{PrecisionContext, TSchedule};

/// The verdicts of one verification run.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: usize,
    pub schedule: TSchedule,
    pub bits: u32,
    pub max_bits: u32,
    /// One entry per `t_i`, `i = 1..n-1`.
    pub results: Vec<MinimizationResult>,
    /// Every minimizer is certified unique.
    pub verdict_a: bool,
    /// Every reported minimizer has integer entries.
    pub verdict_b: bool,
    /// Consecutive reported minimizers differ.
    pub verdict_c: bool,
    /// Every minimizer is `y_n(i, i+1)`; informational only.
    pub expected_pattern_matched: bool,
    pub ambiguous_indices: Vec<usize>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.verdict_a && self.verdict_b && self.verdict_c
    }

    /// `n - 2` when all three verdicts hold.
    pub fn exceptional_points_at_least(&self) -> Option<usize> {
        self.holds().then_some(self.n - 2)
    }

    pub fn conclusion(&self) -> Option<String> {
        let m = self.exceptional_points_at_least()?;
        let plural = if m == 1 { "" } else { "s" };
        Some(format!(
            "≥ {m} exceptional point{plural} for infinitely many p^f_{}/q^f_{} with p, q prime",
            self.n,
            self.n - 1
        ))
    }

    /// Whether some index stayed ambiguous at the precision ceiling.
    pub fn any_ambiguous(&self) -> bool {
        !self.ambiguous_indices.is_empty()
    }
}

/// Minimizes over `F_n^+` at every scheduled `t_i` and evaluates the three
/// hypotheses. Verdicts B and C are read off the reported minimizers even
/// when some index is ambiguous; in that case A is false and no conclusion
/// is drawn.
pub fn verify_main(schedule: &TSchedule, ctx: &PrecisionContext) -> Result<Certificate> {
    let n = schedule.n();
    let cands = enumerate_f_plus(n)?;
    let mut results = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut r = minimize_over(&cands, &schedule.t(i), ctx)?;
        r.i = Some(i);
        results.push(r);
    }
    let ambiguous_indices: Vec<usize> = results
        .iter()
        .filter(|r| !r.is_unique())
        .filter_map(|r| r.i)
        .collect();
    let verdict_a = ambiguous_indices.is_empty();
    let verdict_b = results.iter().all(|r| r.argmin.is_integral());
    let verdict_c = results
        .windows(2)
        .all(|w| !w[0].argmin.same_vector(&w[1].argmin));
    let expected_pattern_matched = results.iter().enumerate().all(|(j, r)| {
        let i = j + 1;
        y_vector(n, i, i + 1).is_ok_and(|y| r.argmin.same_vector(&y))
    });
    Ok(Certificate {
        n,
        schedule: schedule.clone(),
        bits: ctx.bits(),
        max_bits: ctx.max_bits(),
        results,
        verdict_a,
        verdict_b,
        verdict_c,
        expected_pattern_matched,
        ambiguous_indices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::highprec::{t_schedule, ScheduleMode};

    #[test]
    fn n3_auto_passes() {
        let ctx = PrecisionContext::default();
        let sch = t_schedule(3, ScheduleMode::Auto, &ctx).unwrap();
        let c = verify_main(&sch, &ctx).unwrap();
        assert!(c.holds());
        assert!(c.expected_pattern_matched);
        assert_eq!(c.exceptional_points_at_least(), Some(1));
        assert!(c.conclusion().unwrap().starts_with("≥ 1 exceptional point for"));
        assert_eq!((c.results[0].argmin.k(), c.results[0].argmin.l()), (1, 2));
        assert!(c.results[1].argmin.is_unit_last());
    }

    #[test]
    fn moderate_n_figure1() {
        let ctx = PrecisionContext::default();
        let sch = t_schedule(15, ScheduleMode::Figure1, &ctx).unwrap();
        let c = verify_main(&sch, &ctx).unwrap();
        assert!(c.holds());
        assert!(c.expected_pattern_matched);
        assert_eq!(c.exceptional_points_at_least(), Some(13));
    }
}
