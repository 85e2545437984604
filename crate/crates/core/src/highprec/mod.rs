//! Error-bounded real arithmetic and the analytic quantities built on it:
//! Fibonacci weights, the objectives `G` and `H`, the switch points `s_i`
//! and the `t` schedules that interlace them.

mod ball;
mod decimal;
mod dyadic;
mod elementary;
mod objective;
mod schedule;
mod stable;

pub use ball::BoundedReal;
pub use decimal::{floor_log10, format_sig, Decimal};
pub use dyadic::{Dyadic, Round};
pub use elementary::{exp, golden_ratio, ln, ln2, ln_int, ln_rational, pow, pow_from_ln, sqrt_int};
pub use objective::{
    g_eval, h_eval, h_weight, verify_parity_rule, weight, PowerTable, Psi,
};
pub use schedule::{
    figure1_t_minus_1, t_schedule, ScheduleMode, TSchedule, FIGURE1_MAX_N, FIGURE1_ROWS,
};
pub use stable::{solve_s, solve_s_range};

use crate::error::{Error, Result};

/// Working precision and escalation ceiling, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    bits: u32,
    max_bits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            bits: 96,
            max_bits: 1024,
        }
    }
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 53;

    pub fn new(bits: u32, max_bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS || bits > max_bits {
            return Err(Error::InvalidPrecision { bits, max_bits });
        }
        Ok(PrecisionContext { bits, max_bits })
    }

    /// Fixed precision with no room to escalate.
    pub fn fixed(bits: u32) -> Result<Self> {
        Self::new(bits, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    /// Same ceiling, different starting precision (clamped to the ceiling).
    pub fn with_bits(&self, bits: u32) -> Self {
        PrecisionContext {
            bits: bits.clamp(Self::MIN_BITS, self.max_bits),
            max_bits: self.max_bits,
        }
    }

    /// Doubles the working precision, or `None` at the ceiling.
    pub fn escalate(&self) -> Option<Self> {
        if self.bits >= self.max_bits {
            None
        } else {
            Some(PrecisionContext {
                bits: (self.bits * 2).min(self.max_bits),
                max_bits: self.max_bits,
            })
        }
    }

    /// The precisions visited by repeated escalation, starting at `bits`.
    pub fn ladder(&self) -> impl Iterator<Item = PrecisionContext> {
        core::iter::successors(Some(*self), |c| c.escalate())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn precision_validation() {
        assert!(PrecisionContext::new(52, 100).is_err());
        assert!(PrecisionContext::new(200, 100).is_err());
        let c = PrecisionContext::default();
        assert_eq!((c.bits(), c.max_bits()), (96, 1024));
    }

    #[test]
    fn escalation_ladder_doubles_to_ceiling() {
        let c = PrecisionContext::new(96, 1024).unwrap();
        let bits: Vec<u32> = c.ladder().map(|c| c.bits()).collect();
        assert_eq!(bits, [96, 192, 384, 768, 1024]);
        assert_eq!(PrecisionContext::fixed(53).unwrap().ladder().count(), 1);
    }
}
