use alloc::string::String;

/// Errors raised by the exact and certified routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index out of range: need 1 <= k < l <= n, got n={n}, k={k}, l={l}")]
    IndexOutOfRange { n: usize, k: usize, l: usize },

    #[error("dimension n={n} is below the minimum {min}")]
    DimensionTooSmall { n: usize, min: usize },

    #[error("lattice enumeration refused for n={n} (limit {max}); pass force to override")]
    LatticeGuard { n: usize, max: usize },

    #[error("lattice enumeration for n={n} exceeded the cap of {limit} points (found {partial} before stopping)")]
    SizeCapExceeded { n: usize, limit: usize, partial: usize },

    #[error("cannot decide max{{f_{j}, psi*f_{prev}}} at {bits} bits", prev = .j - 1)]
    AmbiguousMax { j: usize, bits: u32 },

    #[error("could not certify the sign change of the s_{i} equation on [1, 2] at {bits} bits")]
    BracketFailure { i: usize, bits: u32 },

    #[error("schedule violates interlacing at index {index}: {detail}")]
    InterlacingViolation { index: usize, detail: String },

    #[error("the tabulated schedule covers n <= {max}, requested n={n}")]
    TableExhausted { n: usize, max: usize },

    #[error("schedule has {got} values, expected {expected}")]
    ScheduleLength { expected: usize, got: usize },

    #[error("invalid decimal literal {0:?}")]
    InvalidDecimal(String),

    #[error("invalid precision: bits={bits}, max_bits={max_bits} (need 53 <= bits <= max_bits)")]
    InvalidPrecision { bits: u32, max_bits: u32 },

    #[error("argument must be certified positive: {0}")]
    NotPositive(&'static str),

    #[error("invalid prime pair: {0}")]
    InvalidPrimePair(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
