//! Certified minimization over `F_n^+`, the three hypotheses, the lattice
//! oracle, and minimizer-switch profiles for prime pairs.

mod certificate;
mod minimize;
mod oracle;
mod primes;
mod switch;

pub use certificate::{verify_main, Certificate};
pub use minimize::{g_values, minimize_over, minimize_over_fplus, Argmin, MinimizationResult, Status};
pub use oracle::{
    oracle_crosscheck, oracle_crosscheck_many, oracle_crosscheck_schedule, OracleReport, ORACLE_MAX_N,
};
pub use primes::is_prime_u64;
pub use switch::{
    grid, refine_switch, switch_profile, CandidateSet, Candidates, GridPoint, PrimePairContext,
    SwitchInterval, SwitchProfile,
};
