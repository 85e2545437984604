//! Minimizer switches of `H_x(t)` for a concrete prime pair.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::minimize::{certified_argmin, Status};
use super::primes::is_prime_u64;
use crate::candidates::enumerate_f_plus;
use crate::error::{Error, Result};
use crate::highprec::{ln_int, pow, BoundedReal, PowerTable, PrecisionContext, Psi};
use crate::lattice::enumerate_lattice;

/// A prime pair `(p, q)` and the ratio `psi = log q / log p`.
#[derive(Clone, Debug)]
pub struct PrimePairContext {
    n: usize,
    primes: Option<(BigUint, BigUint)>,
    psi: Psi,
    unchecked: bool,
}

impl PrimePairContext {
    /// Validates `p, q >= 2`, `p != q`, and primality when both fit in 64
    /// bits. Larger inputs are accepted and flagged as unchecked.
    pub fn new(p: BigUint, q: BigUint, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { n, min: 3 });
        }
        let two = BigUint::from(2u32);
        if p < two || q < two {
            return Err(Error::InvalidPrimePair(format!("p={p}, q={q}: both must be >= 2")));
        }
        if p == q {
            return Err(Error::InvalidPrimePair(format!("p = q = {p}")));
        }
        let mut unchecked = false;
        for v in [&p, &q] {
            match v.to_u64() {
                Some(x) if !is_prime_u64(x) => {
                    return Err(Error::InvalidPrimePair(format!("{x} is not prime")));
                }
                Some(_) => {}
                None => unchecked = true,
            }
        }
        Ok(PrimePairContext {
            n,
            psi: Psi::LogRatio {
                p: p.clone(),
                q: q.clone(),
            },
            primes: Some((p, q)),
            unchecked,
        })
    }

    /// A pair-free profile with an arbitrary ratio; `Psi::Golden` makes
    /// `H` coincide with `G`.
    pub fn synthetic(psi: Psi, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { n, min: 3 });
        }
        Ok(PrimePairContext {
            n,
            primes: None,
            psi,
            unchecked: false,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn primes(&self) -> Option<(&BigUint, &BigUint)> {
        self.primes.as_ref().map(|(p, q)| (p, q))
    }

    pub fn psi(&self) -> &Psi {
        &self.psi
    }

    /// True when a prime exceeded 64 bits and was not tested.
    pub fn primality_unchecked(&self) -> bool {
        self.unchecked
    }
}

/// Which candidates the profile minimizes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateSet {
    /// `F_n^+`; the true minimum is over the lattice, so switches found
    /// here are indicative only.
    FPlus,
    /// Every lattice point (small `n` only).
    Lattice,
}

/// Candidates with display labels.
#[derive(Clone, Debug)]
pub struct Candidates {
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<BigRational>>,
}

impl Candidates {
    pub fn build(n: usize, set: CandidateSet, max_n: usize) -> Result<Self> {
        let mut labels = Vec::new();
        let mut vectors = Vec::new();
        match set {
            CandidateSet::FPlus => {
                for y in enumerate_f_plus(n)? {
                    labels.push(format!("y_{}({},{})", n, y.k(), y.l()));
                    vectors.push(y.entries().to_vec());
                }
            }
            CandidateSet::Lattice => {
                if n > max_n {
                    return Err(Error::LatticeGuard { n, max: max_n });
                }
                for pt in enumerate_lattice(n, None, max_n > crate::lattice::LATTICE_MAX_N)? {
                    let v: Vec<BigRational> = pt
                        .entries()
                        .iter()
                        .map(|e| BigRational::from_integer(BigInt::from(e.clone())))
                        .collect();
                    let parts: Vec<String> = pt.entries().iter().map(|e| format!("{e}")).collect();
                    labels.push(format!("({})", parts.join(",")));
                    vectors.push(v);
                }
            }
        }
        Ok(Candidates { labels, vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Certified minimizer of `H` at one grid point.
#[derive(Clone, Debug)]
pub struct GridPoint {
    pub t: BigRational,
    pub argmin: usize,
    pub status: Status,
    pub min_value: BoundedReal,
    /// `log p * (min H)^(1/t)`: the measure `m_t` only for large enough
    /// members of a prime sequence, so always a candidate value.
    pub measure_candidate: Option<BoundedReal>,
    pub bits_used: u32,
}

/// Adjacent certified grid points with different minimizers.
#[derive(Clone, Debug)]
pub struct SwitchInterval {
    pub t_left: BigRational,
    pub t_right: BigRational,
    pub argmin_before: usize,
    pub argmin_after: usize,
}

#[derive(Clone, Debug)]
pub struct SwitchProfile {
    pub candidates: Candidates,
    pub set: CandidateSet,
    pub points: Vec<GridPoint>,
    pub switches: Vec<SwitchInterval>,
    /// Grid points left out of switch detection.
    pub ambiguous_points: Vec<usize>,
}

fn h_argmin(
    pair: &PrimePairContext,
    cands: &Candidates,
    t: &BigRational,
    ctx: &PrecisionContext,
) -> Result<GridPoint> {
    let n = pair.n;
    let a = certified_argmin(ctx, |bits| {
        let c = ctx.with_bits(bits);
        let tb = BoundedReal::from_rational(t, bits);
        let table = PowerTable::perturbed(n, &pair.psi, &tb, &c)?;
        Ok(cands.vectors.iter().map(|x| table.eval(x)).collect())
    })?;
    let min_value = a.values[a.best].clone();
    let measure_candidate = match &pair.primes {
        Some((p, _)) => {
            let bits = a.bits;
            let inv_t = BoundedReal::from_rational(&(BigRational::one() / t), bits);
            let root = pow(&min_value, &inv_t, bits)?;
            Some(root.mul(&ln_int(&BigInt::from(p.clone()), bits)?, bits))
        }
        None => None,
    };
    Ok(GridPoint {
        t: t.clone(),
        argmin: a.best,
        status: a.status(),
        min_value,
        measure_candidate,
        bits_used: a.bits,
    })
}

/// `grid_size` equally spaced rational points on `[t_lo, t_hi]`.
pub fn grid(t_lo: &BigRational, t_hi: &BigRational, grid_size: usize) -> Result<Vec<BigRational>> {
    if grid_size < 2 {
        return Err(Error::InvalidGrid("need at least 2 grid points"));
    }
    if *t_lo <= BigRational::from_integer(0.into()) || t_lo >= t_hi {
        return Err(Error::InvalidGrid("need 0 < t_lo < t_hi"));
    }
    let step = (t_hi - t_lo) / BigRational::from_integer(BigInt::from(grid_size - 1));
    Ok((0..grid_size)
        .map(|j| t_lo + &step * BigRational::from_integer(BigInt::from(j)))
        .collect())
}

/// Evaluates the certified minimizer of `H` on a grid and reports every
/// change between consecutive certified points.
pub fn switch_profile(
    pair: &PrimePairContext,
    set: CandidateSet,
    t_lo: &BigRational,
    t_hi: &BigRational,
    grid_size: usize,
    ctx: &PrecisionContext,
    lattice_max_n: usize,
) -> Result<SwitchProfile> {
    let ts = grid(t_lo, t_hi, grid_size)?;
    let candidates = Candidates::build(pair.n, set, lattice_max_n)?;
    let mut points = Vec::with_capacity(ts.len());
    for t in &ts {
        points.push(h_argmin(pair, &candidates, t, ctx)?);
    }
    let ambiguous_points: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.status != Status::Unique)
        .map(|(j, _)| j)
        .collect();
    let mut switches = Vec::new();
    let mut prev: Option<&GridPoint> = None;
    for p in points.iter().filter(|p| p.status == Status::Unique) {
        if let Some(a) = prev {
            if a.argmin != p.argmin {
                switches.push(SwitchInterval {
                    t_left: a.t.clone(),
                    t_right: p.t.clone(),
                    argmin_before: a.argmin,
                    argmin_after: p.argmin,
                });
            }
        }
        prev = Some(p);
    }
    Ok(SwitchProfile {
        candidates,
        set,
        points,
        switches,
        ambiguous_points,
    })
}

/// Narrows a switch interval by bisection while the midpoint minimizer is
/// certified and equal to one of the two end minimizers.
pub fn refine_switch(
    pair: &PrimePairContext,
    profile: &SwitchProfile,
    interval: &SwitchInterval,
    steps: usize,
    ctx: &PrecisionContext,
) -> Result<SwitchInterval> {
    let two = BigRational::from_integer(2.into());
    let mut out = interval.clone();
    for _ in 0..steps {
        let mid = (&out.t_left + &out.t_right) / &two;
        let g = h_argmin(pair, &profile.candidates, &mid, ctx)?;
        if g.status != Status::Unique {
            break;
        }
        if g.argmin == out.argmin_before {
            out.t_left = mid;
        } else if g.argmin == out.argmin_after {
            out.t_right = mid;
        } else {
            break;
        }
    }
    Ok(out)
}
