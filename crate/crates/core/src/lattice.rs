//! Non-negative integer solutions of `A_n x = (f_n, f_(n-1))`.
//!
//! The set grows faster than exponentially in `n`, so enumeration is
//! guarded by a dimension limit and an optional count cap.

use alloc::vec::Vec;
use core::ops::ControlFlow;

use num_bigint::{BigInt, BigUint};

use crate::candidates::{y_vector, ConstraintSystem};
use crate::error::{Error, Result};
use crate::fib::fib_u64;

/// Largest `n` enumerated without `force`.
pub const LATTICE_MAX_N: usize = 25;

/// Largest `n` the `u64` search can handle at all.
const HARD_MAX_N: usize = 80;

/// A point of `V_n^+(Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    entries: Vec<BigUint>,
}

impl LatticePoint {
    /// Wraps entries after checking that they solve the system.
    pub fn new(entries: Vec<BigUint>) -> Option<Self> {
        let n = entries.len();
        if n < 2 {
            return None;
        }
        let sys = ConstraintSystem::new(n);
        let signed: Vec<BigInt> = entries.iter().cloned().map(BigInt::from).collect();
        (sys.apply_int(&signed) == *sys.target()).then_some(LatticePoint { entries })
    }

    pub fn from_u64(x: &[u64]) -> Option<Self> {
        Self::new(x.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.entries.iter().map(|e| u64::try_from(e).ok()).collect()
    }
}

/// `b_n(i)`: `-1` at `i` and `i+1`, `+1` at `i+2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVector {
    n: usize,
    i: usize,
    entries: Vec<i64>,
}

impl KernelVector {
    pub fn new(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i + 2 <= n, "need 1 <= i <= n-2");
        let mut entries = alloc::vec![0; n];
        entries[i - 1] = -1;
        entries[i] = -1;
        entries[i + 1] = 1;
        KernelVector { n, i, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn in_kernel(&self) -> bool {
        let sys = ConstraintSystem::new(self.n);
        let x: Vec<BigInt> = self.entries.iter().map(|&e| BigInt::from(e)).collect();
        sys.apply_int(&x) == [BigInt::from(0), BigInt::from(0)]
    }
}

struct Search<'a, F> {
    n: usize,
    // columns (f_j, f_(j-1)), 0-based
    cols: Vec<(u64, u64)>,
    // for each suffix j: the columns with the smallest and largest
    // f_(i-1)/f_i among i >= j
    lo_col: Vec<(u64, u64)>,
    hi_col: Vec<(u64, u64)>,
    x: Vec<u64>,
    visit: &'a mut F,
}

impl<F: FnMut(&[u64]) -> ControlFlow<()>> Search<'_, F> {
    /// Whether `(r1, r2)` lies in the cone of the remaining columns.
    fn feasible(&self, j: usize, r1: u64, r2: u64) -> bool {
        let (a1, a2) = self.lo_col[j];
        let (b1, b2) = self.hi_col[j];
        // a2/a1 <= r2/r1 <= b2/b1
        (r2 as u128) * (a1 as u128) >= (r1 as u128) * (a2 as u128)
            && (r2 as u128) * (b1 as u128) <= (r1 as u128) * (b2 as u128)
    }

    fn go(&mut self, j: usize, r1: u64, r2: u64) -> ControlFlow<()> {
        let (c1, c2) = self.cols[j];
        if j + 1 == self.n {
            // the last coordinate is forced
            if r1.is_multiple_of(c1) {
                let v = r1 / c1;
                if v * c2 == r2 {
                    self.x[j] = v;
                    let out = (self.visit)(&self.x);
                    self.x[j] = 0;
                    return out;
                }
            }
            return ControlFlow::Continue(());
        }
        let mut max = r1 / c1;
        if let Some(m) = r2.checked_div(c2) {
            max = max.min(m);
        }
        for v in 0..=max {
            let (s1, s2) = (r1 - v * c1, r2 - v * c2);
            if !self.feasible(j + 1, s1, s2) {
                continue;
            }
            self.x[j] = v;
            self.go(j + 1, s1, s2)?;
        }
        self.x[j] = 0;
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every point of `V_n^+(Z)` in lexicographic order
/// (coordinates left to right, values ascending) until it breaks.
pub fn visit_lattice<F>(n: usize, force: bool, mut visit: F) -> Result<()>
where
    F: FnMut(&[u64]) -> ControlFlow<()>,
{
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    if n > HARD_MAX_N || (n > LATTICE_MAX_N && !force) {
        return Err(Error::LatticeGuard {
            n,
            max: if force { HARD_MAX_N } else { LATTICE_MAX_N },
        });
    }
    let f = |i: usize| fib_u64(i).expect("n is small enough for u64");
    let cols: Vec<(u64, u64)> = (1..=n).map(|i| (f(i), f(i - 1))).collect();
    // ratio c2/c1 comparisons by cross multiplication
    let less = |a: (u64, u64), b: (u64, u64)| (a.1 as u128) * (b.0 as u128) < (b.1 as u128) * (a.0 as u128);
    let mut lo_col = cols.clone();
    let mut hi_col = cols.clone();
    for j in (0..n - 1).rev() {
        if less(lo_col[j + 1], lo_col[j]) {
            lo_col[j] = lo_col[j + 1];
        }
        if less(hi_col[j], hi_col[j + 1]) {
            hi_col[j] = hi_col[j + 1];
        }
    }
    let mut search = Search {
        n,
        cols,
        lo_col,
        hi_col,
        x: alloc::vec![0; n],
        visit: &mut visit,
    };
    let _ = search.go(0, f(n), f(n - 1));
    Ok(())
}

/// Counts `V_n^+(Z)`, stopping once `stop_at` points have been seen.
/// Returns the count and whether the enumeration finished.
pub fn count_lattice(n: usize, stop_at: Option<u64>, force: bool) -> Result<(u64, bool)> {
    let mut count = 0u64;
    let mut complete = true;
    visit_lattice(n, force, |_| {
        count += 1;
        if stop_at.is_some_and(|s| count >= s) {
            complete = false;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    Ok((count, complete))
}

/// The full set `V_n^+(Z)`, or a size-cap error once more than `limit`
/// points turn up.
pub fn enumerate_lattice(n: usize, limit: Option<usize>, force: bool) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    let mut over = false;
    visit_lattice(n, force, |x| {
        if limit.is_some_and(|l| out.len() >= l) {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(LatticePoint {
            entries: x.iter().map(|&v| BigUint::from(v)).collect(),
        });
        ControlFlow::Continue(())
    })?;
    if over {
        return Err(Error::SizeCapExceeded {
            n,
            limit: limit.unwrap_or(0),
            partial: out.len(),
        });
    }
    Ok(out)
}

/// `b_n(i)` and the family `y_n(i, i+1) + k b_n(i)`, `0 <= k < f_(n-i-1)`.
pub fn kernel_family(n: usize, i: usize) -> Result<(KernelVector, Vec<LatticePoint>)> {
    if i < 1 || i + 2 > n {
        return Err(Error::IndexOutOfRange { n, k: i, l: i + 1 });
    }
    let b = KernelVector::new(n, i);
    let base = y_vector(n, i, i + 1)?;
    let base: Vec<BigInt> = base
        .entries()
        .iter()
        .map(|e| e.to_integer())
        .collect();
    let size = crate::fib::fib_int(n - i - 1);
    let mut family = Vec::new();
    let mut k = BigInt::from(0);
    while k < size {
        let entries: Vec<BigUint> = base
            .iter()
            .zip(b.entries())
            .map(|(y, &d)| {
                (y + &k * d)
                    .to_biguint()
                    .expect("family members are non-negative")
            })
            .collect();
        family.push(LatticePoint::new(entries).expect("family members solve the system"));
        k += 1;
    }
    Ok((b, family))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn points(n: usize) -> BTreeSet<Vec<u64>> {
        enumerate_lattice(n, None, false)
            .unwrap()
            .iter()
            .map(|p| p.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn small_dimensions() {
        let want: BTreeSet<Vec<u64>> = [alloc::vec![1, 1, 0], alloc::vec![0, 0, 1]].into();
        assert_eq!(points(3), want);
        let want: BTreeSet<Vec<u64>> = [
            alloc::vec![1, 2, 0, 0],
            alloc::vec![0, 1, 1, 0],
            alloc::vec![0, 0, 0, 1],
        ]
        .into();
        assert_eq!(points(4), want);
    }

    #[test]
    fn known_counts() {
        let want = [2u64, 3, 6, 13, 38, 139, 695, 4699];
        for (n, &c) in (3..=10).zip(&want) {
            assert_eq!(count_lattice(n, None, false).unwrap(), (c, true), "n={n}");
        }
    }

    #[test]
    fn brute_force_agrees_at_small_n() {
        // independent check by nested bounds without pruning
        for n in 3..=7usize {
            let f: Vec<u64> = (0..=n).map(|i| fib_u64(i).unwrap()).collect();
            let mut found = BTreeSet::new();
            let mut x = alloc::vec![0u64; n];
            fn rec(j: usize, x: &mut [u64], f: &[u64], n: usize, out: &mut BTreeSet<Vec<u64>>) {
                if j == n {
                    let r1: u64 = (0..n).map(|i| x[i] * f[i + 1]).sum();
                    let r2: u64 = (0..n).map(|i| x[i] * f[i]).sum();
                    if r1 == f[n] && r2 == f[n - 1] {
                        out.insert(x.to_vec());
                    }
                    return;
                }
                for v in 0..=(f[n] / f[j + 1]) {
                    x[j] = v;
                    rec(j + 1, x, f, n, out);
                }
                x[j] = 0;
            }
            rec(0, &mut x, &f, n, &mut found);
            assert_eq!(points(n), found, "n={n}");
        }
    }

    #[test]
    fn order_is_lexicographic() {
        let pts: Vec<_> = enumerate_lattice(8, None, false)
            .unwrap()
            .iter()
            .map(|p| p.to_u64().unwrap())
            .collect();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn guard_and_cap() {
        assert!(matches!(
            enumerate_lattice(26, Some(10), false),
            Err(Error::LatticeGuard { .. })
        ));
        assert!(matches!(
            enumerate_lattice(2, None, false),
            Err(Error::DimensionTooSmall { .. })
        ));
        match enumerate_lattice(10, Some(100), false) {
            Err(Error::SizeCapExceeded { partial, .. }) => assert_eq!(partial, 100),
            other => panic!("{other:?}"),
        }
        assert_eq!(enumerate_lattice(5, Some(6), false).unwrap().len(), 6);
        assert_eq!(count_lattice(30, Some(5), true).unwrap(), (5, false));
    }

    #[test]
    fn kernel_families() {
        let (b, _) = kernel_family(5, 1).unwrap();
        assert_eq!(b.entries(), [-1, -1, 1, 0, 0]);
        assert!(b.in_kernel());
        let (_, fam) = kernel_family(7, 2).unwrap();
        assert_eq!(fam.len(), 3);
        for n in 3..=12 {
            let all: BTreeSet<Vec<u64>> = points(n);
            let mut seen = BTreeSet::new();
            let mut unit = alloc::vec![0u64; n];
            unit[n - 1] = 1;
            for i in 1..=n - 2 {
                let (b, fam) = kernel_family(n, i).unwrap();
                assert!(b.in_kernel());
                assert_eq!(fam.len() as u64, fib_u64(n - i - 1).unwrap());
                for p in fam {
                    let v = p.to_u64().unwrap();
                    assert!(all.contains(&v));
                    assert_ne!(v, unit);
                    assert!(seen.insert(v), "families overlap at n={n}");
                }
            }
        }
    }
}
