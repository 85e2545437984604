//! The two-row Fibonacci system `A_n x = (f_n, f_(n-1))` and its
//! two-support solutions `y_n(k, l)`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fib::fib_int;

/// `A_n` with rows `(f_1, ..., f_n)` and `(f_0, ..., f_(n-1))`, and the
/// target `(f_n, f_(n-1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    n: usize,
    rows: [Vec<BigInt>; 2],
    target: [BigInt; 2],
}

impl ConstraintSystem {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "the system needs n >= 2");
        ConstraintSystem {
            n,
            rows: [
                (1..=n).map(fib_int).collect(),
                (0..n).map(fib_int).collect(),
            ],
            target: [fib_int(n), fib_int(n - 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<BigInt>; 2] {
        &self.rows
    }

    pub fn target(&self) -> &[BigInt; 2] {
        &self.target
    }

    /// `A_n x` over the rationals.
    pub fn apply(&self, x: &[BigRational]) -> [BigRational; 2] {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        let row = |r: &[BigInt]| {
            x.iter()
                .zip(r)
                .fold(BigRational::zero(), |acc, (xi, a)| acc + xi * a)
        };
        [row(&self.rows[0]), row(&self.rows[1])]
    }

    /// `A_n x` over the integers.
    pub fn apply_int(&self, x: &[BigInt]) -> [BigInt; 2] {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        let row = |r: &[BigInt]| x.iter().zip(r).map(|(xi, a)| xi * a).sum();
        [row(&self.rows[0]), row(&self.rows[1])]
    }

    pub fn is_solution(&self, x: &[BigRational]) -> bool {
        let [a, b] = self.apply(x);
        a == BigRational::from_integer(self.target[0].clone())
            && b == BigRational::from_integer(self.target[1].clone())
    }

    /// Determinant of the 2x2 minor on columns `i < j` (1-based).
    pub fn minor_det(&self, i: usize, j: usize) -> BigInt {
        let [r0, r1] = &self.rows;
        &r0[i - 1] * &r1[j - 1] - &r0[j - 1] * &r1[i - 1]
    }
}

/// The vector `y_n(k, l)`: entries at `k` and `l`, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CandidateVector {
    n: usize,
    k: usize,
    l: usize,
    entries: Vec<BigRational>,
}

impl CandidateVector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Equality of the underlying vectors, ignoring provenance.
    pub fn same_vector(&self, other: &CandidateVector) -> bool {
        self.entries == other.entries
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.denom().is_one())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    /// Whether this is `(0, ..., 0, 1)`.
    pub fn is_unit_last(&self) -> bool {
        let (last, rest) = self.entries.split_last().expect("n >= 2");
        last.is_one() && rest.iter().all(Zero::is_zero)
    }

    /// Integer entries, if every entry is a non-negative integer below 2^64.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.entries
            .iter()
            .map(|e| {
                if !e.denom().is_one() || e.is_negative() {
                    return None;
                }
                u64::try_from(e.numer()).ok()
            })
            .collect()
    }

    /// Exact entry strings such as `"3/2"` or `"0"`.
    pub fn entry_strings(&self) -> Vec<alloc::string::String> {
        use alloc::string::ToString;
        self.entries.iter().map(|e| e.to_string()).collect()
    }
}

impl fmt::Display for CandidateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y_{}({},{}) = (", self.n, self.k, self.l)?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

fn check_indices(n: usize, k: usize, l: usize) -> Result<()> {
    if n < 2 || k < 1 || k >= l || l > n {
        return Err(Error::IndexOutOfRange { n, k, l });
    }
    Ok(())
}

/// `y_n(k, l)` from its closed form.
pub fn y_vector(n: usize, k: usize, l: usize) -> Result<CandidateVector> {
    check_indices(n, k, l)?;
    let d = fib_int(l - k);
    let mut yk = BigRational::new(fib_int(n - l), d.clone());
    if (l - k).is_multiple_of(2) {
        yk = -yk;
    }
    let yl = BigRational::new(fib_int(n - k), d);
    let mut entries = alloc::vec![BigRational::zero(); n];
    entries[k - 1] = yk;
    entries[l - 1] = yl;
    Ok(CandidateVector { n, k, l, entries })
}

/// Solves `x1 * col_k + x2 * col_l = (f_n, f_(n-1))` by Cramer's rule.
pub fn solve_pair(n: usize, k: usize, l: usize) -> Result<(BigRational, BigRational)> {
    check_indices(n, k, l)?;
    let sys = ConstraintSystem::new(n);
    let det = sys.minor_det(k, l);
    assert!(!det.is_zero(), "columns of A_n are pairwise independent");
    let [r0, r1] = sys.rows();
    let [b0, b1] = sys.target();
    let x1 = b0 * &r1[l - 1] - &r0[l - 1] * b1;
    let x2 = &r0[k - 1] * b1 - b0 * &r1[k - 1];
    Ok((
        BigRational::new(x1, det.clone()),
        BigRational::new(x2, det),
    ))
}

/// All distinct `y_n(k, l)`, `1 <= k < l <= n`, in lexicographic `(k, l)`
/// order. Duplicates (every `(k, n)` gives the same vector) keep the first
/// pair seen.
pub fn enumerate_f(n: usize) -> Result<Vec<CandidateVector>> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    let mut out: Vec<CandidateVector> = Vec::new();
    let mut have_unit = false;
    for k in 1..n {
        for l in (k + 1)..=n {
            let y = y_vector(n, k, l)?;
            if y.is_unit_last() {
                if have_unit {
                    continue;
                }
                have_unit = true;
            }
            out.push(y);
        }
    }
    Ok(out)
}

/// The non-negative members of [`enumerate_f`], same order.
pub fn enumerate_f_plus(n: usize) -> Result<Vec<CandidateVector>> {
    Ok(enumerate_f(n)?
        .into_iter()
        .filter(CandidateVector::is_nonnegative)
        .collect())
}

/// `(n^2 - 3n + 4) / 2`.
pub fn cardinality_f(n: usize) -> BigUint {
    assert!(n >= 3, "cardinalities are stated for n >= 3");
    let n = BigUint::from(n);
    (&n * &n + 4u32 - 3u32 * &n) / 2u32
}

/// `(n^2 - 2n + 5) / 4` for odd `n`, `(n^2 - 2n + 4) / 4` for even `n`.
pub fn cardinality_f_plus(n: usize) -> BigUint {
    assert!(n >= 3, "cardinalities are stated for n >= 3");
    let odd = n % 2 == 1;
    let n = BigUint::from(n);
    let c = if odd { 5u32 } else { 4u32 };
    (&n * &n + c - 2u32 * &n) / 4u32
}

/// `#F_n^+ * (n - 1)`, the number of evaluations in one verification run.
pub fn cardinality_search_space(n: usize) -> BigUint {
    cardinality_f_plus(n) * BigUint::from(n - 1)
}

/// Closed forms for the search space: `(n^3 - 3n^2 + 7n - 5)/4` for odd
/// `n`, `(n^3 - 3n^2 + 6n - 4)/4` for even `n`.
pub fn cardinality_search_space_cubic(n: usize) -> BigUint {
    assert!(n >= 3, "cardinalities are stated for n >= 3");
    let odd = n % 2 == 1;
    let n = BigUint::from(n);
    let n2 = &n * &n;
    let n3 = &n2 * &n;
    if odd {
        (n3 + 7u32 * &n - 3u32 * n2 - 5u32) / 4u32
    } else {
        (n3 + 6u32 * &n - 3u32 * n2 - 4u32) / 4u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn displayed_examples() {
        assert_eq!(y_vector(7, 3, 4).unwrap().entries(), ints(&[0, 0, 2, 3, 0, 0, 0]));
        let y = y_vector(9, 2, 5).unwrap();
        let mut want = vec![q(0, 1); 9];
        want[1] = q(3, 2);
        want[4] = q(13, 2);
        assert_eq!(y.entries(), want);
        let y = y_vector(11, 4, 10).unwrap();
        assert_eq!(y.entries()[3], q(-1, 8));
        assert_eq!(y.entries()[9], q(13, 8));
        let s = y_vector(9, 2, 5).unwrap().entry_strings();
        assert_eq!(s[..5], ["0", "3/2", "0", "0", "13/2"]);
    }

    #[test]
    fn index_errors() {
        assert!(y_vector(5, 3, 3).is_err());
        assert!(y_vector(5, 0, 3).is_err());
        assert!(y_vector(5, 2, 6).is_err());
        assert!(solve_pair(5, 4, 2).is_err());
    }

    #[test]
    fn solve_pair_examples() {
        assert_eq!(solve_pair(9, 2, 5).unwrap(), (q(3, 2), q(13, 2)));
        assert_eq!(solve_pair(7, 3, 4).unwrap(), (q(2, 1), q(3, 1)));
        for n in 2..30 {
            assert_eq!(solve_pair(n, n - 1, n).unwrap(), (q(0, 1), q(1, 1)));
        }
    }

    #[test]
    fn rank_two() {
        for n in 2..40 {
            assert_eq!(ConstraintSystem::new(n).minor_det(1, 2).abs(), BigInt::one());
        }
    }

    #[test]
    fn small_sets() {
        let f3 = enumerate_f_plus(3).unwrap();
        let got: Vec<_> = f3.iter().map(|y| y.entries().to_vec()).collect();
        assert_eq!(got, [ints(&[1, 1, 0]), ints(&[0, 0, 1])]);
        assert_eq!((f3[1].k(), f3[1].l()), (1, 3));
        assert_eq!(enumerate_f_plus(7).unwrap().len(), 10);
        assert_eq!(enumerate_f_plus(39).unwrap().len(), 362);
        assert_eq!(enumerate_f(7).unwrap().len(), 16);
        assert_eq!(enumerate_f(3).unwrap().len(), 2);
        assert_eq!(enumerate_f(10).unwrap().len(), 37);
        assert!(enumerate_f(2).is_err());
    }

    #[test]
    fn cardinality_formulas() {
        assert_eq!(cardinality_search_space(39), BigUint::from(13756u32));
        assert_eq!(cardinality_search_space_cubic(39), BigUint::from(13756u32));
        assert_eq!(cardinality_f_plus(4), BigUint::from(3u32));
        for n in 3..=50usize {
            let c2 = BigUint::from((n - 1) * (n - 2) / 2);
            assert_eq!(cardinality_f(n) - 1u32, c2);
            assert_eq!(cardinality_search_space(n), cardinality_search_space_cubic(n));
        }
    }
}
