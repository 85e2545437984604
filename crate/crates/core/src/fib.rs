//! Exact Fibonacci numbers and d'Ocagne's identity.
//!
//! A single process-wide cache holds `f_0, f_1, ...` as arbitrary-size
//! integers. It only ever grows, so readers never observe a value change.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use spin::RwLock;

/// Append-only table of Fibonacci numbers starting at `f_0 = 0, f_1 = 1`.
#[derive(Debug, Clone)]
pub struct FibCache {
    values: Vec<BigUint>,
}

impl Default for FibCache {
    fn default() -> Self {
        Self::new()
    }
}

impl FibCache {
    pub fn new() -> Self {
        FibCache {
            values: vec![BigUint::zero(), BigUint::one()],
        }
    }

    /// Number of cached values (indices `0..len`).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Extends the cache so that index `n` is available.
    pub fn extend_to(&mut self, n: usize) {
        while self.values.len() <= n {
            let len = self.values.len();
            let next = &self.values[len - 1] + &self.values[len - 2];
            self.values.push(next);
        }
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

static CACHE: RwLock<FibCache> = RwLock::new(FibCache { values: Vec::new() });

fn ensure(n: usize) {
    {
        let cache = CACHE.read();
        if cache.values.len() > n {
            return;
        }
    }
    let mut cache = CACHE.write();
    if cache.values.is_empty() {
        *cache = FibCache::new();
    }
    cache.extend_to(n);
}

/// Pre-extends the shared cache, e.g. before a parallel phase.
pub fn warm(n: usize) {
    ensure(n);
}

/// Returns `f_n` exactly.
pub fn fib(n: usize) -> BigUint {
    ensure(n);
    CACHE.read().values[n].clone()
}

/// Signed copy of `f_n`.
pub fn fib_int(n: usize) -> BigInt {
    BigInt::from(fib(n))
}

/// Returns `f_0..=f_n` in one lock acquisition.
pub fn fib_prefix(n: usize) -> Vec<BigUint> {
    ensure(n);
    CACHE.read().values[..=n].to_vec()
}

/// `f_n` as a `u64`, or `None` once it no longer fits (n > 93).
pub fn fib_u64(n: usize) -> Option<u64> {
    u64::try_from(fib(n)).ok()
}

/// Evaluates `f_a f_{b+1} - f_b f_{a+1}` directly from cached values.
///
/// For `0 <= b <= a` this equals `(-1)^b f_{a-b}`.
///
/// # Panics
///
/// Panics if `b > a`.
pub fn docagne(a: usize, b: usize) -> BigInt {
    assert!(b <= a, "docagne requires b <= a (got a={a}, b={b})");
    ensure(a + 1);
    let cache = CACHE.read();
    let v = &cache.values;
    BigInt::from(&v[a] * &v[b + 1]) - BigInt::from(&v[b] * &v[a + 1])
}
