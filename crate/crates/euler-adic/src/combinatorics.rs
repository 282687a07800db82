//! Arbitrary-precision Eulerian numbers, binomials, factorials, and
//! rise/fall statistics.
//!
//! The Eulerian number `A(n,k)` counts permutations of `{1,...,n+1}` with
//! exactly `k` rises and satisfies
//!
//! ```text
//! A(n,k) = (n-k+1) A(n-1,k-1) + (k+1) A(n-1,k),    A(0,0) = 1,
//! ```
//!
//! with `A(n,k) = 0` for `k` outside `{0,...,n}`. The triangle is memoized
//! in a process-wide table: it is grown under a write lock and every lookup
//! afterwards is a cheap read, so the heavy callers (dimension sums, path
//! counting) can share it freely across threads.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Triangular table of Eulerian numbers up to a maximum level.
#[derive(Debug, Clone)]
pub struct EulerianTable {
    rows: Vec<Vec<BigUint>>,
}

impl EulerianTable {
    /// Builds rows `0..=max_level` bottom-up from the recursion.
    pub fn with_max_level(max_level: usize) -> Self {
        let mut table = EulerianTable {
            rows: vec![vec![BigUint::one()]],
        };
        table.grow_to(max_level);
        table
    }

    fn grow_to(&mut self, level: usize) {
        while self.rows.len() <= level {
            let n = self.rows.len();
            let prev = &self.rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut value = BigUint::zero();
                if k >= 1 {
                    value += BigUint::from(n - k + 1) * &prev[k - 1];
                }
                if k < n {
                    value += BigUint::from(k + 1) * &prev[k];
                }
                row.push(value);
            }
            self.rows.push(row);
        }
    }

    pub fn max_level(&self) -> usize {
        self.rows.len() - 1
    }

    /// `A(n,k)`, with the zeroing convention for `k` outside `0..=n`.
    pub fn get(&self, n: u32, k: i64) -> BigUint {
        if k < 0 || k > n as i64 {
            BigUint::zero()
        } else {
            self.rows[n as usize][k as usize].clone()
        }
    }

    pub fn row(&self, n: u32) -> &[BigUint] {
        &self.rows[n as usize]
    }
}

static TABLE: LazyLock<RwLock<EulerianTable>> =
    LazyLock::new(|| RwLock::new(EulerianTable::with_max_level(16)));

/// The Eulerian number `A(n,k)` from the shared table.
///
/// Total in `k`: out-of-range columns give 0.
pub fn eulerian(n: u32, k: i64) -> BigUint {
    if k < 0 || k > n as i64 {
        return BigUint::zero();
    }
    {
        let table = TABLE.read().unwrap();
        if table.max_level() >= n as usize {
            return table.get(n, k);
        }
    }
    let mut table = TABLE.write().unwrap();
    table.grow_to(n as usize);
    table.get(n, k)
}

/// `n!` as a big natural.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `C(n,m)` with the zeroing convention: 0 whenever `m < 0` or `m > n`.
///
/// The zeroing convention is what lets the regrouped dimension sum run over
/// a rectangular index range without explicit clamps.
pub fn binomial(n: u64, m: i64) -> BigUint {
    if m < 0 || m as u64 > n {
        BigUint::zero()
    } else {
        num_integer::binomial(BigUint::from(n), BigUint::from(m as u64))
    }
}

fn ensure_word(w: &[u32]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::InvalidSequence);
    }
    let mut seen = w.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::InvalidSequence);
    }
    Ok(())
}

/// Number of rises (adjacent ascents) in a word with distinct entries.
pub fn rises(w: &[u32]) -> Result<usize> {
    ensure_word(w)?;
    Ok(count_rises(w))
}

/// Number of falls (adjacent descents); `rises(w) + falls(w) = |w| - 1`.
pub fn falls(w: &[u32]) -> Result<usize> {
    ensure_word(w)?;
    Ok(w.len() - 1 - count_rises(w))
}

pub(crate) fn count_rises(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] < p[1]).count()
}
