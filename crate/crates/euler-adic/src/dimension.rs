//! Cylinder dimension counts `dim(F,(n,k))` — the number of root paths
//! inside the cylinder `F` that reach the vertex `(n,k)` — via the
//! regrouped cluster sum, together with two independent brute-force
//! oracles and exact ratio tables.
//!
//! Writing `n0 = |F|`, `k0` for its terminal column and `pi(F)` for its
//! permutation, every path from `(n0,k0)` to `(n,k)` corresponds to a
//! permutation `sigma` of `{1,...,n+1}` with `k` rises whose small symbols
//! `{1,...,n0+1}` spell `pi(F)`. Grouping the `sigma` by the ordered
//! partition `M` of `pi(F)` into clusters and by the rise count `r` of the
//! tail permutation `rho` of `{n0+2,...,n+1}` gives
//!
//! ```text
//! dim(F,(n,k)) = sum_r ( sum_{m=1}^{n0+1} alpha(F,r,m) ) A(n-n0-1, r),
//! alpha(F,r,m) = sum_{M in P_m(F)} placement_count(M, r)
//! ```
//!
//! where the placement count chooses which gaps of `rho` receive the `m`
//! clusters. With `j = k - r - r(M)` clusters required to add a rise, the
//! slot counts are `n - n0 - r` rise-adding gaps (the falls of `rho` plus
//! its front) and `r + 1` others, so the count is
//! `C(n-n0-r, j) * C(r+1, m-j)` — the [`FormulaVariant::SlotCorrected`]
//! reading, which matches both oracles everywhere. The
//! [`FormulaVariant::PaperLiteral`] variant instead evaluates the binomial
//! arguments `C(n-n0-(k-k0)+1, j) * C(k-k0+1, m-j)` and is kept only for
//! comparison output: it overcounts already at the cylinder of `21` and
//! target `(2,1)` (3 instead of 2). Out-of-range choices vanish through the
//! zeroing binomial convention, so no explicit clamps are needed.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::codec::{ordered_partitions, path_to_perm, OrderedPartition, Permutation};
use crate::combinatorics::{binomial, eulerian};
use crate::error::{Error, Result};
use crate::graph::{count_paths_between, Cylinder, Vertex};

/// Highest target level accepted by the permutation oracle, which
/// enumerates all `(n+1)!` permutations.
pub const PERMUTATION_ORACLE_MAX_LEVEL: u32 = 11;

/// Which reading of the placement-count binomials to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormulaVariant {
    #[default]
    SlotCorrected,
    PaperLiteral,
}

/// A dimension query: a root cylinder `F` of length `>= 1` and a target
/// vertex at or below its terminal level.
#[derive(Debug, Clone)]
pub struct DimQuery {
    cylinder: Cylinder,
    pattern: Permutation,
    target: Vertex,
}

impl DimQuery {
    pub fn new(cylinder: Cylinder, target: Vertex) -> Result<Self> {
        if cylinder.is_empty() || (target.level() as usize) < cylinder.len() {
            return Err(Error::InvalidDimQuery);
        }
        let pattern = path_to_perm(&cylinder);
        Ok(DimQuery {
            cylinder,
            pattern,
            target,
        })
    }

    pub fn cylinder(&self) -> &Cylinder {
        &self.cylinder
    }

    /// `pi(F)`, the permutation assigned to the cylinder.
    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    fn n(&self) -> i64 {
        self.target.level() as i64
    }

    fn k(&self) -> i64 {
        self.target.column() as i64
    }

    fn n0(&self) -> i64 {
        self.cylinder.len() as i64
    }

    fn k0(&self) -> i64 {
        self.cylinder.terminal().column() as i64
    }
}

fn binom_i(n: i64, m: i64) -> BigUint {
    if n < 0 {
        BigUint::zero()
    } else {
        binomial(n as u64, m)
    }
}

/// Number of ways to place the clusters of `partition` into a tail
/// permutation with `r` rises so that the result has exactly `k` rises.
pub fn placement_count(
    partition: &OrderedPartition,
    r: u32,
    query: &DimQuery,
    variant: FormulaVariant,
) -> BigUint {
    let (n, k, n0, k0) = (query.n(), query.k(), query.n0(), query.k0());
    let m = partition.block_count() as i64;
    let j = k - r as i64 - partition.internal_rises() as i64;
    match variant {
        FormulaVariant::SlotCorrected => {
            binom_i(n - n0 - r as i64, j) * binom_i(r as i64 + 1, m - j)
        }
        FormulaVariant::PaperLiteral => {
            binom_i(n - n0 - (k - k0) + 1, j) * binom_i(k - k0 + 1, m - j)
        }
    }
}

/// `alpha(F,r,m)`: the placement count summed over all ordered partitions
/// of `pi(F)` into `m` blocks. Zero when `m > n0+1`.
pub fn alpha(query: &DimQuery, r: u32, m: usize, variant: FormulaVariant) -> BigUint {
    ordered_partitions(query.pattern(), m)
        .iter()
        .map(|partition| placement_count(partition, r, query, variant))
        .sum()
}

/// `beta(F,r) = sum_m alpha(F,r,m)`.
pub fn beta(query: &DimQuery, r: u32, variant: FormulaVariant) -> BigUint {
    (1..=query.cylinder.len() + 1)
        .map(|m| alpha(query, r, m, variant))
        .sum()
}

/// The regrouped dimension sum. For a target at the cylinder's own level
/// the dimension is the indicator of its terminal vertex.
pub fn dim_formula(query: &DimQuery, variant: FormulaVariant) -> BigUint {
    let (n, k, n0) = (query.n(), query.k(), query.n0());
    if n == n0 {
        return if query.target == query.cylinder.terminal() {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    // Terms outside this r range vanish by the zeroing conventions.
    let lo = 0.max(k - (n0 + 1));
    let hi = k.min(n - n0 - 1);
    let mut total = BigUint::zero();
    for r in lo..=hi {
        total += beta(query, r as u32, variant) * eulerian((n - n0 - 1) as u32, r);
    }
    total
}

/// Graph oracle: the dimension is the multiplicity-weighted count of paths
/// from the cylinder's terminal vertex to the target.
pub fn dim_oracle_graph(query: &DimQuery) -> BigUint {
    count_paths_between(query.cylinder.terminal(), query.target)
}

fn next_permutation(w: &mut [u8]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

/// Exhaustive tally, over all permutations of `{1,...,level+1}`, of how
/// many have a given rise count and induce a given order pattern on the
/// small symbols `{1,...,L}`, for every pattern length `L` in
/// `2..=max_pattern_len`.
///
/// This is the batch form of the permutation oracle: one sweep of the
/// symmetric group answers every `dim(F,(level,k))` with `|F| <
/// max_pattern_len` at once.
pub struct PatternTally {
    level: u32,
    max_pattern_len: usize,
    // counts[len] is a flat [sparse pattern index][rise count] table, where
    // the sparse index of a pattern p of length len is sum p_i (len+1)^...,
    // built by Horner's rule.
    counts: Vec<Vec<u64>>,
}

impl PatternTally {
    pub fn build(level: u32, max_pattern_len: usize) -> Result<Self> {
        if level > PERMUTATION_ORACLE_MAX_LEVEL {
            return Err(Error::OracleTooLarge {
                max: PERMUTATION_ORACLE_MAX_LEVEL,
                got: level,
            });
        }
        let width = level as usize + 1; // rise counts 0..=level
        let max_len = max_pattern_len.min(level as usize + 1);
        let mut counts: Vec<Vec<u64>> = (0..=max_len)
            .map(|len| {
                if len < 2 {
                    Vec::new()
                } else {
                    vec![0u64; (len + 1).pow(len as u32) * width]
                }
            })
            .collect();

        let mut w: Vec<u8> = (1..=level as u8 + 1).collect();
        let mut small = [0u8; 16];
        loop {
            let mut rises = 0usize;
            let mut found = 0usize;
            for i in 0..w.len() {
                if i + 1 < w.len() && w[i] < w[i + 1] {
                    rises += 1;
                }
                if (w[i] as usize) <= max_len {
                    small[found] = w[i];
                    found += 1;
                }
            }
            for (len, table) in counts.iter_mut().enumerate().skip(2) {
                let mut idx = 0usize;
                for &v in &small[..found] {
                    if (v as usize) <= len {
                        idx = idx * (len + 1) + v as usize;
                    }
                }
                table[idx * width + rises] += 1;
            }
            if !next_permutation(&mut w) {
                break;
            }
        }
        Ok(PatternTally {
            level,
            max_pattern_len: max_len,
            counts,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Permutations of `{1,...,level+1}` with `k` rises whose small symbols
    /// appear in the order `pattern`.
    pub fn count(&self, pattern: &[u32], k: u32) -> u64 {
        let len = pattern.len();
        assert!(
            (2..=self.max_pattern_len).contains(&len),
            "pattern length {len} outside tallied range 2..={}",
            self.max_pattern_len
        );
        if k > self.level {
            return 0;
        }
        let mut idx = 0usize;
        for &v in pattern {
            debug_assert!(1 <= v && v as usize <= len);
            idx = idx * (len + 1) + v as usize;
        }
        self.counts[len][idx * (self.level as usize + 1) + k as usize]
    }
}

/// Permutation oracle: counts, by exhaustive enumeration, the permutations
/// of `{1,...,n+1}` with `k` rises in which the small symbols appear in the
/// order `pi(F)`. Capped at [`PERMUTATION_ORACLE_MAX_LEVEL`].
pub fn dim_oracle_permutations(query: &DimQuery) -> Result<BigUint> {
    let level = query.target.level();
    if level > PERMUTATION_ORACLE_MAX_LEVEL {
        return Err(Error::OracleTooLarge {
            max: PERMUTATION_ORACLE_MAX_LEVEL,
            got: level,
        });
    }
    let pattern: Vec<u8> = query.pattern().entries().iter().map(|&v| v as u8).collect();
    let k = query.target.column() as usize;
    let small_max = pattern.len() as u8;
    let mut w: Vec<u8> = (1..=level as u8 + 1).collect();
    let mut count: u64 = 0;
    loop {
        let mut rises = 0usize;
        let mut matched = 0usize;
        let mut ok = true;
        for i in 0..w.len() {
            if i + 1 < w.len() && w[i] < w[i + 1] {
                rises += 1;
            }
            if w[i] <= small_max {
                if pattern[matched] != w[i] {
                    ok = false;
                    // No early break: the rise count scan must finish; the
                    // pattern scan is abandoned via the flag.
                }
                if ok {
                    matched += 1;
                }
            }
        }
        if ok && rises == k {
            count += 1;
        }
        if !next_permutation(&mut w) {
            break;
        }
    }
    Ok(BigUint::from(count))
}

/// Both brute-force answers for one query; the permutation side is absent
/// above its level cap.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub permutation: Option<BigUint>,
    pub graph: BigUint,
}

impl OracleReport {
    pub fn agree(&self) -> bool {
        self.permutation.as_ref().is_none_or(|p| *p == self.graph)
    }
}

pub fn dim_bruteforce(query: &DimQuery) -> OracleReport {
    let permutation = dim_oracle_permutations(query).ok();
    OracleReport {
        permutation,
        graph: dim_oracle_graph(query),
    }
}

/// One schedule point of a ratio table. `ratio` and `deviation` are absent
/// when the denominator dimension vanishes (a flagged row).
#[derive(Debug, Clone)]
pub struct RatioRow {
    pub target: Vertex,
    pub dim_a: BigUint,
    pub dim_b: BigUint,
    pub ratio: Option<BigRational>,
    pub deviation: Option<BigRational>,
}

/// Exact ratios `dim(F,(n,k)) / dim(F',(n,k))` over a schedule of targets,
/// with the distance `|ratio - 1|` alongside.
pub fn ratio_table(
    cylinder_a: &Cylinder,
    cylinder_b: &Cylinder,
    schedule: &[Vertex],
) -> Result<Vec<RatioRow>> {
    if cylinder_a.len() != cylinder_b.len() {
        return Err(Error::RatioLengthMismatch(
            cylinder_a.len(),
            cylinder_b.len(),
        ));
    }
    let from_a = cylinder_a.terminal();
    let from_b = cylinder_b.terminal();
    Ok(schedule
        .iter()
        .map(|&target| {
            let dim_a = count_paths_between(from_a, target);
            let dim_b = count_paths_between(from_b, target);
            let ratio = (!dim_b.is_zero()).then(|| {
                BigRational::new(dim_a.clone().into(), dim_b.clone().into())
            });
            let deviation = ratio
                .as_ref()
                .map(|r| (r - BigRational::one()).abs());
            RatioRow {
                target,
                dim_a,
                dim_b,
                ratio,
                deviation,
            }
        })
        .collect())
}

/// The diagonal schedule `(n, floor(n/2))` for a list of levels.
pub fn diagonal_schedule(levels: &[u32]) -> Vec<Vertex> {
    levels
        .iter()
        .map(|&n| Vertex::new(n, n / 2).expect("n/2 <= n"))
        .collect()
}
