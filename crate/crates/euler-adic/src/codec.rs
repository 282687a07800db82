//! The bijection between root cylinders of length `n` and permutations of
//! `{1,...,n+1}` with `k` rises, plus the cluster decomposition used by the
//! dimension counts.
//!
//! Growing a cylinder by one edge inserts the next symbol `m+1` into the
//! current permutation. Inserting the running maximum into a gap changes
//! exactly one statistic by one: the front gap and every rise gap add a
//! fall, the back gap and every fall gap add a rise. A left turn down the
//! `i`'th parallel edge therefore inserts into the `i`'th fall-adding gap
//! (there are `k+1` of them, the left bundle size), a right turn into the
//! `i`'th rise-adding gap (`n-k+1` of them), scanning gaps left to right.
//! The base cases are the single-edge cylinders: left gives `21`, right
//! gives `12`. Decoding strips the largest symbol and records which
//! statistic it had added and at which rank.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::combinatorics::count_rises;
use crate::error::{Error, Result};
use crate::graph::{Cylinder, Edge, Turn, Vertex};

/// A sequence of pairwise-distinct positive symbols.
///
/// Most of the codec works with *standard* permutations (rearrangements of
/// `1..=m`); the tail `t(sigma)` left after deleting the small symbols is a
/// permutation of a shifted window, so arbitrary distinct entries are
/// allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() || entries.contains(&0) {
            return Err(Error::InvalidSequence);
        }
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidSequence);
        }
        Ok(Permutation { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether the entries are a rearrangement of `1..=m`.
    pub fn is_standard(&self) -> bool {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        sorted.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    pub fn rises(&self) -> usize {
        count_rises(&self.entries)
    }

    pub fn falls(&self) -> usize {
        self.entries.len() - 1 - self.rises()
    }

    fn ensure_standard(&self) -> Result<()> {
        if self.is_standard() {
            Ok(())
        } else {
            Err(Error::NotStandardPermutation(self.len()))
        }
    }
}

impl fmt::Display for Permutation {
    /// One-line form: bare digits up to length 9, comma-separated beyond.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.len() <= 9 && self.entries.iter().all(|&v| v <= 9) {
            for v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.entries.iter().join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::ParsePermutation("empty input".into()));
        }
        let entries: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::ParsePermutation(format!("bad entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .ok_or_else(|| Error::ParsePermutation(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(entries)
    }
}

/// Whether inserting a new maximum into gap `g` of `seq` (gap 0 is the
/// front, gap `len` the back) adds a fall; otherwise it adds a rise.
fn gap_adds_fall(seq: &[u32], g: usize) -> bool {
    if g == 0 {
        true
    } else if g == seq.len() {
        false
    } else {
        seq[g - 1] < seq[g]
    }
}

/// The permutation of `{1,...,n0+1}` assigned to a root cylinder of length
/// `n0`; its rise count equals the terminal column.
pub fn path_to_perm(cylinder: &Cylinder) -> Permutation {
    let mut seq = vec![1u32];
    for edge in cylinder.edges() {
        let want_fall = edge.turn() == Turn::Left;
        let mut remaining = edge.index();
        let mut gap = 0;
        for g in 0..=seq.len() {
            if gap_adds_fall(&seq, g) == want_fall {
                remaining -= 1;
                if remaining == 0 {
                    gap = g;
                    break;
                }
            }
        }
        debug_assert_eq!(remaining, 0, "parallel index within bundle");
        seq.insert(gap, seq.len() as u32 + 1);
    }
    Permutation { entries: seq }
}

/// Inverse of [`path_to_perm`]: the unique cylinder whose permutation is
/// `perm`. Requires a standard permutation; length 1 maps to the empty
/// cylinder.
pub fn perm_to_path(perm: &Permutation) -> Result<Cylinder> {
    perm.ensure_standard()?;
    let mut seq = perm.entries.clone();
    let mut reversed = Vec::with_capacity(seq.len() - 1);
    for symbol in (2..=seq.len() as u32).rev() {
        let pos = seq.iter().position(|&v| v == symbol).expect("standard");
        seq.remove(pos);
        // With the maximum gone, gap `pos` of the reduced word is where it
        // sat; its type says which statistic the insertion had added.
        let turn = if gap_adds_fall(&seq, pos) {
            Turn::Left
        } else {
            Turn::Right
        };
        let want_fall = turn == Turn::Left;
        let index = (0..=pos)
            .filter(|&g| gap_adds_fall(&seq, g) == want_fall)
            .count() as u32;
        let source = Vertex::new(seq.len() as u32 - 1, count_rises(&seq) as u32)?;
        reversed.push(Edge::standard(source, turn, index)?);
    }
    reversed.reverse();
    Cylinder::from_edges(reversed)
}

/// Deletes the largest symbol; equals dropping the cylinder's last edge.
pub fn project(perm: &Permutation) -> Result<Permutation> {
    perm.ensure_standard()?;
    if perm.len() < 2 {
        return Err(Error::InvalidSequence);
    }
    let top = perm.len() as u32;
    let entries = perm
        .entries
        .iter()
        .copied()
        .filter(|&v| v != top)
        .collect();
    Ok(Permutation { entries })
}

/// An ordered partition of a permutation pattern into consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedPartition {
    blocks: Vec<Vec<u32>>,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(Vec::is_empty) {
            return Err(Error::InvalidPartition);
        }
        let flat: Vec<u32> = blocks.iter().flatten().copied().collect();
        Permutation::new(flat).map_err(|_| Error::InvalidPartition)?;
        Ok(OrderedPartition { blocks })
    }

    /// `m`, the number of blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Concatenation of the blocks.
    pub fn pattern(&self) -> Permutation {
        Permutation {
            entries: self.blocks.iter().flatten().copied().collect(),
        }
    }

    /// `r(M)`: total number of rises inside the blocks.
    pub fn internal_rises(&self) -> usize {
        self.blocks.iter().map(|b| count_rises(b)).sum()
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered = self
            .blocks
            .iter()
            .map(|b| b.iter().join(""))
            .join("|");
        write!(f, "{rendered}")
    }
}

/// The cluster decomposition of `sigma` around the small symbols
/// `{1,...,small+1}`: maximal consecutive runs of small symbols become the
/// ordered partition `M`, and the remaining symbols form the tail
/// `t(sigma)`.
///
/// `sigma` must be a standard permutation strictly longer than the small
/// set (the tail must be non-empty).
pub fn clusters(sigma: &Permutation, small: u32) -> Result<(OrderedPartition, Permutation)> {
    sigma.ensure_standard()?;
    let cutoff = small + 1;
    if sigma.len() as u32 <= cutoff {
        return Err(Error::EmptyTail { small: cutoff });
    }
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut tail = Vec::new();
    let mut run: Vec<u32> = Vec::new();
    for &v in &sigma.entries {
        if v <= cutoff {
            run.push(v);
        } else {
            if !run.is_empty() {
                blocks.push(std::mem::take(&mut run));
            }
            tail.push(v);
        }
    }
    if !run.is_empty() {
        blocks.push(run);
    }
    Ok((
        OrderedPartition { blocks },
        Permutation { entries: tail },
    ))
}

/// All ordered partitions of `pattern` into `m` consecutive non-empty
/// blocks; there are `C(|pattern|-1, m-1)` of them.
pub fn ordered_partitions(pattern: &Permutation, m: usize) -> Vec<OrderedPartition> {
    let len = pattern.len();
    if m == 0 || m > len {
        return Vec::new();
    }
    (1..len)
        .combinations(m - 1)
        .map(|cuts| {
            let mut blocks = Vec::with_capacity(m);
            let mut prev = 0;
            for cut in cuts.into_iter().chain(std::iter::once(len)) {
                blocks.push(pattern.entries[prev..cut].to_vec());
                prev = cut;
            }
            OrderedPartition { blocks }
        })
        .collect()
}
