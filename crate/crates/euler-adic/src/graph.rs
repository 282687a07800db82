//! The Euler graph: a Bratteli diagram with `n+1` vertices `(n,k)` at level
//! `n`, where `(n,k)` is joined to `(n+1,k)` by a bundle of `k+1` parallel
//! "left turn" edges and to `(n+1,k+1)` by `n-k+1` parallel "right turn"
//! edges. The number of root paths into `(n,k)` is the Eulerian number
//! `A(n,k)`.
//!
//! The reverse orientation keeps the vertices and swaps the two bundle
//! sizes. Cylinders are finite root paths; they double as the cylinder sets
//! of the infinite path space.
//!
//! Edges into a common vertex are totally ordered (minimal = leftmost in the
//! planar drawing): the right-turn bundle from `(n-1,k-1)` comes first, then
//! the left-turn bundle from `(n-1,k)`, each in parallel-index order. The
//! adic successor map in [`crate::adic`] is defined from this order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A vertex `(n,k)` of the Euler graph, `0 <= k <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    level: u32,
    column: u32,
}

impl Vertex {
    pub const ROOT: Vertex = Vertex { level: 0, column: 0 };

    pub fn new(level: u32, column: u32) -> Result<Self> {
        if column > level {
            return Err(Error::InvalidVertex { level, column });
        }
        Ok(Vertex { level, column })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn column(&self) -> u32 {
        self.column
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.column)
    }
}

/// Left turns keep the column, right turns increment it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    fn label(self) -> &'static str {
        match self {
            Turn::Left => "L",
            Turn::Right => "R",
        }
    }
}

/// Orientation of the diagram: `Reverse` swaps the two bundle sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    #[default]
    Standard,
    Reverse,
}

/// Number of parallel edges from `source` in the given turn direction.
pub fn bundle_size(source: Vertex, turn: Turn, orientation: Orientation) -> u32 {
    let (n, k) = (source.level, source.column);
    match (orientation, turn) {
        (Orientation::Standard, Turn::Left) | (Orientation::Reverse, Turn::Right) => k + 1,
        (Orientation::Standard, Turn::Right) | (Orientation::Reverse, Turn::Left) => n - k + 1,
    }
}

/// One edge of the diagram: a source vertex, a turn direction, and a 1-based
/// parallel index within its bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    source: Vertex,
    turn: Turn,
    index: u32,
}

impl Edge {
    pub fn new(source: Vertex, turn: Turn, index: u32, orientation: Orientation) -> Result<Self> {
        let bundle = bundle_size(source, turn, orientation);
        if index == 0 || index > bundle {
            return Err(Error::EdgeIndexOutOfRange {
                level: source.level,
                column: source.column,
                turn: turn.label(),
                index,
                bundle,
            });
        }
        Ok(Edge { source, turn, index })
    }

    /// Standard-orientation edge.
    pub fn standard(source: Vertex, turn: Turn, index: u32) -> Result<Self> {
        Edge::new(source, turn, index, Orientation::Standard)
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn turn(&self) -> Turn {
        self.turn
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn target(&self) -> Vertex {
        let step = match self.turn {
            Turn::Left => 0,
            Turn::Right => 1,
        };
        Vertex {
            level: self.source.level + 1,
            column: self.source.column + step,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}@{}", self.turn.label(), self.index, self.source)
    }
}

/// All `n+2` edges leaving `v`: the left bundle, then the right bundle, each
/// in parallel-index order.
pub fn outgoing_edges(v: Vertex, orientation: Orientation) -> Vec<Edge> {
    let mut edges = Vec::with_capacity(v.level as usize + 2);
    for turn in [Turn::Left, Turn::Right] {
        for index in 1..=bundle_size(v, turn, orientation) {
            edges.push(Edge {
                source: v,
                turn,
                index,
            });
        }
    }
    edges
}

/// All edges into `v` in the total edge order: the right-turn bundle from
/// `(n-1,k-1)` first, then the left-turn bundle from `(n-1,k)`, each by
/// ascending parallel index. Empty at the root.
pub fn incoming_edges(v: Vertex, orientation: Orientation) -> Vec<Edge> {
    let mut edges = Vec::new();
    if v.level == 0 {
        return edges;
    }
    let (n, k) = (v.level, v.column);
    if k >= 1 {
        let parent = Vertex {
            level: n - 1,
            column: k - 1,
        };
        for index in 1..=bundle_size(parent, Turn::Right, orientation) {
            edges.push(Edge {
                source: parent,
                turn: Turn::Right,
                index,
            });
        }
    }
    if k < n {
        let parent = Vertex {
            level: n - 1,
            column: k,
        };
        for index in 1..=bundle_size(parent, Turn::Left, orientation) {
            edges.push(Edge {
                source: parent,
                turn: Turn::Left,
                index,
            });
        }
    }
    edges
}

/// Total number of edges into `v`.
pub fn incoming_count(v: Vertex, orientation: Orientation) -> u32 {
    if v.level == 0 {
        return 0;
    }
    let (n, k) = (v.level, v.column);
    let mut count = 0;
    if k >= 1 {
        let parent = Vertex {
            level: n - 1,
            column: k - 1,
        };
        count += bundle_size(parent, Turn::Right, orientation);
    }
    if k < n {
        let parent = Vertex {
            level: n - 1,
            column: k,
        };
        count += bundle_size(parent, Turn::Left, orientation);
    }
    count
}

/// 0-based position of `edge` in the incoming order at its target.
pub fn incoming_rank(edge: Edge, orientation: Orientation) -> u32 {
    let target = edge.target();
    match edge.turn {
        Turn::Right => edge.index - 1,
        Turn::Left => {
            let right_bundle = if target.column >= 1 {
                let parent = Vertex {
                    level: target.level - 1,
                    column: target.column - 1,
                };
                bundle_size(parent, Turn::Right, orientation)
            } else {
                0
            };
            right_bundle + edge.index - 1
        }
    }
}

/// Multiplicity-weighted count of monotone paths from `from` to `to`;
/// 0 when no route exists.
pub fn count_paths_between_in(orientation: Orientation, from: Vertex, to: Vertex) -> BigUint {
    if to.level < from.level {
        return BigUint::zero();
    }
    if to.level == from.level {
        return if from == to {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    // One DP row per level; columns restricted to the reachable cone.
    let mut row = vec![BigUint::zero(); to.level as usize + 1];
    row[from.column as usize] = BigUint::one();
    for n in from.level..to.level {
        let mut next = vec![BigUint::zero(); to.level as usize + 1];
        for k in from.column..=n.min(from.column + (n - from.level)) {
            let value = &row[k as usize];
            if value.is_zero() {
                continue;
            }
            let v = Vertex { level: n, column: k };
            next[k as usize] += value * bundle_size(v, Turn::Left, orientation);
            next[k as usize + 1] += value * bundle_size(v, Turn::Right, orientation);
        }
        row = next;
    }
    row[to.column as usize].clone()
}

/// Standard-orientation path count.
pub fn count_paths_between(from: Vertex, to: Vertex) -> BigUint {
    count_paths_between_in(Orientation::Standard, from, to)
}

/// Number of root paths into `v`, computed by the multiplicity-weighted DP.
/// Equals `eulerian(n,k)` in the standard orientation.
pub fn dim_vertex_in(orientation: Orientation, v: Vertex) -> BigUint {
    count_paths_between_in(orientation, Vertex::ROOT, v)
}

pub fn dim_vertex(v: Vertex) -> BigUint {
    dim_vertex_in(Orientation::Standard, v)
}

/// A finite root path, doubling as the cylinder set of infinite paths that
/// extend it. Always anchored at `(0,0)` and valid for the standard
/// orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Cylinder {
    edges: Vec<Edge>,
}

impl Cylinder {
    pub fn empty() -> Self {
        Cylinder::default()
    }

    pub fn from_edges(edges: Vec<Edge>) -> Result<Self> {
        let mut cylinder = Cylinder::empty();
        for edge in edges {
            cylinder.push_edge(edge)?;
        }
        Ok(cylinder)
    }

    /// Builds a cylinder from `(turn, parallel index)` pairs read from the root.
    pub fn from_turns(turns: &[(Turn, u32)]) -> Result<Self> {
        let mut cylinder = Cylinder::empty();
        for &(turn, index) in turns {
            cylinder.push(turn, index)?;
        }
        Ok(cylinder)
    }

    /// Appends an edge leaving the current terminal vertex.
    pub fn push(&mut self, turn: Turn, index: u32) -> Result<()> {
        let edge = Edge::standard(self.terminal(), turn, index)?;
        self.edges.push(edge);
        Ok(())
    }

    pub fn push_edge(&mut self, edge: Edge) -> Result<()> {
        let terminal = self.terminal();
        if edge.source() != terminal {
            return Err(Error::BrokenChain {
                level: terminal.level,
                column: terminal.column,
                found_level: edge.source().level,
                found_column: edge.source().column,
            });
        }
        // Re-validate the index against the standard bundle size.
        let edge = Edge::standard(edge.source(), edge.turn(), edge.index())?;
        self.edges.push(edge);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Terminal vertex `(n0, k0)`; `k0` is the number of right turns.
    pub fn terminal(&self) -> Vertex {
        self.edges.last().map_or(Vertex::ROOT, Edge::target)
    }

    /// The first `len` edges as a new cylinder.
    pub fn truncated(&self, len: usize) -> Cylinder {
        Cylinder {
            edges: self.edges[..len.min(self.edges.len())].to_vec(),
        }
    }
}

impl fmt::Display for Cylinder {
    /// Canonical text form: comma-separated `L<i>` / `R<i>` tokens, one per
    /// edge from the root; the empty cylinder prints as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for edge in &self.edges {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}{}", edge.turn().label(), edge.index())?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Cylinder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Cylinder::empty());
        }
        let mut cylinder = Cylinder::empty();
        for token in s.split(',') {
            let token = token.trim();
            let turn = match token.chars().next() {
                Some('L') | Some('l') => Turn::Left,
                Some('R') | Some('r') => Turn::Right,
                _ => {
                    return Err(Error::ParseCylinder(format!(
                        "token {token:?} must start with L or R"
                    )))
                }
            };
            let index: u32 = token[1..]
                .parse()
                .map_err(|_| Error::ParseCylinder(format!("bad parallel index in {token:?}")))?;
            cylinder.push(turn, index)?;
        }
        Ok(cylinder)
    }
}

/// Every root path into `v`, each one a valid cylinder.
///
/// Refuses (reporting the count) when the vertex dimension exceeds `limit`.
pub fn enumerate_paths_to(v: Vertex, limit: u64) -> Result<Vec<Cylinder>> {
    let count = dim_vertex(v);
    if count > BigUint::from(limit) {
        return Err(Error::TooManyPaths {
            level: v.level,
            column: v.column,
            count,
            limit,
        });
    }
    let mut paths = Vec::new();
    let mut stack = Vec::new();
    collect_paths(v, &mut stack, &mut paths);
    Ok(paths)
}

fn collect_paths(v: Vertex, suffix: &mut Vec<Edge>, out: &mut Vec<Cylinder>) {
    if v.level == 0 {
        let edges = suffix.iter().rev().copied().collect();
        out.push(Cylinder { edges });
        return;
    }
    for edge in incoming_edges(v, Orientation::Standard) {
        suffix.push(edge);
        collect_paths(edge.source(), suffix, out);
        suffix.pop();
    }
}
