//! The Vershik order on paths and the adic successor map, realized on
//! finite root paths into a fixed terminal vertex.
//!
//! Two paths into the same vertex are compared at the highest level where
//! they disagree, using the incoming-edge order of [`crate::graph`] (right
//! bundle before left bundle, parallel indices ascending). The successor of
//! a path advances the lowest advanceable edge and fills everything below
//! with the minimal path into the new intermediate vertex; iterating it
//! from the minimal path walks the whole fiber over a vertex in strictly
//! increasing order.
//!
//! `x_max(k)` is the infinite path that runs to `(k,k)` and then follows
//! the rightmost (maximal) left edge forever; `x_min(k)` mirrors it: down
//! the leftmost edges to `(k,0)`, then the first right edge at every level,
//! so its column at level `n` is eventually `n-k`. Only truncations to a
//! finite depth are represented here.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{
    incoming_count, incoming_edges, incoming_rank, Cylinder, Edge, Orientation, Turn, Vertex,
};

/// Compares two root paths into the same terminal vertex.
///
/// The order reads edges from the last disagreement downward: `x < y` iff at
/// the highest level where they differ, `x`'s edge precedes `y`'s in the
/// incoming order at their common target.
pub fn compare(x: &Cylinder, y: &Cylinder) -> Result<Ordering> {
    if x.terminal() != y.terminal() {
        return Err(Error::Incomparable);
    }
    for (ex, ey) in x.edges().iter().zip(y.edges()).rev() {
        if ex != ey {
            let rx = incoming_rank(*ex, Orientation::Standard);
            let ry = incoming_rank(*ey, Orientation::Standard);
            return Ok(rx.cmp(&ry));
        }
    }
    Ok(Ordering::Equal)
}

/// The path right after `x` among paths into the same terminal vertex, or
/// `None` when `x` is maximal.
pub fn successor(x: &Cylinder) -> Option<Cylinder> {
    for (level, edge) in x.edges().iter().enumerate() {
        let target = edge.target();
        let rank = incoming_rank(*edge, Orientation::Standard);
        if rank + 1 < incoming_count(target, Orientation::Standard) {
            let advanced = incoming_edges(target, Orientation::Standard)[rank as usize + 1];
            let mut path = minimal_path_into(advanced.source());
            path.push_edge(advanced).expect("advanced edge chains");
            for suffix in &x.edges()[level + 1..] {
                path.push_edge(*suffix).expect("suffix edges chain");
            }
            return Some(path);
        }
    }
    None
}

/// Mirror of [`successor`]: the path right before `x`, or `None` when `x`
/// is minimal.
pub fn predecessor(x: &Cylinder) -> Option<Cylinder> {
    for (level, edge) in x.edges().iter().enumerate() {
        let target = edge.target();
        let rank = incoming_rank(*edge, Orientation::Standard);
        if rank > 0 {
            let retreated = incoming_edges(target, Orientation::Standard)[rank as usize - 1];
            let mut path = maximal_path_into(retreated.source());
            path.push_edge(retreated).expect("retreated edge chains");
            for suffix in &x.edges()[level + 1..] {
                path.push_edge(*suffix).expect("suffix edges chain");
            }
            return Some(path);
        }
    }
    None
}

fn extreme_path_into(v: Vertex, pick: impl Fn(&[Edge]) -> Edge) -> Cylinder {
    let mut down = Vec::with_capacity(v.level() as usize);
    let mut current = v;
    while current.level() > 0 {
        let edge = pick(&incoming_edges(current, Orientation::Standard));
        down.push(edge);
        current = edge.source();
    }
    down.reverse();
    Cylinder::from_edges(down).expect("extreme edges chain")
}

/// The first element of the total order on paths into `v`: every edge is
/// minimal in the incoming order at its target.
pub fn minimal_path_into(v: Vertex) -> Cylinder {
    extreme_path_into(v, |edges| edges[0])
}

/// The last element: every edge is maximal.
pub fn maximal_path_into(v: Vertex) -> Cylinder {
    extreme_path_into(v, |edges| *edges.last().expect("level >= 1 has incoming"))
}

/// Depth-`depth` truncation of the maximal infinite path `x_max(k)`: the
/// unique path to `(k,k)`, then the highest-index left edge at each level.
pub fn x_max(k: u32, depth: u32) -> Result<Cylinder> {
    if depth < k {
        return Err(Error::DepthBelowColumn { depth, column: k });
    }
    let mut path = Cylinder::empty();
    for _ in 0..k {
        path.push(Turn::Right, 1)?;
    }
    for _ in k..depth {
        path.push(Turn::Left, k + 1)?;
    }
    Ok(path)
}

/// Depth-`depth` truncation of the minimal infinite path `x_min(k)`: the
/// unique path to `(k,0)`, then the first right edge at each level. Its
/// terminal vertex is `(depth, depth-k)`.
pub fn x_min(k: u32, depth: u32) -> Result<Cylinder> {
    if depth < k {
        return Err(Error::DepthBelowColumn { depth, column: k });
    }
    let mut path = Cylinder::empty();
    for _ in 0..k {
        path.push(Turn::Left, 1)?;
    }
    for _ in k..depth {
        path.push(Turn::Right, 1)?;
    }
    Ok(path)
}
