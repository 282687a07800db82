//! Exact arithmetic for the Euler adic system.
//!
//! The Euler graph is the Bratteli diagram underlying the Eulerian numbers:
//! vertex `(n,k)` is joined to `(n+1,k)` by `k+1` parallel edges and to
//! `(n+1,k+1)` by `n-k+1`, so the root paths into `(n,k)` are counted by
//! `A(n,k)`, the permutations of `{1,...,n+1}` with `k` rises. This crate
//! implements that combinatorics exactly, with big integers and big
//! rationals throughout:
//!
//! * [`combinatorics`] — Eulerian numbers, binomials, factorials, rise/fall
//!   statistics;
//! * [`graph`] — the diagram (both orientations), cylinders, and
//!   multiplicity-weighted path counting;
//! * [`adic`] — the edge order, the Vershik successor map, and the
//!   distinguished extreme paths;
//! * [`codec`] — the bijection between root cylinders and permutations, and
//!   the cluster decomposition of a permutation around a small-symbol
//!   pattern;
//! * [`dimension`] — closed-form cylinder dimension counts
//!   `dim(F,(n,k))`, two independent brute-force oracles, and exact ratio
//!   tables exhibiting `dim(F,(n,k))/dim(F',(n,k)) -> 1`;
//! * [`measure`] — exact-rational edge weightings (the symmetric measure,
//!   the finite-rank family on the two leftmost columns, custom weights),
//!   invariance/consistency checks, seeded samplers, and two-loop
//!   reinforced walks.

pub mod adic;
pub mod codec;
pub mod combinatorics;
pub mod dimension;
pub mod graph;
pub mod measure;

mod error;

pub use error::{Error, Result};

pub use num_bigint::BigUint;
pub use num_rational::BigRational;
