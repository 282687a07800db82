//! Exact-rational edge-weight measures on cylinder sets, invariance and
//! consistency checks, seeded samplers, and two-loop reinforced walks.
//!
//! An edge weighting assigns each edge a rational weight so that every
//! vertex's outgoing weights sum to exactly 1; the measure of a cylinder is
//! the product of its edge weights. Three families are built in:
//!
//! * the **symmetric** measure — weight `1/(n+2)` on every edge leaving
//!   level `n`, so every length-`n` cylinder weighs `1/(n+1)!`;
//! * the **finite-rank** family supported on the columns `{0,1}`: out of
//!   `(n,0)` the single left edge carries `1 - (n+1) alpha_{n+1}` and each
//!   of the `n+1` right edges carries `alpha_{n+1}`; out of `(n,1)` the two
//!   left edges carry `1/2` each and right edges carry 0. The measure is
//!   adic-invariant exactly when `alpha_{n+1} = alpha_n / (2 - 2 n alpha_n)`,
//!   e.g. `alpha_n = 1/(2(n+1))`;
//! * **custom** weightings validated at construction.
//!
//! All measure arithmetic is exact; floating point appears only in the
//! chi-square statistics.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::codec::{path_to_perm, Permutation};
use crate::error::{Error, Result};
use crate::graph::{bundle_size, outgoing_edges, Cylinder, Edge, Orientation, Turn, Vertex};

fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The `alpha_n` weight sequence of a finite-rank measure.
///
/// `alphas[i]` stores `alpha_{i+1}`; construction enforces
/// `0 < n alpha_n < 1` so all edge weights are genuine probabilities. The
/// invariance recursion itself is *not* enforced here — deliberately broken
/// sequences are how [`check_invariance`] failures are exercised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaSequence {
    alphas: Vec<BigRational>,
}

impl AlphaSequence {
    pub fn from_alphas(alphas: Vec<BigRational>) -> Result<Self> {
        for (i, alpha) in alphas.iter().enumerate() {
            let index = i + 1;
            let scaled = alpha * BigRational::from(BigInt::from(index as i64));
            if scaled <= BigRational::zero() || scaled >= BigRational::one() {
                return Err(Error::AlphaOutOfRange {
                    index,
                    value: alpha.to_string(),
                });
            }
        }
        Ok(AlphaSequence { alphas })
    }

    /// The closed-form invariant sequence `alpha_n = 1/(2(n+1))`.
    pub fn harmonic(levels: usize) -> Self {
        let alphas = (1..=levels as i64).map(|n| ratio(1, 2 * (n + 1))).collect();
        AlphaSequence { alphas }
    }

    /// Generates `alpha_2, alpha_3, ...` from `alpha_1` by the invariance
    /// recursion `alpha_{n+1} = alpha_n / (2 - 2 n alpha_n)`.
    pub fn from_alpha1(alpha1: BigRational, levels: usize) -> Result<Self> {
        let mut alphas = vec![alpha1];
        for n in 1..levels as i64 {
            let prev = alphas.last().unwrap();
            let denom = BigRational::from(BigInt::from(2))
                - BigRational::from(BigInt::from(2 * n)) * prev;
            if denom <= BigRational::zero() {
                return Err(Error::AlphaOutOfRange {
                    index: n as usize + 1,
                    value: format!("recursion denominator {denom}"),
                });
            }
            alphas.push(prev / denom);
        }
        AlphaSequence::from_alphas(alphas)
    }

    pub fn levels(&self) -> usize {
        self.alphas.len()
    }

    /// `alpha_n`, 1-based.
    pub fn alpha(&self, n: usize) -> Result<&BigRational> {
        self.alphas.get(n - 1).ok_or(Error::AlphaDepth {
            have: self.alphas.len(),
            want: n,
        })
    }

    /// First index `n` with `alpha_{n+1} != alpha_n / (2 - 2 n alpha_n)`,
    /// or `None` when the recursion holds throughout.
    pub fn recursion_break(&self) -> Option<usize> {
        for n in 1..self.alphas.len() {
            let prev = &self.alphas[n - 1];
            let denom = BigRational::from(BigInt::from(2))
                - BigRational::from(BigInt::from(2 * n as i64)) * prev;
            if denom.is_zero() || self.alphas[n] != prev / denom {
                return Some(n);
            }
        }
        None
    }
}

/// A fully explicit weighting, validated at construction: every weight lies
/// in `[0,1]` and every vertex with level below `depth` has outgoing
/// weights summing to exactly 1.
#[derive(Debug, Clone)]
pub struct EdgeWeighting {
    weights: HashMap<Edge, BigRational>,
    depth: u32,
    orientation: Orientation,
}

impl EdgeWeighting {
    pub fn new(
        depth: u32,
        orientation: Orientation,
        weight: impl Fn(Edge) -> BigRational,
    ) -> Result<Self> {
        let mut weights = HashMap::new();
        for level in 0..depth {
            for column in 0..=level {
                let v = Vertex::new(level, column).expect("column <= level");
                let mut sum = BigRational::zero();
                for edge in outgoing_edges(v, orientation) {
                    let w = weight(edge);
                    if w < BigRational::zero() || w > BigRational::one() {
                        return Err(Error::WeightOutOfRange(w.to_string()));
                    }
                    sum += &w;
                    weights.insert(edge, w);
                }
                if sum != BigRational::one() {
                    return Err(Error::WeightSum {
                        level,
                        column,
                        sum: sum.to_string(),
                    });
                }
            }
        }
        Ok(EdgeWeighting {
            weights,
            depth,
            orientation,
        })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }
}

/// A Borel measure on the path space, described by edge weights.
#[derive(Debug, Clone)]
pub enum MeasureSpec {
    Symmetric,
    FiniteRank(AlphaSequence),
    Custom(EdgeWeighting),
}

impl MeasureSpec {
    pub fn finite_rank_harmonic(levels: usize) -> Self {
        MeasureSpec::FiniteRank(AlphaSequence::harmonic(levels))
    }

    pub fn name(&self) -> &'static str {
        match self {
            MeasureSpec::Symmetric => "symmetric",
            MeasureSpec::FiniteRank(_) => "finite-rank",
            MeasureSpec::Custom(_) => "custom",
        }
    }

    pub fn orientation(&self) -> Orientation {
        match self {
            MeasureSpec::Custom(w) => w.orientation,
            _ => Orientation::Standard,
        }
    }

    /// Weight of a single edge.
    pub fn edge_weight(&self, edge: Edge) -> Result<BigRational> {
        match self {
            MeasureSpec::Symmetric => Ok(ratio(1, edge.source().level() as i64 + 2)),
            MeasureSpec::FiniteRank(alphas) => {
                let (n, k) = (edge.source().level(), edge.source().column());
                match (k, edge.turn()) {
                    (0, Turn::Right) => Ok(alphas.alpha(n as usize + 1)?.clone()),
                    (0, Turn::Left) => {
                        let a = alphas.alpha(n as usize + 1)?;
                        Ok(BigRational::one()
                            - BigRational::from(BigInt::from(n as i64 + 1)) * a)
                    }
                    (1, Turn::Left) => Ok(ratio(1, 2)),
                    // Right turns out of column 1, and everything beyond,
                    // carry no mass: the support is the {0,1} subgraph.
                    _ => Ok(BigRational::zero()),
                }
            }
            MeasureSpec::Custom(weighting) => weighting
                .weights
                .get(&edge)
                .cloned()
                .ok_or_else(|| Error::MissingWeight(edge.to_string(), weighting.depth)),
        }
    }

    /// Whether weights are defined for all edges down to `depth`.
    fn ensure_depth(&self, depth: u32) -> Result<()> {
        match self {
            MeasureSpec::Symmetric => Ok(()),
            MeasureSpec::FiniteRank(alphas) => {
                if alphas.levels() >= depth as usize {
                    Ok(())
                } else {
                    Err(Error::AlphaDepth {
                        have: alphas.levels(),
                        want: depth as usize,
                    })
                }
            }
            MeasureSpec::Custom(weighting) => {
                if weighting.depth >= depth {
                    Ok(())
                } else {
                    Err(Error::MissingWeight(
                        format!("(edges below level {depth})"),
                        weighting.depth,
                    ))
                }
            }
        }
    }

    // Skipping weight-0 edges keeps enumeration linear on the thin
    // finite-rank support; for custom weightings a 0-weight edge may sit
    // next to positive siblings into the same vertex, so nothing may be
    // skipped there.
    fn prunes_zero_edges(&self) -> bool {
        matches!(self, MeasureSpec::FiniteRank(_))
    }
}

/// Product of the edge weights along `cylinder`.
pub fn cylinder_measure(spec: &MeasureSpec, cylinder: &Cylinder) -> Result<BigRational> {
    let mut measure = BigRational::one();
    for edge in cylinder.edges() {
        measure *= spec.edge_weight(*edge)?;
    }
    Ok(measure)
}

/// Which property a [`CheckReport`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// All cylinders into a common vertex carry equal measure.
    Invariance,
    /// Each cylinder's measure equals the sum over its one-edge extensions.
    Consistency,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckKind::Invariance => write!(f, "invariance"),
            CheckKind::Consistency => write!(f, "consistency"),
        }
    }
}

/// A vertex at which a check failed, with the conflicting values.
#[derive(Debug, Clone)]
pub struct Violation {
    pub vertex: Vertex,
    pub measures: Vec<BigRational>,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub kind: CheckKind,
    pub spec_name: String,
    pub depth: u32,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "check": self.kind.to_string(),
            "spec": self.spec_name,
            "depth": self.depth,
            "status": if self.passed() { "pass" } else { "fail" },
            "violations": self.violations.iter().map(|v| {
                serde_json::json!({
                    "level": v.vertex.level(),
                    "column": v.vertex.column(),
                    "measures": v.measures.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            }).collect::<Vec<_>>(),
        })
    }
}

struct MeasureWalk<'a> {
    spec: &'a MeasureSpec,
    depth: u32,
    prune: bool,
}

impl MeasureWalk<'_> {
    // Depth-first over all (positive, when pruning) cylinders to `depth`,
    // calling `visit(terminal, measure)` at every intermediate cylinder;
    // returns the first error from `visit`.
    fn run(
        &self,
        visit: &mut impl FnMut(Vertex, &BigRational, u32) -> Result<()>,
    ) -> Result<()> {
        self.step(Vertex::ROOT, &BigRational::one(), visit)
    }

    fn step(
        &self,
        v: Vertex,
        measure: &BigRational,
        visit: &mut impl FnMut(Vertex, &BigRational, u32) -> Result<()>,
    ) -> Result<()> {
        visit(v, measure, v.level())?;
        if v.level() >= self.depth {
            return Ok(());
        }
        for edge in outgoing_edges(v, self.spec.orientation()) {
            let weight = self.spec.edge_weight(edge)?;
            if self.prune && weight.is_zero() {
                continue;
            }
            self.step(edge.target(), &(measure * weight), visit)?;
        }
        Ok(())
    }
}

/// Verifies that every vertex at each level `<= depth` sees equal measures
/// from all of its cylinders. Violating vertices are listed with the
/// distinct values observed.
pub fn check_invariance(spec: &MeasureSpec, depth: u32) -> Result<CheckReport> {
    spec.ensure_depth(depth)?;
    let mut seen: HashMap<Vertex, Vec<BigRational>> = HashMap::new();
    let walk = MeasureWalk {
        spec,
        depth,
        prune: spec.prunes_zero_edges(),
    };
    walk.run(&mut |vertex, measure, _| {
        let values = seen.entry(vertex).or_default();
        if !values.contains(measure) {
            values.push(measure.clone());
        }
        Ok(())
    })?;
    let mut violations: Vec<Violation> = seen
        .into_iter()
        .filter(|(_, values)| values.len() > 1)
        .map(|(vertex, measures)| Violation { vertex, measures })
        .collect();
    violations.sort_by_key(|v| (v.vertex.level(), v.vertex.column()));
    Ok(CheckReport {
        kind: CheckKind::Invariance,
        spec_name: spec.name().into(),
        depth,
        violations,
    })
}

/// Verifies Kolmogorov additivity: each cylinder of length `< depth` weighs
/// exactly the sum of its one-edge extensions (hence total mass 1 at every
/// level).
pub fn check_consistency(spec: &MeasureSpec, depth: u32) -> Result<CheckReport> {
    spec.ensure_depth(depth)?;
    let mut violations = Vec::new();
    let walk = MeasureWalk {
        spec,
        depth,
        prune: spec.prunes_zero_edges(),
    };
    walk.run(&mut |vertex, measure, level| {
        if level < depth {
            let mut extended = BigRational::zero();
            for edge in outgoing_edges(vertex, spec.orientation()) {
                extended += measure * spec.edge_weight(edge)?;
            }
            if extended != *measure {
                violations.push(Violation {
                    vertex,
                    measures: vec![measure.clone(), extended],
                });
            }
        }
        Ok(())
    })?;
    Ok(CheckReport {
        kind: CheckKind::Consistency,
        spec_name: spec.name().into(),
        depth,
        violations,
    })
}

/// Total measure of all length-`level` cylinders; 1 for any valid weighting.
pub fn level_mass(spec: &MeasureSpec, level: u32) -> Result<BigRational> {
    spec.ensure_depth(level)?;
    let mut mass = BigRational::zero();
    let walk = MeasureWalk {
        spec,
        depth: level,
        prune: spec.prunes_zero_edges(),
    };
    walk.run(&mut |_, measure, l| {
        if l == level {
            mass += measure;
        }
        Ok(())
    })?;
    Ok(mass)
}

/// A seeded random-path generator drawing edge by edge with the exact
/// weights of its measure spec. One sampler per task; derive seeds rather
/// than sharing an instance.
pub struct PathSampler {
    spec: MeasureSpec,
    rng: ChaCha8Rng,
}

impl PathSampler {
    pub fn new(spec: MeasureSpec, seed: u64) -> Self {
        PathSampler {
            spec,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn draw_edge(&mut self, v: Vertex) -> Result<Edge> {
        let edges = outgoing_edges(v, Orientation::Standard);
        let weights: Vec<BigRational> = edges
            .iter()
            .map(|&e| self.spec.edge_weight(e))
            .collect::<Result<_>>()?;
        // Put all weights over one denominator and draw an exact uniform
        // integer below it.
        let mut denom = BigUint::one();
        for w in &weights {
            denom = denom.lcm(&w.denom().to_biguint().expect("positive denominator"));
        }
        let scale = BigRational::from(BigInt::from(denom.clone()));
        let draw = self.rng.gen_biguint_below(&denom);
        let mut acc = BigUint::zero();
        for (edge, w) in edges.iter().zip(&weights) {
            acc += (w * &scale)
                .to_integer()
                .to_biguint()
                .expect("weights are non-negative");
            if draw < acc {
                return Ok(*edge);
            }
        }
        Ok(*edges.last().expect("out-degree is n+2 >= 2"))
    }

    /// A root path of the given length, drawn edge by edge.
    pub fn sample_path(&mut self, length: u32) -> Result<Cylinder> {
        let mut cylinder = Cylinder::empty();
        for _ in 0..length {
            let edge = self.draw_edge(cylinder.terminal())?;
            cylinder.push_edge(edge).expect("drawn edge chains");
        }
        Ok(cylinder)
    }

    /// A permutation of `{1,...,size}` via the path correspondence. Under
    /// the symmetric measure every permutation has probability `1/size!`.
    pub fn sample_permutation(&mut self, size: u32) -> Result<Permutation> {
        let path = self.sample_path(size.saturating_sub(1))?;
        Ok(path_to_perm(&path))
    }
}

/// One-shot draw with a fresh sampler.
pub fn sample_path(spec: &MeasureSpec, length: u32, seed: u64) -> Result<Cylinder> {
    PathSampler::new(spec.clone(), seed).sample_path(length)
}

pub fn sample_permutation(spec: &MeasureSpec, size: u32, seed: u64) -> Result<Permutation> {
    PathSampler::new(spec.clone(), seed).sample_permutation(size)
}

/// Chi-square goodness-of-fit against the uniform distribution.
#[derive(Debug, Clone, Copy)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub degrees_of_freedom: f64,
    pub p_value: f64,
}

impl ChiSquareTest {
    pub fn passes_at(&self, significance: f64) -> bool {
        self.p_value >= significance
    }
}

pub fn chi_square_uniform(observed: &[u64]) -> ChiSquareTest {
    let cells = observed.len();
    let total: u64 = observed.iter().sum();
    let expected = total as f64 / cells as f64;
    let statistic = observed
        .iter()
        .map(|&o| {
            let diff = o as f64 - expected;
            diff * diff / expected
        })
        .sum();
    let degrees_of_freedom = (cells - 1) as f64;
    let p_value = 1.0
        - ChiSquared::new(degrees_of_freedom)
            .expect("positive degrees of freedom")
            .cdf(statistic);
    ChiSquareTest {
        statistic,
        degrees_of_freedom,
        p_value,
    }
}

/// Draws `samples` permutations of `{1,...,size}` and tests the empirical
/// frequencies against uniformity. Returns the per-permutation counts in
/// lexicographic order together with the test.
pub fn permutation_frequency_test(
    spec: &MeasureSpec,
    size: u32,
    samples: u64,
    seed: u64,
) -> Result<(Vec<(Permutation, u64)>, ChiSquareTest)> {
    use itertools::Itertools;
    let mut counts: HashMap<Vec<u32>, u64> = (1..=size)
        .permutations(size as usize)
        .map(|p| (p, 0))
        .collect();
    let mut sampler = PathSampler::new(spec.clone(), seed);
    for _ in 0..samples {
        let perm = sampler.sample_permutation(size)?;
        *counts.get_mut(perm.entries()).expect("standard permutation") += 1;
    }
    let mut rows: Vec<(Vec<u32>, u64)> = counts.into_iter().collect();
    rows.sort();
    let observed: Vec<u64> = rows.iter().map(|(_, c)| *c).collect();
    let test = chi_square_uniform(&observed);
    let rows = rows
        .into_iter()
        .map(|(entries, count)| (Permutation::new(entries).expect("permutation"), count))
        .collect();
    Ok((rows, test))
}

/// Which reinforcement the two-loop walk exhibits.
///
/// A uniform edge choice on the standard graph makes a loop less likely
/// the more it has been followed (negative reinforcement); on the reverse
/// graph, more likely (positive reinforcement).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkMode {
    Negative,
    Positive,
}

impl WalkMode {
    fn orientation(self) -> Orientation {
        match self {
            WalkMode::Negative => Orientation::Standard,
            WalkMode::Positive => Orientation::Reverse,
        }
    }
}

/// Trajectory of a reinforced two-loop walk: the loop choices and the
/// column process `k_n` (times the right loop was taken after `n` steps).
#[derive(Debug, Clone)]
pub struct Walk {
    pub mode: WalkMode,
    pub seed: u64,
    pub choices: Vec<Turn>,
    pub columns: Vec<u32>,
}

impl Walk {
    pub fn steps(&self) -> usize {
        self.choices.len()
    }

    pub fn final_column(&self) -> u32 {
        *self.columns.last().unwrap_or(&0)
    }

    pub fn final_ratio(&self) -> f64 {
        if self.choices.is_empty() {
            return 0.0;
        }
        self.final_column() as f64 / self.steps() as f64
    }
}

/// Runs the walk for `steps` uniform edge choices on the graph of the given
/// mode. At `(n,k)` the right turn is taken with probability
/// `(n-k+1)/(n+2)` in negative mode and `(k+1)/(n+2)` in positive mode.
pub fn reinforced_walk(steps: u32, mode: WalkMode, seed: u64) -> Walk {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut choices = Vec::with_capacity(steps as usize);
    let mut columns = Vec::with_capacity(steps as usize);
    let mut vertex = Vertex::ROOT;
    for n in 0..steps {
        let left = bundle_size(vertex, Turn::Left, mode.orientation());
        let draw = rng.gen_range(0..n + 2);
        let turn = if draw < left { Turn::Left } else { Turn::Right };
        let column = vertex.column() + if turn == Turn::Right { 1 } else { 0 };
        vertex = Vertex::new(n + 1, column).expect("column <= level");
        choices.push(turn);
        columns.push(column);
    }
    Walk {
        mode,
        seed,
        choices,
        columns,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::factorial;
    use crate::graph::enumerate_paths_to;
    use std::str::FromStr;

    fn harmonic(levels: usize) -> MeasureSpec {
        MeasureSpec::finite_rank_harmonic(levels)
    }

    #[test]
    fn symmetric_cylinder_measures() {
        let spec = MeasureSpec::Symmetric;
        assert_eq!(
            cylinder_measure(&spec, &Cylinder::empty()).unwrap(),
            BigRational::one()
        );
        let c = Cylinder::from_str("L1,R2,L2").unwrap();
        assert_eq!(cylinder_measure(&spec, &c).unwrap(), ratio(1, 24));
        // Every cylinder of length n weighs 1/(n+1)!.
        for n in 0..=5u32 {
            for k in 0..=n {
                let v = Vertex::new(n, k).unwrap();
                for path in enumerate_paths_to(v, 1_000_000).unwrap() {
                    let m = cylinder_measure(&spec, &path).unwrap();
                    let expected = BigRational::new(
                        BigInt::one(),
                        BigInt::from(factorial(n as u64 + 1)),
                    );
                    assert_eq!(m, expected);
                }
            }
        }
    }

    #[test]
    fn harmonic_alphas_satisfy_the_recursion() {
        let alphas = AlphaSequence::harmonic(51);
        assert_eq!(alphas.recursion_break(), None);
        for n in 1..=51usize {
            assert_eq!(*alphas.alpha(n).unwrap(), ratio(1, 2 * (n as i64 + 1)));
        }
        let generated = AlphaSequence::from_alpha1(ratio(1, 4), 51).unwrap();
        assert_eq!(generated, alphas);
    }

    #[test]
    fn finite_rank_invariance_witness_paths() {
        // Both routes into (2,1) weigh (1 - alpha_1) alpha_2 = alpha_1 / 2 = 1/8.
        let spec = harmonic(4);
        let lr = Cylinder::from_str("L1,R1").unwrap();
        let rl = Cylinder::from_str("R1,L1").unwrap();
        let m_lr = cylinder_measure(&spec, &lr).unwrap();
        let m_rl = cylinder_measure(&spec, &rl).unwrap();
        assert_eq!(m_lr, m_rl);
        assert_eq!(m_lr, ratio(1, 8));
    }

    #[test]
    fn invariance_checks() {
        let report = check_invariance(&MeasureSpec::Symmetric, 6).unwrap();
        assert!(report.passed());

        let report = check_invariance(&harmonic(10), 10).unwrap();
        assert!(report.passed(), "violations: {:?}", report.violations);
    }

    #[test]
    fn perturbed_alpha_fails_at_level_two() {
        let alphas =
            AlphaSequence::from_alphas(vec![ratio(1, 4), ratio(1, 5), ratio(1, 8)]).unwrap();
        let report = check_invariance(&MeasureSpec::FiniteRank(alphas), 3).unwrap();
        assert!(!report.passed());
        let first = &report.violations[0];
        assert_eq!(first.vertex, Vertex::new(2, 1).unwrap());
        assert_eq!(first.measures.len(), 2);
        let json = report.to_json();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["violations"][0]["level"], 2);
        assert_eq!(json["violations"][0]["column"], 1);
    }

    #[test]
    fn consistency_checks() {
        assert!(check_consistency(&MeasureSpec::Symmetric, 6).unwrap().passed());
        assert!(check_consistency(&harmonic(10), 10).unwrap().passed());
        for level in 0..=6 {
            assert_eq!(
                level_mass(&MeasureSpec::Symmetric, level).unwrap(),
                BigRational::one()
            );
        }
        for level in 0..=10 {
            assert_eq!(level_mass(&harmonic(10), level).unwrap(), BigRational::one());
        }
    }

    #[test]
    fn custom_weighting_must_sum_to_one() {
        // Uniform weights reproduce the symmetric measure...
        let ok = EdgeWeighting::new(4, Orientation::Standard, |e| {
            ratio(1, e.source().level() as i64 + 2)
        });
        assert!(ok.is_ok());
        let spec = MeasureSpec::Custom(ok.unwrap());
        assert!(check_invariance(&spec, 4).unwrap().passed());
        assert!(check_consistency(&spec, 4).unwrap().passed());

        // ...but a deficit at the root is rejected outright.
        let bad = EdgeWeighting::new(2, Orientation::Standard, |e| {
            if e.source() == Vertex::ROOT {
                ratio(99, 200)
            } else {
                ratio(1, e.source().level() as i64 + 2)
            }
        });
        assert!(matches!(bad, Err(Error::WeightSum { level: 0, .. })));
    }

    #[test]
    fn finite_rank_depth_guard() {
        let spec = harmonic(3);
        assert!(matches!(
            check_invariance(&spec, 8),
            Err(Error::AlphaDepth { have: 3, want: 8 })
        ));
    }

    #[test]
    fn alpha_validation() {
        assert!(AlphaSequence::from_alphas(vec![ratio(1, 2)]).is_ok());
        // 2 * 1/2 = 1 leaves the left edge out of (1,0) with weight 0.
        let bad = AlphaSequence::from_alphas(vec![ratio(1, 4), ratio(1, 2)]);
        assert!(matches!(bad, Err(Error::AlphaOutOfRange { index: 2, .. })));
        let bad = AlphaSequence::from_alphas(vec![ratio(0, 1)]);
        assert!(matches!(bad, Err(Error::AlphaOutOfRange { index: 1, .. })));
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let spec = MeasureSpec::Symmetric;
        let a = sample_path(&spec, 12, 99).unwrap();
        let b = sample_path(&spec, 12, 99).unwrap();
        let c = sample_path(&spec, 12, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn finite_rank_sampler_stays_in_the_support() {
        let spec = harmonic(40);
        let mut sampler = PathSampler::new(spec, 7);
        for _ in 0..20 {
            let path = sampler.sample_path(40).unwrap();
            for edge in path.edges() {
                assert!(edge.target().column() <= 1, "left the support: {path}");
            }
        }
    }

    #[test]
    fn sampled_permutations_of_size_three_look_uniform() {
        let (rows, test) =
            permutation_frequency_test(&MeasureSpec::Symmetric, 3, 6000, 11).unwrap();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows.iter().map(|(_, c)| *c).sum::<u64>(), 6000);
        assert!(test.passes_at(0.01), "chi-square {test:?}");
    }

    #[test]
    fn chi_square_statistic_on_even_counts_is_zero() {
        let test = chi_square_uniform(&[5, 5, 5, 5]);
        assert!(test.statistic.abs() < 1e-12);
        assert!((test.p_value - 1.0).abs() < 1e-12);
        assert_eq!(test.degrees_of_freedom, 3.0);
    }

    #[test]
    fn walk_determinism_and_column_process() {
        let a = reinforced_walk(1000, WalkMode::Negative, 5);
        let b = reinforced_walk(1000, WalkMode::Negative, 5);
        assert_eq!(a.choices, b.choices);
        assert_eq!(a.columns.len(), 1000);
        // Column increments exactly on right turns.
        let mut k = 0;
        for (turn, column) in a.choices.iter().zip(&a.columns) {
            if *turn == Turn::Right {
                k += 1;
            }
            assert_eq!(*column, k);
        }
    }

    #[test]
    fn negative_walk_concentrates_near_one_half() {
        let walk = reinforced_walk(10_000, WalkMode::Negative, 2026);
        assert!(
            (walk.final_ratio() - 0.5).abs() < 0.05,
            "k_n/n = {}",
            walk.final_ratio()
        );
    }
}
