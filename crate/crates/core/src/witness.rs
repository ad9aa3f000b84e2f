//! Witness certificates: positive vertex weights plus disjoint closed
//! intervals such that `uv` is an edge iff `w(u) + w(v)` falls in one of the
//! intervals.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rational::{format_rational, Rational};

/// Closed interval `[lo, hi]` with `0 < lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo <= Rational::zero() {
            return Err(Error::Structure(format!(
                "interval lower end {} is not positive",
                format_rational(&lo)
            )));
        }
        if lo > hi {
            return Err(Error::Structure(format!(
                "interval [{}, {}] is reversed",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Result<Self> {
        Interval::new(x.clone(), x)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// Strictly increasing, pairwise disjoint intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        for w in intervals.windows(2) {
            if w[0].hi >= w[1].lo {
                return Err(Error::Structure(format!(
                    "intervals {} and {} overlap or are out of order",
                    w[0], w[1]
                )));
            }
        }
        Ok(IntervalSet { intervals })
    }

    pub fn empty() -> Self {
        IntervalSet::default()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn as_slice(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.intervals.iter()
    }

    pub fn first(&self) -> Option<&Interval> {
        self.intervals.first()
    }

    pub fn last(&self) -> Option<&Interval> {
        self.intervals.last()
    }

    /// Index of the interval containing `x`.
    pub fn position(&self, x: &Rational) -> Option<usize> {
        self.intervals
            .binary_search_by(|iv| {
                if &iv.hi < x {
                    Ordering::Less
                } else if &iv.lo > x {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            })
            .ok()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.position(x).is_some()
    }

    /// Every interval endpoint, in increasing order.
    pub fn endpoints(&self) -> impl Iterator<Item = &Rational> {
        self.intervals.iter().flat_map(|iv| [&iv.lo, &iv.hi])
    }

    pub fn into_vec(self) -> Vec<Interval> {
        self.intervals
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "(none)");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// A graph together with positive rational vertex weights and an interval
/// set. Construction checks structure only; use [`verify`] for validity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    graph: Graph,
    weights: Vec<Rational>,
    intervals: IntervalSet,
}

impl Witness {
    pub fn new(graph: Graph, weights: Vec<Rational>, intervals: IntervalSet) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::Structure(format!(
                "{} weights for a graph on {} vertices",
                weights.len(),
                graph.n()
            )));
        }
        if let Some(v) = weights.iter().position(|w| w <= &Rational::zero()) {
            return Err(Error::Structure(format!(
                "weight of vertex {v} is {}, not positive",
                format_rational(&weights[v])
            )));
        }
        Ok(Witness {
            graph,
            weights,
            intervals,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, v: Vertex) -> &Rational {
        &self.weights[v]
    }

    pub fn intervals(&self) -> &IntervalSet {
        &self.intervals
    }

    /// Number of intervals.
    pub fn k(&self) -> usize {
        self.intervals.len()
    }

    pub fn pair_sum(&self, u: Vertex, v: Vertex) -> Rational {
        &self.weights[u] + &self.weights[v]
    }

    pub fn max_weight(&self) -> Option<&Rational> {
        self.weights.iter().max()
    }

    pub fn min_weight(&self) -> Option<&Rational> {
        self.weights.iter().min()
    }

    /// Sums of all non-adjacent pairs.
    pub fn non_edge_sums(&self) -> Vec<Rational> {
        self.graph
            .non_edges()
            .map(|(u, v)| self.pair_sum(u, v))
            .collect()
    }

    pub fn edge_sums(&self) -> Vec<Rational> {
        self.graph
            .edges()
            .map(|(u, v)| self.pair_sum(u, v))
            .collect()
    }

    pub fn into_parts(self) -> (Graph, Vec<Rational>, IntervalSet) {
        (self.graph, self.weights, self.intervals)
    }

    /// Same certificate with every vertex `v` renamed to `map[v]`.
    pub fn relabeled(&self, map: &[Vertex]) -> Result<Witness> {
        let graph = self.graph.relabeled(map)?;
        let mut weights = vec![Rational::zero(); self.weights.len()];
        for (v, w) in self.weights.iter().enumerate() {
            weights[map[v]] = w.clone();
        }
        Witness::new(graph, weights, self.intervals.clone())
    }

    /// Checks validity and converts an invalid witness into an error.
    pub fn verified(self) -> Result<Witness> {
        let report = verify(&self);
        if report.valid {
            Ok(self)
        } else {
            Err(Error::InvalidWitness(Box::new(report)))
        }
    }
}

/// One pair whose sum is on the wrong side of the interval union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub u: Vertex,
    pub v: Vertex,
    pub sum: Rational,
    /// `true` for an edge whose sum lies outside every interval, `false` for
    /// a non-edge whose sum lies inside one.
    pub expected_inside: bool,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-{} sum {} expected {}",
            self.u,
            self.v,
            format_rational(&self.sum),
            if self.expected_inside {
                "inside"
            } else {
                "outside"
            }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid");
        }
        write!(f, "invalid ({} violations)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Checks every pair: edges must sum into the interval union, non-edges must
/// not. All violations are reported.
pub fn verify(w: &Witness) -> VerifyReport {
    let violations: Vec<Violation> = w
        .graph
        .pairs()
        .filter_map(|(u, v)| {
            let sum = w.pair_sum(u, v);
            let edge = w.graph.has_edge(u, v);
            (edge != w.intervals.contains(&sum)).then_some(Violation {
                u,
                v,
                sum,
                expected_inside: edge,
            })
        })
        .collect();
    VerifyReport {
        valid: violations.is_empty(),
        violations,
    }
}

fn require_valid(w: &Witness) -> Result<()> {
    let report = verify(w);
    if report.valid {
        Ok(())
    } else {
        Err(Error::InvalidWitness(Box::new(report)))
    }
}

/// Fewest intervals certifying `g` under the fixed `weights`.
///
/// Returns `None` when an edge and a non-edge share a sum, since no interval
/// set can separate them. Otherwise edge sums are grouped into maximal runs
/// not interrupted by a non-edge sum, one interval `[min, max]` per run. An
/// edgeless graph yields the empty set.
///
/// # Panics
///
/// If `weights.len() != g.n()`.
pub fn min_intervals(g: &Graph, weights: &[Rational]) -> Option<IntervalSet> {
    assert_eq!(weights.len(), g.n(), "one weight per vertex");
    let mut sums: Vec<(Rational, bool)> = g
        .pairs()
        .map(|(u, v)| (&weights[u] + &weights[v], g.has_edge(u, v)))
        .collect();
    sums.sort();
    // Within equal sums non-edges (false) sort first; a tie with an edge
    // shows up as adjacent entries with the same sum and different tags.
    for w in sums.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 != w[1].1 {
            return None;
        }
    }
    let mut out: Vec<Interval> = Vec::new();
    let mut run: Option<(Rational, Rational)> = None;
    for (s, edge) in sums {
        if edge {
            run = Some(match run {
                None => (s.clone(), s),
                Some((lo, _)) => (lo, s),
            });
        } else if let Some((lo, hi)) = run.take() {
            out.push(Interval { lo, hi });
        }
    }
    if let Some((lo, hi)) = run {
        out.push(Interval { lo, hi });
    }
    Some(IntervalSet { intervals: out })
}

/// Tightens a valid witness: each interval shrinks to the extreme edge sums
/// it contains, intervals holding no edge sum are dropped, and consecutive
/// intervals with no non-edge sum strictly between them are merged.
pub fn canonicalize(w: &Witness) -> Result<Witness> {
    require_valid(w)?;
    let edge_sums = w.edge_sums();
    let non_edge_sums = w.non_edge_sums();

    let mut shrunk: Vec<Interval> = Vec::new();
    for iv in w.intervals.iter() {
        let inside = edge_sums.iter().filter(|s| iv.contains(s));
        let lo = inside.clone().min();
        let hi = inside.max();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            shrunk.push(Interval {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
    }

    let mut merged: Vec<Interval> = Vec::new();
    for iv in shrunk {
        if let Some(prev) = merged.last_mut() {
            let separated = non_edge_sums.iter().any(|s| &prev.hi < s && s < &iv.lo);
            if !separated {
                prev.hi = iv.hi;
                continue;
            }
        }
        merged.push(iv);
    }

    Witness::new(
        w.graph.clone(),
        w.weights.clone(),
        IntervalSet { intervals: merged },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FreeClass {
    LeftFree,
    RightFree,
    BothFree,
    NotFree,
}

impl FreeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            FreeClass::LeftFree => "left_free",
            FreeClass::RightFree => "right_free",
            FreeClass::BothFree => "both_free",
            FreeClass::NotFree => "not_free",
        }
    }

    pub fn is_left_free(self) -> bool {
        matches!(self, FreeClass::LeftFree | FreeClass::BothFree)
    }

    pub fn is_right_free(self) -> bool {
        matches!(self, FreeClass::RightFree | FreeClass::BothFree)
    }

    pub fn is_free(self) -> bool {
        self != FreeClass::NotFree
    }

    /// Left and right exchanged.
    pub fn mirrored(self) -> FreeClass {
        match self {
            FreeClass::LeftFree => FreeClass::RightFree,
            FreeClass::RightFree => FreeClass::LeftFree,
            other => other,
        }
    }

    fn from_flags(left: bool, right: bool) -> FreeClass {
        match (left, right) {
            (true, true) => FreeClass::BothFree,
            (true, false) => FreeClass::LeftFree,
            (false, true) => FreeClass::RightFree,
            (false, false) => FreeClass::NotFree,
        }
    }
}

impl fmt::Display for FreeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Left-free: every non-edge sum exceeds `b_1`. Right-free: every non-edge
/// sum is below `a_k`. A witness without intervals is both-free.
pub fn classify_free(w: &Witness) -> Result<FreeClass> {
    require_valid(w)?;
    let (Some(first), Some(last)) = (w.intervals.first(), w.intervals.last()) else {
        return Ok(FreeClass::BothFree);
    };
    let sums = w.non_edge_sums();
    let left = sums.iter().all(|s| s > &first.hi);
    let right = sums.iter().all(|s| s < &last.lo);
    Ok(FreeClass::from_flags(left, right))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormReport {
    pub is_normal: bool,
    pub violators: Vec<Vertex>,
}

/// Vertices breaking normal form: `x` violates when another vertex has the
/// same weight, or when `2 w(x) = w(u1) + w(u2)` for distinct `u1, u2`.
pub fn check_normal_form(weights: &[Rational]) -> NormalFormReport {
    let n = weights.len();
    let violators: Vec<Vertex> = (0..n)
        .filter(|&x| {
            let same = (0..n).any(|u| u != x && weights[u] == weights[x]);
            if same {
                return true;
            }
            let twice = &weights[x] + &weights[x];
            (0..n).any(|u1| (u1 + 1..n).any(|u2| &weights[u1] + &weights[u2] == twice))
        })
        .collect();
    NormalFormReport {
        is_normal: violators.is_empty(),
        violators,
    }
}
