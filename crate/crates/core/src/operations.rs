//! Graph operations lifted to witnesses. Each operation takes a valid
//! witness of `G` and returns a valid witness of the modified graph, within
//! the interval bound for the case it took, together with an [`OpReport`].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::rational::{ratio, Rational};
use crate::transforms::{mirror, normalize};
use crate::witness::{
    check_normal_form, classify_free, verify, FreeClass, Interval, IntervalSet, VerifyReport,
    Witness,
};

/// Provenance of one applied operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpReport {
    pub op: &'static str,
    /// Construction case, e.g. `"universal/free"` or `"twin/split"`.
    pub case: String,
    pub k_before: usize,
    pub k_after: usize,
    pub fallback_used: bool,
    pub verification: VerifyReport,
}

impl OpReport {
    /// Largest interval count the case taken is allowed to produce.
    pub fn k_bound(&self) -> usize {
        match (self.op, self.case.as_str()) {
            ("isolated", _) => self.k_before,
            ("universal", c) if c.starts_with("universal/free") => self.k_before,
            ("complement", "complement/both-free") => self.k_before.saturating_sub(1),
            ("complement", "complement/left-free" | "complement/right-free") => self.k_before,
            ("pendant", "pendant/free-merged" | "pendant/none") => self.k_before,
            _ => self.k_before + 1,
        }
    }

    pub fn within_bound(&self) -> bool {
        self.k_after <= self.k_bound()
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

fn finish(
    op: &'static str,
    case: impl Into<String>,
    k_before: usize,
    fallback_used: bool,
    out: Witness,
) -> Result<(Witness, OpReport)> {
    let verification = verify(&out);
    if !verification.valid {
        return Err(Error::Internal(format!(
            "{op} produced an invalid witness: {verification}"
        )));
    }
    let report = OpReport {
        op,
        case: case.into(),
        k_before,
        k_after: out.k(),
        fallback_used,
        verification,
    };
    Ok((out, report))
}

fn with_intervals(intervals: Vec<Interval>) -> Result<IntervalSet> {
    IntervalSet::new(intervals)
}

/// Adds an isolated vertex with weight `b_k + 1` (weight 1 when there are
/// no intervals).
pub fn add_isolated(w: &Witness) -> Result<(Witness, OpReport)> {
    require_valid(w)?;
    let new_weight = match w.intervals().last() {
        Some(last) => last.hi() + Rational::one(),
        None => Rational::one(),
    };
    let graph = w.graph().extended(1, [])?;
    let mut weights = w.weights().to_vec();
    weights.push(new_weight);
    let out = Witness::new(graph, weights, w.intervals().clone())?;
    finish("isolated", "isolated", w.k(), false, out)
}

/// Appends a universal vertex of weight `x` adjacent to everything.
fn universal_graph_weights(
    w: &Witness,
    x: Rational,
) -> Result<(crate::graph::Graph, Vec<Rational>)> {
    let n = w.graph().n();
    let graph = w.graph().extended(1, (0..n).map(|u| (u, n)))?;
    let mut weights = w.weights().to_vec();
    weights.push(x);
    Ok((graph, weights))
}

/// Universal vertex with a fresh top interval: `x = S + 1` where `S` bounds
/// every old pair sum and `b_k`, interval `[x + min w, x + max w]`.
fn universal_fresh_interval(w: &Witness) -> Result<Witness> {
    let max_pair = {
        let mut ws = w.weights().to_vec();
        ws.sort();
        match ws.len() {
            0 | 1 => Rational::zero(),
            l => &ws[l - 1] + &ws[l - 2],
        }
    };
    let top = w
        .intervals()
        .last()
        .map(|iv| iv.hi().clone())
        .unwrap_or_else(Rational::zero);
    let s = std::cmp::max(max_pair, top);
    let x = s + Rational::one();
    let (lo, hi) = match (w.min_weight(), w.max_weight()) {
        (Some(a), Some(b)) => (&x + a, &x + b),
        _ => {
            return Err(Error::Argument(
                "universal vertex needs a non-empty graph".into(),
            ))
        }
    };
    let mut intervals = w.intervals().as_slice().to_vec();
    intervals.push(Interval::new(lo, hi)?);
    let (graph, weights) = universal_graph_weights(w, x)?;
    Witness::new(graph, weights, with_intervals(intervals)?)
}

/// Adds a universal vertex. A free witness keeps its interval count (the
/// top interval absorbs the new sums); otherwise one interval is added.
pub fn add_universal(w: &Witness) -> Result<(Witness, OpReport)> {
    require_valid(w)?;
    if w.graph().n() == 0 {
        return Err(Error::Argument(
            "universal vertex needs a non-empty graph".into(),
        ));
    }
    let k = w.k();
    if w.intervals().is_empty() {
        let out = universal_fresh_interval(w)?;
        return finish("universal", "universal/edgeless", k, false, out);
    }
    let class = classify_free(w)?;
    if class.is_free() {
        let (base, case) = if class.is_right_free() {
            (w.clone(), "universal/free")
        } else {
            (mirror(w, None)?, "universal/free-mirrored")
        };
        let last = base.intervals().last().expect("non-empty");
        let bk = last.hi().clone();
        let x = &bk + Rational::one();
        let mut intervals = base.intervals().as_slice().to_vec();
        let top = intervals.len() - 1;
        intervals[top] = Interval::new(last.lo().clone(), &bk + &bk + Rational::one())?;
        let (graph, weights) = universal_graph_weights(&base, x)?;
        let candidate = Witness::new(graph, weights, with_intervals(intervals)?)?;
        if verify(&candidate).valid {
            return finish("universal", case, k, false, candidate);
        }
        let out = universal_fresh_interval(w)?;
        return finish("universal", "universal/non-free", k, true, out);
    }
    let out = universal_fresh_interval(w)?;
    finish("universal", "universal/non-free", k, false, out)
}

fn weights_distinct(weights: &[Rational]) -> bool {
    let mut sorted = weights.to_vec();
    sorted.sort();
    sorted.windows(2).all(|p| p[0] != p[1])
}

/// Pendant construction on a witness with pairwise distinct weights: each
/// new vertex gets `2M - w(anchor)` with `M = max(W, b_k) + 1`, and the
/// point interval `[2M, 2M]` is appended.
fn pendant_construction(base: &Witness, anchors: &[Vertex]) -> Result<Witness> {
    let max_w = base.max_weight().cloned().unwrap_or_else(Rational::zero);
    let top = base
        .intervals()
        .last()
        .map(|iv| iv.hi().clone())
        .unwrap_or_else(Rational::zero);
    let m = std::cmp::max(max_w, top) + Rational::one();
    let two_m = &m + &m;
    let n = base.graph().n();
    let graph = base.graph().extended(
        anchors.len(),
        anchors.iter().enumerate().map(|(i, &a)| (a, n + i)),
    )?;
    let mut weights = base.weights().to_vec();
    weights.extend(anchors.iter().map(|&a| &two_m - base.weight(a)));
    let mut intervals = base.intervals().as_slice().to_vec();
    intervals.push(Interval::point(two_m)?);
    Witness::new(graph, weights, with_intervals(intervals)?)
}

/// Attaches one new pendant vertex per entry of `anchors` (repeats allowed).
/// The guaranteed result has at most `k + 1` intervals; for free witnesses
/// a merge of the top two intervals is attempted and kept only if it
/// verifies.
pub fn add_pendants(w: &Witness, anchors: &[Vertex]) -> Result<(Witness, OpReport)> {
    require_valid(w)?;
    let n = w.graph().n();
    if let Some(&a) = anchors.iter().find(|&&a| a >= n) {
        return Err(Error::Argument(format!(
            "anchor {a} is not a vertex (n = {n})"
        )));
    }
    let k = w.k();
    if anchors.is_empty() {
        return finish("pendant", "pendant/none", k, false, w.clone());
    }
    let base = if weights_distinct(w.weights()) {
        w.clone()
    } else {
        normalize(w)?
    };
    let plain = pendant_construction(&base, anchors)?;

    let class = classify_free(&base)?;
    if class.is_free() && !base.intervals().is_empty() {
        let free_base = if class.is_right_free() {
            Some(base.clone())
        } else {
            mirror(&base, None).ok()
        };
        if let Some(fb) = free_base {
            let merged = pendant_construction(&fb, anchors).and_then(|c| {
                let mut ivs = c.intervals().as_slice().to_vec();
                let point = ivs.pop().expect("pendant interval");
                let prev = ivs.pop().expect("free witness has an interval");
                ivs.push(Interval::new(prev.lo().clone(), point.hi().clone())?);
                let (graph, weights, _) = c.into_parts();
                Witness::new(graph, weights, with_intervals(ivs)?)
            });
            if let Ok(m) = merged {
                if verify(&m).valid {
                    return finish("pendant", "pendant/free-merged", k, false, m);
                }
            }
            return finish("pendant", "pendant/free-merge-rejected", k, false, plain);
        }
    }
    finish("pendant", "pendant/non-free", k, false, plain)
}

fn require_twin_args(w: &Witness, v: Vertex, count: usize) -> Result<()> {
    if v >= w.graph().n() {
        return Err(Error::Argument(format!(
            "vertex {v} is not in the graph (n = {})",
            w.graph().n()
        )));
    }
    if count < 1 {
        return Err(Error::Argument("twin count must be at least 1".into()));
    }
    Ok(())
}

fn normal_base(w: &Witness) -> Result<Witness> {
    if check_normal_form(w.weights()).is_normal {
        Ok(w.clone())
    } else {
        normalize(w)
    }
}

/// Adds `count` false twins of `v` (same neighbourhood, not adjacent to `v`
/// or each other). If `2 w(v)` falls in an interval, that interval is cut
/// around it.
pub fn add_false_twins(w: &Witness, v: Vertex, count: usize) -> Result<(Witness, OpReport)> {
    require_valid(w)?;
    require_twin_args(w, v, count)?;
    let k = w.k();
    let base = normal_base(w)?;
    let n = base.graph().n();
    let neighbors: Vec<Vertex> = base.graph().neighbors(v).collect();
    let graph = base.graph().extended(
        count,
        (0..count).flat_map(|i| neighbors.iter().map(move |&u| (u, n + i))),
    )?;
    let mut weights = base.weights().to_vec();
    weights.extend(std::iter::repeat_n(base.weight(v).clone(), count));

    let twice = base.weight(v) + base.weight(v);
    let Some(i) = base.intervals().position(&twice) else {
        let out = Witness::new(graph, weights, base.intervals().clone())?;
        return finish("false-twin", "twin/outside", k, false, out);
    };

    let target = &base.intervals().as_slice()[i];
    let eps = base
        .graph()
        .pairs()
        .map(|(a, b)| base.pair_sum(a, b))
        .filter(|s| target.contains(s))
        .map(|s| if s > twice { s - &twice } else { &twice - s })
        .min();
    let mut intervals = base.intervals().as_slice().to_vec();
    let case = match eps {
        // No old sum uses this interval: drop it.
        None => {
            intervals.remove(i);
            "twin/drop"
        }
        Some(eps) => {
            let half = eps * ratio(1, 2);
            let below = &twice - &half;
            let above = &twice + &half;
            let (a, b) = (target.lo().clone(), target.hi().clone());
            if below <= a {
                intervals[i] = Interval::new(above, b)?;
                "twin/truncate-low"
            } else if above >= b {
                intervals[i] = Interval::new(a, below)?;
                "twin/truncate-high"
            } else {
                intervals[i] = Interval::new(a, below)?;
                intervals.insert(i + 1, Interval::new(above, b)?);
                "twin/split"
            }
        }
    };
    let out = Witness::new(graph, weights, with_intervals(intervals)?)?;
    finish("false-twin", case, k, false, out)
}

/// Adds `count` true twins of `v` (adjacent to `v`, to each other and to
/// `N(v)`). If `2 w(v)` is not covered, the point interval `[2w(v), 2w(v)]`
/// is inserted.
pub fn add_true_twins(w: &Witness, v: Vertex, count: usize) -> Result<(Witness, OpReport)> {
    require_valid(w)?;
    require_twin_args(w, v, count)?;
    let k = w.k();
    let base = normal_base(w)?;
    let n = base.graph().n();
    let closed: Vec<Vertex> = base.graph().neighbors(v).chain([v]).collect();
    let new_edges = (0..count)
        .flat_map(|i| closed.iter().map(move |&u| (u, n + i)))
        .chain((0..count).flat_map(|i| (i + 1..count).map(move |j| (n + i, n + j))));
    let graph = base.graph().extended(count, new_edges)?;
    let mut weights = base.weights().to_vec();
    weights.extend(std::iter::repeat_n(base.weight(v).clone(), count));

    let twice = base.weight(v) + base.weight(v);
    if base.intervals().contains(&twice) {
        let out = Witness::new(graph, weights, base.intervals().clone())?;
        return finish("true-twin", "twin/inside", k, false, out);
    }
    let mut intervals = base.intervals().as_slice().to_vec();
    let at = intervals.partition_point(|iv| iv.hi() < &twice);
    intervals.insert(at, Interval::point(twice)?);
    let out = Witness::new(graph, weights, with_intervals(intervals)?)?;
    finish("true-twin", "twin/point", k, false, out)
}

/// Witness of the complement graph with the same weights: each gap of the
/// old interval union (including below the first and above the last
/// interval) that holds old non-edge sums becomes the interval spanning
/// those sums.
pub fn complement_witness(w: &Witness) -> Result<(Witness, OpReport)> {
    require_valid(w)?;
    let class = classify_free(w)?;
    let k = w.k();
    let mut sums = w.non_edge_sums();
    sums.sort();
    sums.dedup();
    // Non-edge sums never lie inside an interval, so grouping them by the
    // number of intervals below identifies the gap.
    let mut intervals: Vec<Interval> = Vec::new();
    let mut current: Option<(usize, Rational, Rational)> = None;
    for s in sums {
        let gap = w.intervals().as_slice().partition_point(|iv| iv.hi() < &s);
        current = match current {
            Some((g, lo, _)) if g == gap => Some((g, lo, s)),
            Some((_, lo, hi)) => {
                intervals.push(Interval::new(lo, hi)?);
                Some((gap, s.clone(), s))
            }
            None => Some((gap, s.clone(), s)),
        };
    }
    if let Some((_, lo, hi)) = current {
        intervals.push(Interval::new(lo, hi)?);
    }
    let out = Witness::new(
        w.graph().complement(),
        w.weights().to_vec(),
        with_intervals(intervals)?,
    )?;
    let case = match class {
        FreeClass::BothFree if k > 0 => "complement/both-free",
        FreeClass::LeftFree => "complement/left-free",
        FreeClass::RightFree => "complement/right-free",
        _ => "complement/non-free",
    };
    finish("complement", case, k, false, out)
}
