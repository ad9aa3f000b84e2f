//! Witness builders for tree families.
//!
//! Paths have a closed form with one interval. Caterpillars also need only
//! one interval; their weights come from one linear system over a fixed
//! pair order, with the exact solver as a fallback. Lobsters are a
//! caterpillar plus one round of pendants (two intervals), and any forest of
//! radius `r` is built from its centers in `r` pendant rounds.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::operations::{add_pendants, OpReport};
use crate::rational::{int, ratio, Rational};
use crate::solver::lp::{self, Row};
use crate::solver::{is_star_k_with, Mode, Outcome, SolverOptions};
use crate::structure::{classify_tree, is_forest, radius_and_centers, TreeTag};
use crate::transforms::separate_pair_sums;
use crate::witness::{min_intervals, verify, Interval, IntervalSet, Witness};

/// One-interval witness of the path `0 - 1 - ... - (n-1)`.
///
/// Even positions carry decreasing "low" weights `l_1 > l_2 > ...`, odd
/// positions "high" weights `h_b = U - l_b`, with `l_{b+1} = l_b - d_b` and
/// `d_b = 1/2 + 2^-(b+2)`. Every edge sum lands in `[U - 1, U]`: `d_b < 1`
/// keeps the edges in, `d_b + d_{b+1} > 1` keeps the skips out.
pub fn path_witness(n: usize) -> Result<Witness> {
    match n {
        0 => return Err(Error::Argument("a path needs at least one vertex".into())),
        1 => return Witness::new(Graph::path(1)?, vec![int(1)], IntervalSet::empty()),
        2 => {
            let iv = Interval::point(int(2))?;
            return Witness::new(
                Graph::path(2)?,
                vec![int(1), int(1)],
                IntervalSet::new(vec![iv])?,
            );
        }
        _ => {}
    }
    let lows = n.div_ceil(2);
    let gaps: Vec<Rational> = (1..=lows)
        .map(|b| ratio(1, 2) + Rational::new(BigInt::from(1), BigInt::from(1) << (b + 2)))
        .collect();
    let mut low = vec![Rational::one() + gaps.iter().sum::<Rational>()];
    for b in 1..lows {
        let next = &low[b - 1] - &gaps[b - 1];
        low.push(next);
    }
    let lo = &low[0] + &low[0] + Rational::one();
    let hi = &lo + Rational::one();
    let weights = (0..n)
        .map(|i| {
            if i % 2 == 0 {
                low[i / 2].clone()
            } else {
                &hi - &low[i / 2]
            }
        })
        .collect();
    let intervals = IntervalSet::new(vec![Interval::new(lo, hi)?])?;
    Witness::new(Graph::path(n)?, weights, intervals)?.verified()
}

fn not_family(what: &str, tag: TreeTag) -> Error {
    Error::Structure(format!(
        "expected a {what}, got a graph classified as {}",
        tag.as_str()
    ))
}

/// One-interval witness of a caterpillar (paths included).
pub fn caterpillar_witness(t: &Graph) -> Result<Witness> {
    caterpillar_witness_with(t, &SolverOptions::default())
}

/// As [`caterpillar_witness`]. Non-path caterpillars are laid out by
/// [`spine_layout_witness`]; the exact solver is the fallback.
pub fn caterpillar_witness_with(t: &Graph, opts: &SolverOptions) -> Result<Witness> {
    if t.n() == 1 {
        return path_witness(1);
    }
    let class = classify_tree(t);
    let spine = match class.tag {
        TreeTag::Path => {
            let spine = class.spine.expect("paths carry their vertex order");
            return path_witness(t.n())?.relabeled(&spine)?.verified();
        }
        TreeTag::Caterpillar => class.spine.expect("caterpillars carry their spine"),
        tag => return Err(not_family("caterpillar", tag)),
    };
    if let Some(w) = spine_layout_witness(t, &spine)? {
        return Ok(w);
    }
    let cert = is_star_k_with(t, 1, Mode::Any, opts)?;
    match cert.outcome {
        Outcome::Witness(w) => Ok(w),
        Outcome::Infeasible => Err(Error::Internal(
            "solver found no one-interval witness for a caterpillar".into(),
        )),
    }
}

/// One-interval witness of a caterpillar from a fixed three-block order,
/// or `None` if that order's linear system is infeasible.
///
/// Spine vertices alternate between "low" and "high" sides; spine vertices
/// `2b` and `2b + 1` and their leaves get anchor `b`. Low-low pairs sit below
/// the interval and high-high pairs above it; a non-adjacent low-high pair
/// sits below exactly when the low vertex has the smaller anchor. Read on a
/// line, low vertices are points, high vertices unit windows, and edges are
/// the point-in-window incidences; every caterpillar has such a picture, so
/// the system is feasible.
pub fn spine_layout_witness(t: &Graph, spine: &[Vertex]) -> Result<Option<Witness>> {
    let n = t.n();
    let mut anchor = vec![usize::MAX; n];
    let mut low = vec![false; n];
    for (i, &s) in spine.iter().enumerate() {
        anchor[s] = i / 2;
        low[s] = i % 2 == 0;
    }
    for v in 0..n {
        if anchor[v] != usize::MAX {
            continue;
        }
        let Some(p) = t
            .neighbors(v)
            .find(|&p| anchor[p] != usize::MAX && spine.contains(&p))
        else {
            return Err(not_family("caterpillar", classify_tree(t).tag));
        };
        anchor[v] = anchor[p];
        low[v] = !low[p];
    }

    let (below_var, above_var) = (n, n + 1);
    let mut rows = Vec::new();
    for (u, v) in t.pairs() {
        if t.has_edge(u, v) {
            rows.push(Row::new(vec![(u, 1), (v, 1), (below_var, -1)], -1));
            rows.push(Row::new(vec![(above_var, 1), (u, -1), (v, -1)], 2));
            continue;
        }
        let below = match (low[u], low[v]) {
            (true, true) => true,
            (false, false) => false,
            (true, false) => anchor[u] < anchor[v],
            (false, true) => anchor[v] < anchor[u],
        };
        if below {
            rows.push(Row::new(vec![(below_var, 1), (u, -1), (v, -1)], 2));
        } else {
            rows.push(Row::new(vec![(u, 1), (v, 1), (above_var, -1)], -1));
        }
    }
    let Some(point) = lp::solve(n + 2, &rows) else {
        return Ok(None);
    };
    let weights: Vec<Rational> = point.to_rationals()[..n]
        .iter()
        .map(|y| y + Rational::one())
        .collect();
    let Some(intervals) = min_intervals(t, &weights) else {
        return Ok(None);
    };
    let w = Witness::new(t.clone(), weights, intervals)?;
    Ok((verify(&w).valid && w.k() == 1).then_some(w))
}

/// Witness of a lobster with at most two intervals: the caterpillar left
/// after deleting the leaves, then the leaves re-attached as pendants.
pub fn lobster_witness(t: &Graph) -> Result<(Witness, OpReport)> {
    lobster_witness_with(t, &SolverOptions::default())
}

pub fn lobster_witness_with(t: &Graph, opts: &SolverOptions) -> Result<(Witness, OpReport)> {
    let tag = classify_tree(t).tag;
    if t.n() == 1 || tag.is_caterpillar() {
        let w = caterpillar_witness_with(t, opts)?;
        let report = OpReport {
            op: "lobster",
            case: "lobster/caterpillar".into(),
            k_before: w.k(),
            k_after: w.k(),
            fallback_used: false,
            verification: verify(&w),
        };
        return Ok((w, report));
    }
    if !tag.is_lobster() {
        return Err(not_family("lobster", tag));
    }
    let leaves: Vec<Vertex> = (0..t.n()).filter(|&v| t.degree(v) == 1).collect();
    let core: Vec<Vertex> = (0..t.n()).filter(|&v| t.degree(v) > 1).collect();
    let mut index = vec![usize::MAX; t.n()];
    for (i, &v) in core.iter().enumerate() {
        index[v] = i;
    }
    let base = caterpillar_witness_with(&t.induced(&core), opts)?;
    let anchors: Vec<usize> = leaves
        .iter()
        .map(|&x| index[t.neighbors(x).next().expect("leaves have a neighbor")])
        .collect();
    let (w, mut report) = add_pendants(&base, &anchors)?;
    let order: Vec<Vertex> = core.iter().chain(&leaves).copied().collect();
    let w = w.relabeled(&order)?.verified()?;
    report.op = "lobster";
    report.case = format!("lobster/{}", report.case);
    report.verification = verify(&w);
    Ok((w, report))
}

/// Witness of a forest with at most `rad` intervals.
///
/// Starts from one center per component (distinct weights, no intervals)
/// and adds each BFS layer around those centers as pendants of its parents,
/// one interval per round.
pub fn acyclic_witness(f: &Graph) -> Result<(Witness, OpReport)> {
    if !is_forest(f) {
        return Err(not_family("forest", TreeTag::NotAcyclic));
    }
    let info = radius_and_centers(f);
    let roots: Vec<Vertex> = info.centers.iter().map(|c| c[0]).collect();
    let mut dist = vec![usize::MAX; f.n()];
    for &r in &roots {
        for (v, d) in f.bfs_distances(r).into_iter().enumerate() {
            if let Some(d) = d {
                dist[v] = d;
            }
        }
    }

    let mut order = roots.clone();
    let mut position = vec![usize::MAX; f.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let seed_weights = (1..=roots.len() as i64).map(int).collect();
    let mut w = Witness::new(
        Graph::empty(roots.len())?,
        seed_weights,
        IntervalSet::empty(),
    )?;
    let mut rounds = 0;
    let mut fallback_used = false;
    for layer_depth in 1..=info.radius {
        let layer: Vec<Vertex> = (0..f.n()).filter(|&v| dist[v] == layer_depth).collect();
        if layer.is_empty() {
            continue;
        }
        let anchors: Vec<usize> = layer
            .iter()
            .map(|&x| {
                let parent = f
                    .neighbors(x)
                    .find(|&p| dist[p] + 1 == layer_depth)
                    .expect("BFS layers have parents");
                position[parent]
            })
            .collect();
        if !weights_distinct(w.weights()) {
            w = separate_pair_sums(&w)?;
        }
        let (next, report) = add_pendants(&w, &anchors)?;
        fallback_used |= report.fallback_used;
        w = next;
        for &x in &layer {
            position[x] = order.len();
            order.push(x);
        }
        rounds += 1;
    }
    let w = w.relabeled(&order)?.verified()?;
    let report = OpReport {
        op: "acyclic",
        case: format!("acyclic/rounds={rounds}"),
        k_before: 0,
        k_after: w.k(),
        fallback_used,
        verification: verify(&w),
    };
    Ok((w, report))
}

fn weights_distinct(weights: &[Rational]) -> bool {
    let mut sorted = weights.to_vec();
    sorted.sort();
    sorted.windows(2).all(|p| p[0] != p[1])
}
