//! Branch and bound over pair-sum orders.
//!
//! A witness whose weights are scaled so that distinct sums differ by at
//! least 1 sorts its pairs into maximal same-type blocks (edges and
//! non-edges alternate); the edge blocks are the intervals. The search
//! builds that block sequence from the smallest sum upward. Inside a block
//! the order is irrelevant, so pairs are added to a block in increasing id
//! order and each block sequence is generated exactly once.
//!
//! Every node carries the linear system of its prefix: one threshold
//! variable per block (at least every sum in the block, and at least 1 below
//! every sum in the next block), plus lower bounds for unplaced pairs. If
//! the system is infeasible no completion is; a feasible full sequence
//! yields the witness.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rational::Rational;
use crate::witness::{verify, Interval, IntervalSet, Witness};

use super::lp::{self, Row};
use super::Mode;

const UNPLACED: u8 = u8::MAX;

/// Feasible weights scaled by `den`: weight `v` is `w[v] / den`.
#[derive(Debug, Clone)]
struct Point {
    w: Vec<i128>,
    den: i128,
}

#[derive(Debug, Clone)]
struct Node {
    block_of: Vec<u8>,
    block_edge: Vec<bool>,
    /// Last pair id added to the current block.
    last: usize,
    left_edges: usize,
    left_non: usize,
    edge_blocks: usize,
    point: Option<Point>,
}

struct Child {
    node: Node,
    /// Weights of the parent already satisfy the child's system.
    cheap: bool,
    extends_edge_run: bool,
    first_pair: usize,
}

pub(crate) struct Search<'g> {
    graph: &'g Graph,
    pairs: Vec<(Vertex, Vertex)>,
    is_edge: Vec<bool>,
    k: usize,
    mode: Mode,
    budget: u64,
    nodes: AtomicU64,
    /// Levels run on rayon; unused without the `parallel` feature.
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    parallel_depth: usize,
}

impl<'g> Search<'g> {
    pub(crate) fn new(graph: &'g Graph, k: usize, mode: Mode, budget: u64, parallel: bool) -> Self {
        let pairs: Vec<(Vertex, Vertex)> = graph.pairs().collect();
        let is_edge = pairs.iter().map(|&(u, v)| graph.has_edge(u, v)).collect();
        Search {
            graph,
            pairs,
            is_edge,
            k,
            mode,
            budget,
            nodes: AtomicU64::new(0),
            parallel_depth: if parallel { 2 } else { 0 },
        }
    }

    pub(crate) fn nodes_explored(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed).min(self.budget)
    }

    /// Runs the search; `Ok(None)` means the space was exhausted.
    pub(crate) fn run(&self) -> Result<Option<Witness>> {
        if u8::try_from(self.pairs.len()).is_err() {
            return Err(Error::Argument(
                "graph too large for the exact solver".into(),
            ));
        }
        let edges = self.is_edge.iter().filter(|&&e| e).count();
        let root = Node {
            block_of: vec![UNPLACED; self.pairs.len()],
            block_edge: Vec::new(),
            last: 0,
            left_edges: edges,
            left_non: self.pairs.len() - edges,
            edge_blocks: 0,
            point: Some(Point {
                w: vec![1; self.graph.n()],
                den: 1,
            }),
        };
        self.explore(root, 0)
    }

    fn tick(&self) -> Result<()> {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.budget {
            return Err(Error::Resource(format!(
                "node budget of {} exhausted before the search finished",
                self.budget
            )));
        }
        Ok(())
    }

    fn explore(&self, node: Node, depth: usize) -> Result<Option<Witness>> {
        if node.left_edges == 0 && node.left_non == 0 {
            return self.build(&node).map(Some);
        }
        let children = self.ordered_children(&node);

        #[cfg(feature = "parallel")]
        if depth < self.parallel_depth && children.len() > 1 {
            use rayon::prelude::*;
            return children
                .into_par_iter()
                .map(|c| self.visit(c, &node, depth))
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .unwrap_or(Ok(None));
        }

        for child in children {
            if let Some(w) = self.visit(child, &node, depth)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn visit(&self, child: Child, parent: &Node, depth: usize) -> Result<Option<Witness>> {
        self.tick()?;
        let mut node = child.node;
        node.point = if child.cheap {
            parent.point.clone()
        } else {
            match self.solve(&node) {
                Some(p) => p,
                None => return Ok(None),
            }
        };
        self.explore(node, depth + 1)
    }

    fn cur_edge(&self, node: &Node) -> Option<bool> {
        node.block_edge.last().copied()
    }

    /// True if unplaced pair `id` cannot join the current block.
    fn forced_later(&self, node: &Node, id: usize) -> bool {
        match self.cur_edge(node) {
            Some(t) => self.is_edge[id] != t || id < node.last,
            None => false,
        }
    }

    fn place(&self, node: &mut Node, id: usize) {
        let edge = self.is_edge[id];
        if self.cur_edge(node) != Some(edge) {
            node.block_edge.push(edge);
            if edge {
                node.edge_blocks += 1;
            }
        }
        node.block_of[id] = (node.block_edge.len() - 1) as u8;
        node.last = id;
        if edge {
            node.left_edges -= 1;
        } else {
            node.left_non -= 1;
        }
    }

    /// Counting and mode rules that do not need the linear system.
    fn admissible(&self, node: &Node) -> bool {
        if node.edge_blocks > self.k {
            return false;
        }
        let Some(cur) = self.cur_edge(node) else {
            return true;
        };
        let stuck = (0..self.pairs.len())
            .any(|id| node.block_of[id] == UNPLACED && self.is_edge[id] == cur && id < node.last);
        if cur {
            // A stuck edge needs a separating non-edge block and another
            // edge block.
            if stuck && (node.left_non == 0 || node.edge_blocks + 1 > self.k) {
                return false;
            }
        } else {
            let needed = usize::from(node.left_edges > 0);
            if node.edge_blocks + needed > self.k {
                return false;
            }
            if stuck && node.left_edges == 0 {
                return false;
            }
        }
        match self.mode {
            Mode::Any => true,
            Mode::LeftFree => node.block_edge[0],
            Mode::RightFree => node.left_edges > 0 || (cur && node.left_non == 0),
        }
    }

    fn ordered_children(&self, node: &Node) -> Vec<Child> {
        let cur = self.cur_edge(node);
        let mut out = Vec::new();
        let mut push = |child: Node, first_pair: usize| {
            if !self.admissible(&child) {
                return;
            }
            let cheap = node
                .point
                .as_ref()
                .is_some_and(|p| self.satisfied_by(&child, p));
            out.push(Child {
                extends_edge_run: cur == Some(true)
                    && child.block_edge.len() == node.block_edge.len(),
                node: child,
                cheap,
                first_pair,
            });
        };

        if node.left_edges == 0 || node.left_non == 0 {
            // One type is used up: the rest forms the final block(s).
            let mut child = node.clone();
            let rest: Vec<usize> = (0..self.pairs.len())
                .filter(|&id| node.block_of[id] == UNPLACED)
                .collect();
            let first = rest[0];
            if cur == Some(self.is_edge[first]) && first < node.last {
                return out;
            }
            for id in rest {
                self.place(&mut child, id);
            }
            push(child, first);
        } else {
            for id in 0..self.pairs.len() {
                if node.block_of[id] != UNPLACED {
                    continue;
                }
                let joins = cur == Some(self.is_edge[id]);
                if joins && id < node.last {
                    continue;
                }
                if cur.is_none() && self.mode == Mode::LeftFree && !self.is_edge[id] {
                    continue;
                }
                let mut child = node.clone();
                self.place(&mut child, id);
                push(child, id);
            }
        }
        out.sort_by_key(|c| (!c.cheap, !c.extends_edge_run, c.first_pair));
        out
    }

    fn scaled_sum(&self, p: &Point, id: usize) -> i128 {
        let (u, v) = self.pairs[id];
        p.w[u] + p.w[v]
    }

    /// Checks a weight point against a node's system, taking each block
    /// threshold as the largest sum in the block.
    fn satisfied_by(&self, node: &Node, p: &Point) -> bool {
        let nb = node.block_edge.len();
        let mut theta = vec![i128::MIN; nb];
        for id in 0..self.pairs.len() {
            let b = node.block_of[id];
            if b != UNPLACED {
                let s = self.scaled_sum(p, id);
                theta[b as usize] = theta[b as usize].max(s);
            }
        }
        (0..self.pairs.len()).all(|id| {
            let s = self.scaled_sum(p, id);
            match self.lower_block(node, id) {
                Some(b) => s >= theta[b] + p.den,
                None => true,
            }
        })
    }

    /// The block every completion must place `id` above, if any.
    fn lower_block(&self, node: &Node, id: usize) -> Option<usize> {
        let b = node.block_of[id];
        let nb = node.block_edge.len();
        if b != UNPLACED {
            (b as usize).checked_sub(1)
        } else if self.forced_later(node, id) {
            nb.checked_sub(1)
        } else {
            nb.checked_sub(2)
        }
    }

    /// Variables: `y_v = w_v - 1` for each vertex, then one threshold per
    /// block.
    fn system(&self, node: &Node) -> (usize, Vec<Row>) {
        let n = self.graph.n();
        let vars = n + node.block_edge.len();
        let mut rows = Vec::with_capacity(2 * self.pairs.len());
        for (id, &(u, v)) in self.pairs.iter().enumerate() {
            let b = node.block_of[id];
            if b != UNPLACED {
                // theta_b >= w_u + w_v.
                rows.push(Row::new(vec![(n + b as usize, 1), (u, -1), (v, -1)], 2));
            }
            if let Some(lo) = self.lower_block(node, id) {
                // w_u + w_v >= theta_lo + 1.
                rows.push(Row::new(vec![(u, 1), (v, 1), (n + lo, -1)], -1));
            }
        }
        (vars, rows)
    }

    /// `None` if infeasible; `Some(None)` if feasible but the point is too
    /// large for the fast checks, so children must solve from scratch.
    fn solve(&self, node: &Node) -> Option<Option<Point>> {
        let (vars, rows) = self.system(node);
        let sol = lp::solve(vars, &rows)?;
        let den = lp::small(&sol.den);
        let w: Option<Vec<i128>> = sol.num[..self.graph.n()]
            .iter()
            .map(|y| lp::small(&(y + &sol.den)))
            .collect();
        Some(w.zip(den).map(|(w, den)| Point { w, den }))
    }

    fn build(&self, node: &Node) -> Result<Witness> {
        let (vars, rows) = self.system(node);
        let sol = lp::solve(vars, &rows)
            .ok_or_else(|| Error::Internal("leaf system became infeasible".into()))?;
        let n = self.graph.n();
        let den = sol.den.clone();
        let weights: Vec<Rational> = sol.num[..n]
            .iter()
            .map(|y| Rational::new(y + &den, den.clone()))
            .collect();
        let sum = |id: usize| {
            let (u, v) = self.pairs[id];
            &weights[u] + &weights[v]
        };
        let mut intervals = Vec::new();
        for (b, &edge) in node.block_edge.iter().enumerate() {
            if !edge {
                continue;
            }
            let sums: Vec<Rational> = (0..self.pairs.len())
                .filter(|&id| node.block_of[id] as usize == b)
                .map(sum)
                .collect();
            let lo = sums.iter().min().expect("blocks are non-empty").clone();
            let hi = sums.iter().max().expect("blocks are non-empty").clone();
            intervals.push(Interval::new(lo, hi)?);
        }
        let w = Witness::new(self.graph.clone(), weights, IntervalSet::new(intervals)?)?;
        let report = verify(&w);
        if !report.valid {
            return Err(Error::Internal(format!(
                "solver built an invalid witness: {report}"
            )));
        }
        Ok(w)
    }
}
