//! Simple undirected graphs on dense vertex ids `0..n`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count (one adjacency word per vertex).
pub const MAX_VERTICES: usize = 64;

pub type Vertex = usize;

/// A simple undirected graph. Vertices are `0..n`; adjacency is stored as one
/// bitmask per vertex, so `n <= 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Graph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            if u == v {
                return Err(Error::Graph(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Graph(format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if g.has_edge(u, v) {
                return Err(Error::Graph(format!("duplicate edge {u}-{v}")));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Graph(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Self> {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// Spider with center 0 and one leg of the given length per entry.
    pub fn spider(legs: &[usize]) -> Result<Self> {
        let n = 1 + legs.iter().sum::<usize>();
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::from_edges(n, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask.
    #[inline]
    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let mut mask = self.adj[v];
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let u = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(u)
            }
        })
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&m| m == 0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.pairs().filter(|&(u, v)| self.has_edge(u, v))
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.pairs().filter(|&(u, v)| !self.has_edge(u, v))
    }

    /// All unordered pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> {
        let n = self.n;
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, &m)| !m & full & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut adj = vec![0u64; vertices.len()];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i] |= 1 << j;
                }
            }
        }
        Graph {
            n: vertices.len(),
            adj,
        }
    }

    /// Copy of the graph with `extra` new vertices `n..n+extra` and the given
    /// additional edges.
    pub fn extended(
        &self,
        extra: usize,
        new_edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Graph> {
        Graph::from_edges(self.n + extra, self.edges().chain(new_edges))
    }

    /// Relabels vertices: vertex `v` of `self` becomes `map[v]`.
    pub fn relabeled(&self, map: &[Vertex]) -> Result<Graph> {
        if map.len() != self.n {
            return Err(Error::Argument("relabeling has the wrong length".into()));
        }
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (map[u], map[v])))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 0u64;
            let mut frontier = 1u64 << s;
            while frontier != 0 {
                comp |= frontier;
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[v];
                }
                frontier = next & !comp;
            }
            seen |= comp;
            out.push((0..self.n).filter(|&v| comp >> v & 1 == 1).collect());
        }
        out
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Index of pair `(u, v)`, `u < v`, in the lexicographic pair order of an
/// `n`-vertex graph.
#[inline]
pub fn pair_index(n: usize, u: Vertex, v: Vertex) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}
