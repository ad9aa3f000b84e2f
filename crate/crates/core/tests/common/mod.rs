//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use starpcg::rational::{int, ratio};
use starpcg::{Graph, Interval, IntervalSet, Rational, Vertex, Witness};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random valid witness on `1..=n_max` vertices. Weights are small integers
/// or halves; interval endpoints are drawn from the pair sums and the graph
/// is read off from them, so ties are common.
pub fn random_witness(rng: &mut ChaCha8Rng, n_max: usize) -> Witness {
    let n = rng.gen_range(1..=n_max);
    random_witness_on(rng, n)
}

pub fn random_witness_on(rng: &mut ChaCha8Rng, n: usize) -> Witness {
    let weights: Vec<Rational> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.25) {
                ratio(rng.gen_range(2..=24), 2)
            } else {
                int(rng.gen_range(1..=12))
            }
        })
        .collect();
    witness_from_weights(rng, weights)
}

/// Valid witness for the given weights with up to three random intervals.
pub fn witness_from_weights(rng: &mut ChaCha8Rng, weights: Vec<Rational>) -> Witness {
    let n = weights.len();
    let mut sums: Vec<Rational> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            sums.push(&weights[u] + &weights[v]);
        }
    }
    sums.sort();
    sums.dedup();
    let k = rng.gen_range(0..=3.min(sums.len()));
    let mut picks: Vec<usize> = (0..sums.len()).collect();
    picks.shuffle(rng);
    let mut chosen: Vec<usize> = picks.into_iter().take(2 * k).collect();
    chosen.sort();
    let mut intervals = Vec::new();
    for pair in chosen.chunks(2) {
        let (lo, hi) = match pair {
            [a, b] => (*a, *b),
            [a] => (*a, *a),
            _ => unreachable!(),
        };
        // Sometimes shrink to a point interval.
        let hi = if rng.gen_bool(0.2) { lo } else { hi };
        intervals.push(Interval::new(sums[lo].clone(), sums[hi].clone()).unwrap());
    }
    let intervals = IntervalSet::new(intervals).unwrap();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if intervals.contains(&(&weights[u] + &weights[v])) {
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, edges).unwrap();
    Witness::new(g, weights, intervals).unwrap()
}

/// Random tree: vertex `i` hangs off a random earlier vertex.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    shuffled(rng, &Graph::from_edges(n, edges).unwrap())
}

/// Random caterpillar on `n` vertices with random labels.
pub fn random_caterpillar(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let spine = rng.gen_range(1..=n.saturating_sub(1).max(1));
    let mut edges: Vec<(Vertex, Vertex)> = (1..spine).map(|i| (i - 1, i)).collect();
    for v in spine..n {
        edges.push((rng.gen_range(0..spine), v));
    }
    shuffled(rng, &Graph::from_edges(n, edges).unwrap())
}

/// Random lobster: a caterpillar whose vertices get extra leaves.
pub fn random_lobster(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let base = rng.gen_range(1..=n.div_ceil(2).max(1));
    let cat = random_caterpillar(rng, base);
    let mut edges: Vec<(Vertex, Vertex)> = cat.edges().collect();
    for v in base..n {
        edges.push((rng.gen_range(0..base), v));
    }
    shuffled(rng, &Graph::from_edges(n, edges).unwrap())
}

/// Random forest: random trees on a random partition of the vertices.
pub fn random_forest(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        // Roughly one root in five.
        if rng.gen_bool(0.8) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    shuffled(rng, &Graph::from_edges(n, edges).unwrap())
}

/// Random simple graph with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn shuffled(rng: &mut ChaCha8Rng, g: &Graph) -> Graph {
    let mut map: Vec<Vertex> = (0..g.n()).collect();
    map.shuffle(rng);
    g.relabeled(&map).unwrap()
}

/// All-pairs distances by Floyd-Warshall; `None` between components.
pub fn apsp(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for u in 0..n {
        d[u][u] = Some(0);
        for v in 0..n {
            if g.has_edge(u, v) {
                d[u][v] = Some(1);
            }
        }
    }
    for m in 0..n {
        for u in 0..n {
            for v in 0..n {
                if let (Some(a), Some(b)) = (d[u][m], d[m][v]) {
                    if d[u][v].is_none_or(|c| a + b < c) {
                        d[u][v] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Radius by the definition: per component the least eccentricity, then the
/// largest of those.
pub fn radius_oracle(g: &Graph) -> usize {
    let d = apsp(g);
    let n = g.n();
    let mut best_per_comp = vec![usize::MAX; n];
    for u in 0..n {
        let ecc = (0..n).filter_map(|v| d[u][v]).max().unwrap_or(0);
        let comp = (0..n).find(|&v| d[u][v].is_some()).unwrap();
        best_per_comp[comp] = best_per_comp[comp].min(ecc);
    }
    best_per_comp
        .into_iter()
        .filter(|&r| r != usize::MAX)
        .max()
        .unwrap_or(0)
}

/// Caterpillar test by leaf deletion: a tree is a caterpillar when the
/// non-leaf vertices induce a path (or nothing).
pub fn is_caterpillar_oracle(g: &Graph) -> bool {
    if !is_tree_oracle(g) {
        return false;
    }
    let core: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) > 1).collect();
    is_path_or_empty(&g.induced(&core))
}

/// Lobster test: deleting all leaves leaves a caterpillar (or nothing).
pub fn is_lobster_oracle(g: &Graph) -> bool {
    if !is_tree_oracle(g) {
        return false;
    }
    let core: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) > 1).collect();
    let h = g.induced(&core);
    h.n() <= 1 || is_caterpillar_oracle(&h)
}

pub fn is_tree_oracle(g: &Graph) -> bool {
    g.n() >= 1 && g.edge_count() == g.n() - 1 && apsp(g)[0].iter().all(Option::is_some)
}

fn is_path_or_empty(h: &Graph) -> bool {
    h.n() <= 1 || (is_tree_oracle(h) && (0..h.n()).all(|v| h.degree(v) <= 2))
}

/// Fewest intervals for fixed weights, by trying every set of `k` intervals
/// with endpoints among the edge sums.
pub fn min_intervals_oracle(g: &Graph, weights: &[Rational]) -> Option<usize> {
    let mut edge_sums: Vec<Rational> = g.edges().map(|(u, v)| &weights[u] + &weights[v]).collect();
    if edge_sums.is_empty() {
        return Some(0);
    }
    edge_sums.sort();
    edge_sums.dedup();
    let non_edge: Vec<Rational> = g
        .non_edges()
        .map(|(u, v)| &weights[u] + &weights[v])
        .collect();
    let all_edges: Vec<Rational> = g.edges().map(|(u, v)| &weights[u] + &weights[v]).collect();
    let m = edge_sums.len();
    let candidates: Vec<Span> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    (1..=m).find(|&k| {
        choose(&candidates, k, 0, &mut Vec::new(), &mut |set| {
            let inside = |s: &Rational| {
                set.iter()
                    .any(|&(i, j)| &edge_sums[i] <= s && s <= &edge_sums[j])
            };
            all_edges.iter().all(inside) && !non_edge.iter().any(inside)
        })
    })
}

/// A candidate interval as indices into the sorted edge sums.
type Span = (usize, usize);

fn choose(
    items: &[Span],
    k: usize,
    start: usize,
    cur: &mut Vec<Span>,
    ok: &mut dyn FnMut(&[Span]) -> bool,
) -> bool {
    if cur.len() == k {
        return ok(cur);
    }
    for i in start..items.len() {
        cur.push(items[i]);
        if choose(items, k, i + 1, cur, ok) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Whether two distinct vertex pairs share a sum.
pub fn has_tied_sums(w: &Witness) -> bool {
    let mut sums: Vec<Rational> = w.graph().pairs().map(|(u, v)| w.pair_sum(u, v)).collect();
    sums.sort();
    sums.windows(2).any(|p| p[0] == p[1])
}
