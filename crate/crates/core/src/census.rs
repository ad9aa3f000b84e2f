//! Exhaustive enumeration of small labeled graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CENSUS_MAX_N: usize = 6;

/// All `2^C(n,2)` labeled graphs on `n` vertices, ordered by edge mask where
/// bit `i` selects the `i`-th pair in lexicographic order.
pub fn all_labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if !(1..=CENSUS_MAX_N).contains(&n) {
        return Err(Error::Argument(format!(
            "census supports 1 <= n <= {CENSUS_MAX_N}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = Graph::empty(n)?.pairs().collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).map(move |mask| graph_from_mask(n, &pairs, mask)))
}

pub(crate) fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    Graph::from_edges(
        n,
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p),
    )
    .expect("pairs are distinct and in range")
}
