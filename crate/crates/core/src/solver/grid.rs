//! Upper bounds from integer weight grids.
//!
//! Evaluates the minimal interval count of every weight vector in
//! `{1..w_max}^n` (or a seeded random sample when the grid is large). Each
//! value found is an upper bound on the star number.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::rational::int;
use crate::witness::{min_intervals, Witness};

/// Grids up to this many vectors are enumerated in full.
pub const GRID_FULL_LIMIT: u64 = 5_000_000;
/// Sample size for larger grids.
pub const GRID_SAMPLES: u64 = 2_000_000;
const GRID_SEED: u64 = 0x5eed_57a2;
const CHUNK: u64 = 1 << 14;

struct Pairs {
    pairs: Vec<(usize, usize, bool)>,
}

impl Pairs {
    fn new(g: &Graph) -> Self {
        Pairs {
            pairs: g.pairs().map(|(u, v)| (u, v, g.has_edge(u, v))).collect(),
        }
    }

    /// Minimal interval count for integer weights, `None` if an edge sum
    /// ties a non-edge sum.
    fn intervals(&self, w: &[i64], scratch: &mut Vec<(i64, bool)>) -> Option<usize> {
        scratch.clear();
        scratch.extend(self.pairs.iter().map(|&(u, v, e)| (w[u] + w[v], e)));
        scratch.sort_unstable();
        let mut runs = 0;
        let mut prev: Option<(i64, bool)> = None;
        for &(s, e) in scratch.iter() {
            if let Some((ps, pe)) = prev {
                if ps == s && pe != e {
                    return None;
                }
            }
            if e && prev.is_none_or(|(_, pe)| !pe) {
                runs += 1;
            }
            prev = Some((s, e));
        }
        Some(runs)
    }
}

fn decode(mut index: u64, n: usize, w_max: i64, out: &mut [i64]) {
    for slot in out.iter_mut().take(n).rev() {
        *slot = (index % w_max as u64) as i64 + 1;
        index /= w_max as u64;
    }
}

/// Best `(k, index)` in `range`, or the first index reaching `floor`.
fn scan(
    pairs: &Pairs,
    n: usize,
    w_max: i64,
    range: std::ops::Range<u64>,
    floor: usize,
    sample_seed: Option<u64>,
) -> Option<(usize, Vec<i64>)> {
    let mut w = vec![1i64; n];
    let mut scratch = Vec::with_capacity(pairs.pairs.len());
    let mut best: Option<(usize, Vec<i64>)> = None;
    let mut rng = sample_seed.map(|s| ChaCha8Rng::seed_from_u64(GRID_SEED ^ s));
    for index in range {
        match rng.as_mut() {
            Some(r) => w.iter_mut().for_each(|x| *x = r.gen_range(1..=w_max)),
            None => decode(index, n, w_max, &mut w),
        }
        if let Some(k) = pairs.intervals(&w, &mut scratch) {
            if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
                best = Some((k, w.clone()));
                if k <= floor {
                    break;
                }
            }
        }
    }
    best
}

/// Smallest interval count over integer weights in `1..=w_max`, with the
/// first vector reaching it (lexicographically first when the grid is
/// enumerated in full). `None` if no vector works.
pub fn grid_upper_bound(g: &Graph, w_max: u32) -> Option<(usize, Witness)> {
    grid_upper_bound_with(g, w_max, cfg!(feature = "parallel"))
}

pub fn grid_upper_bound_with(g: &Graph, w_max: u32, parallel: bool) -> Option<(usize, Witness)> {
    let n = g.n();
    if w_max == 0 {
        return None;
    }
    let w_max = i64::from(w_max);
    let pairs = Pairs::new(g);
    let floor = usize::from(!g.is_edgeless());
    let total = (w_max as u64).checked_pow(n as u32);
    let (count, sampled) = match total {
        Some(t) if t <= GRID_FULL_LIMIT => (t, false),
        _ => (GRID_SAMPLES, true),
    };
    let chunks: Vec<u64> = (0..count.div_ceil(CHUNK)).collect();
    let run_chunk = |c: &u64| {
        let start = c * CHUNK;
        let end = (start + CHUNK).min(count);
        scan(&pairs, n, w_max, start..end, floor, sampled.then_some(*c))
    };

    let results: Vec<Option<(usize, Vec<i64>)>> = if parallel {
        par_chunks(&chunks, floor, &run_chunk)
    } else {
        let mut out = Vec::new();
        for c in &chunks {
            let r = run_chunk(c);
            let done = r.as_ref().is_some_and(|(k, _)| *k <= floor);
            out.push(r);
            if done {
                break;
            }
        }
        out
    };

    // Chunks are in index order, so the first minimum is the earliest.
    let mut best: Option<(usize, Vec<i64>)> = None;
    for (k, w) in results.into_iter().flatten() {
        if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
            best = Some((k, w));
        }
    }
    let (k, w) = best?;
    let weights: Vec<_> = w.into_iter().map(int).collect();
    let intervals = min_intervals(g, &weights)?;
    let witness = Witness::new(g.clone(), weights, intervals).ok()?;
    Some((k, witness))
}

#[cfg(feature = "parallel")]
fn par_chunks<F>(chunks: &[u64], floor: usize, run: &F) -> Vec<Option<(usize, Vec<i64>)>>
where
    F: Fn(&u64) -> Option<(usize, Vec<i64>)> + Sync,
{
    use rayon::prelude::*;
    use std::sync::atomic::{AtomicU64, Ordering};
    // Chunks after the earliest one that reached the floor cannot matter.
    let cutoff = AtomicU64::new(u64::MAX);
    chunks
        .par_iter()
        .map(|c| {
            if *c > cutoff.load(Ordering::Relaxed) {
                return None;
            }
            let r = run(c);
            if r.as_ref().is_some_and(|(k, _)| *k <= floor) {
                cutoff.fetch_min(*c, Ordering::Relaxed);
            }
            r
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn par_chunks<F>(chunks: &[u64], _floor: usize, run: &F) -> Vec<Option<(usize, Vec<i64>)>>
where
    F: Fn(&u64) -> Option<(usize, Vec<i64>)>,
{
    chunks.iter().map(run).collect()
}
