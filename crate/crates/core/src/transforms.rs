//! Rewrites of a witness that keep the certified graph: reflection,
//! normal-form perturbation and pair-sum separation. Every output is
//! verified before it is returned.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::rational::{format_rational, int, ratio, Rational};
use crate::witness::{check_normal_form, verify, Interval, IntervalSet, Witness};

fn require_valid(w: &Witness) -> Result<()> {
    let report = verify(w);
    if report.valid {
        Ok(())
    } else {
        Err(Error::InvalidWitness(Box::new(report)))
    }
}

/// Reflection center used by [`mirror`] when none is given: `b_k` when it
/// exceeds every weight, otherwise `max weight + 1`.
pub fn default_mirror_center(w: &Witness) -> Rational {
    let max_w = w.max_weight().cloned().unwrap_or_else(Rational::zero);
    match w.intervals().last() {
        Some(last) if last.hi() > &max_w => last.hi().clone(),
        _ => max_w + Rational::one(),
    }
}

/// Reflects weights around `c` (`w'(u) = c - w(u)`) and intervals around
/// `2c`, which exchanges left-free and right-free witnesses.
pub fn mirror(w: &Witness, c: Option<Rational>) -> Result<Witness> {
    require_valid(w)?;
    let c = c.unwrap_or_else(|| default_mirror_center(w));
    if let Some(max_w) = w.max_weight() {
        if &c <= max_w {
            return Err(Error::Argument(format!(
                "mirror center {} does not exceed the largest weight {}",
                format_rational(&c),
                format_rational(max_w)
            )));
        }
    }
    let two_c = &c + &c;
    if let Some(last) = w.intervals().last() {
        if last.hi() >= &two_c {
            return Err(Error::Argument(format!(
                "mirror center {} reflects interval {last} below zero",
                format_rational(&c)
            )));
        }
    }
    let weights = w.weights().iter().map(|x| &c - x).collect();
    let intervals = w
        .intervals()
        .iter()
        .rev()
        .map(|iv| Interval::new(&two_c - iv.hi(), &two_c - iv.lo()))
        .collect::<Result<Vec<_>>>()?;
    Witness::new(w.graph().clone(), weights, IntervalSet::new(intervals)?)?.verified()
}

/// Every interval `[a, b]` widened to `[a, b + eps]`.
fn extend_intervals(intervals: &IntervalSet, eps: &Rational) -> Result<IntervalSet> {
    IntervalSet::new(
        intervals
            .iter()
            .map(|iv| Interval::new(iv.lo().clone(), iv.hi() + eps))
            .collect::<Result<Vec<_>>>()?,
    )
}

fn abs(x: Rational) -> Rational {
    if x < Rational::zero() {
        -x
    } else {
        x
    }
}

/// Smallest positive element, if any.
fn min_positive(values: impl IntoIterator<Item = Rational>) -> Option<Rational> {
    values.into_iter().filter(|d| d > &Rational::zero()).min()
}

/// Perturbation step size for vertex `x` during normalization.
fn normalize_step(w: &Witness, x: Vertex) -> Rational {
    let weights = w.weights();
    let n = weights.len();
    let endpoints: Vec<&Rational> = w.intervals().endpoints().collect();

    // Distance of each non-edge sum to every interval endpoint.
    let delta1 = min_positive(
        w.non_edge_sums()
            .iter()
            .flat_map(|s| endpoints.iter().map(move |e| abs(s - *e))),
    );
    // Distinct weights differ from w(x) by at least this.
    let delta2 = min_positive((0..n).map(|y| abs(&weights[x] - &weights[y])));
    // Triples (u1; u2, u3) touching x with 2 w(u1) != w(u2) + w(u3).
    let mut delta3: Option<Rational> = None;
    for u1 in 0..n {
        let twice = &weights[u1] + &weights[u1];
        for u2 in 0..n {
            for u3 in u2 + 1..n {
                if u1 != x && u2 != x && u3 != x {
                    continue;
                }
                let d = abs(&twice - &weights[u2] - &weights[u3]);
                if d > Rational::zero() && delta3.as_ref().is_none_or(|m| &d < m) {
                    delta3 = Some(d);
                }
            }
        }
    }
    // Gaps between consecutive intervals, so widening never makes them touch.
    let gap = min_positive(
        w.intervals()
            .as_slice()
            .windows(2)
            .map(|p| p[1].lo() - p[0].hi()),
    );
    [delta1, delta2, delta3, gap]
        .into_iter()
        .flatten()
        .min()
        .map(|m| m * ratio(1, 4))
        // All weights equal and no non-edges: any shift separates x.
        .unwrap_or_else(|| &weights[x] * ratio(1, 4))
}

/// Perturbs a valid witness into normal form: pairwise distinct weights and
/// no `2 w(x)` equal to the sum of two other vertices. The interval count
/// and left/right freeness are preserved.
pub fn normalize(w: &Witness) -> Result<Witness> {
    require_valid(w)?;
    let mut cur = w.clone();
    let mut violators = check_normal_form(cur.weights()).violators;
    while let Some(&x) = violators.last() {
        let eps = normalize_step(&cur, x);
        let mut weights = cur.weights().to_vec();
        weights[x] += &eps;
        let intervals = extend_intervals(cur.intervals(), &eps)?;
        let next = Witness::new(cur.graph().clone(), weights, intervals)?;
        let report = verify(&next);
        if !report.valid {
            return Err(Error::Internal(format!(
                "normalization step on vertex {x} (eps {}) broke the witness: {report}",
                format_rational(&eps)
            )));
        }
        let next_violators = check_normal_form(next.weights()).violators;
        if next_violators.len() >= violators.len() {
            return Err(Error::Internal(format!(
                "normalization step on vertex {x} did not reduce violators {:?} -> {:?}",
                violators, next_violators
            )));
        }
        cur = next;
        violators = next_violators;
    }
    Ok(cur)
}

/// Two distinct pairs with the same sum, if any.
fn find_tie(w: &Witness) -> Option<((Vertex, Vertex), (Vertex, Vertex))> {
    let mut sums: Vec<(Rational, (Vertex, Vertex))> = w
        .graph()
        .pairs()
        .map(|(u, v)| (w.pair_sum(u, v), (u, v)))
        .collect();
    sums.sort();
    sums.windows(2)
        .find(|p| p[0].0 == p[1].0)
        .map(|p| (p[0].1, p[1].1))
}

/// Perturbs weights until all pair sums are distinct, keeping the graph and
/// the interval count.
pub fn separate_pair_sums(w: &Witness) -> Result<Witness> {
    require_valid(w)?;
    let mut cur = w.clone();
    while let Some((p, q)) = find_tie(&cur) {
        // A vertex of p outside q: moving it shifts p but not q.
        let x = if p.0 != q.0 && p.0 != q.1 { p.0 } else { p.1 };
        let mut values: Vec<Rational> = cur
            .graph()
            .pairs()
            .map(|(u, v)| cur.pair_sum(u, v))
            .chain(cur.intervals().endpoints().cloned())
            .collect();
        values.sort();
        values.dedup();
        let eps = values
            .windows(2)
            .map(|p| &p[1] - &p[0])
            .min()
            .unwrap_or_else(int_one)
            * ratio(1, 5);
        let mut weights = cur.weights().to_vec();
        weights[x] += &eps;
        let intervals = extend_intervals(cur.intervals(), &eps)?;
        let next = Witness::new(cur.graph().clone(), weights, intervals)?;
        let report = verify(&next);
        if !report.valid {
            return Err(Error::Internal(format!(
                "pair-sum separation on vertex {x} broke the witness: {report}"
            )));
        }
        cur = next;
    }
    Ok(cur)
}

fn int_one() -> Rational {
    int(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::witness::{classify_free, min_intervals, FreeClass};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn ivs(v: &[(Rational, Rational)]) -> IntervalSet {
        IntervalSet::new(
            v.iter()
                .map(|(a, b)| Interval::new(a.clone(), b.clone()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn iv(a: i64, b: i64) -> (Rational, Rational) {
        (int(a), int(b))
    }

    fn k2() -> Witness {
        Witness::new(Graph::complete(2).unwrap(), ints(&[1, 1]), ivs(&[iv(2, 2)])).unwrap()
    }

    fn p3() -> Witness {
        Witness::new(
            Graph::path(3).unwrap(),
            ints(&[1, 2, 4]),
            ivs(&[iv(3, 3), iv(6, 6)]),
        )
        .unwrap()
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror(&k2(), Some(int(2))).unwrap(), k2());
        let m = mirror(&p3(), Some(int(5))).unwrap();
        assert_eq!(m.weights(), &ints(&[4, 3, 1])[..]);
        assert_eq!(m.intervals(), &ivs(&[iv(4, 4), iv(7, 7)]));
        assert_eq!(mirror(&m, Some(int(5))).unwrap(), p3());
    }

    #[test]
    fn mirror_default_center_and_errors() {
        // b_k = 6 exceeds every weight, so c = 6.
        let m = mirror(&p3(), None).unwrap();
        assert_eq!(m.weights(), &ints(&[5, 4, 2])[..]);
        // K2 (1,1): b_k = 2 > 1, c = 2.
        assert_eq!(mirror(&k2(), None).unwrap(), k2());
        assert!(matches!(
            mirror(&p3(), Some(int(4))),
            Err(Error::Argument(_))
        ));
        let wide = Witness::new(
            Graph::complete(2).unwrap(),
            ints(&[1, 1]),
            ivs(&[iv(1, 100)]),
        )
        .unwrap();
        assert!(mirror(&wide, Some(int(2))).is_err());
        assert!(verify(&mirror(&wide, None).unwrap()).valid);
    }

    #[test]
    fn mirror_swaps_freeness() {
        let right =
            Witness::new(Graph::path(3).unwrap(), ints(&[1, 3, 2]), ivs(&[iv(4, 5)])).unwrap();
        assert_eq!(classify_free(&right).unwrap(), FreeClass::RightFree);
        let m = mirror(&right, None).unwrap();
        assert_eq!(classify_free(&m).unwrap(), FreeClass::LeftFree);
    }

    #[test]
    fn normalize_cherry() {
        // 0 - 1 - 2 with center weight 2 and leaves weight 1.
        let w = Witness::new(Graph::path(3).unwrap(), ints(&[1, 2, 1]), ivs(&[iv(3, 3)])).unwrap();
        let n = normalize(&w).unwrap();
        assert_eq!(n.weights(), &[int(1), int(2), ratio(5, 4)][..]);
        assert_eq!(n.intervals(), &ivs(&[(int(3), ratio(13, 4))]));
        assert!(check_normal_form(n.weights()).is_normal);
    }

    #[test]
    fn normalize_already_normal_and_k2() {
        assert_eq!(normalize(&p3()).unwrap(), p3());
        let n = normalize(&k2()).unwrap();
        assert!(verify(&n).valid);
        assert!(check_normal_form(n.weights()).is_normal);
        assert_eq!(n.k(), 1);
        assert!(n.intervals().last().unwrap().hi() > &int(2));
    }

    #[test]
    fn separate_examples() {
        let k3 = Witness::new(
            Graph::complete(3).unwrap(),
            ints(&[1, 1, 1]),
            ivs(&[iv(2, 2)]),
        )
        .unwrap();
        let s = separate_pair_sums(&k3).unwrap();
        assert_eq!(s.k(), 1);
        assert!(find_tie(&s).is_none());
        let mut ws = s.weights().to_vec();
        ws.sort();
        ws.dedup();
        assert_eq!(ws.len(), 3);
        assert_eq!(separate_pair_sums(&p3()).unwrap(), p3());
    }

    #[test]
    fn separate_keeps_min_intervals() {
        // P4 whose two end edges share the sum 5.
        let w = Witness::new(
            Graph::path(4).unwrap(),
            ints(&[1, 4, 2, 3]),
            ivs(&[iv(5, 6)]),
        );
        let w = w.unwrap();
        assert!(verify(&w).valid);
        let s = separate_pair_sums(&w).unwrap();
        assert!(find_tie(&s).is_none());
        assert_eq!(
            min_intervals(s.graph(), s.weights()).unwrap().len(),
            min_intervals(w.graph(), w.weights()).unwrap().len()
        );
    }
}
