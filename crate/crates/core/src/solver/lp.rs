//! Exact feasibility for small linear systems `A x >= b`, `x >= 0`, with
//! integer data.
//!
//! Phase one of the simplex method on an integer-preserving dictionary
//! (every row shares one denominator, the current basis determinant, so
//! each pivot update is an exact integer division). Bland's rule prevents
//! cycling. Arithmetic runs in `i128` with overflow checks and restarts in
//! `BigInt` if a check trips.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// One constraint `sum coeffs[j].1 * x[coeffs[j].0] >= rhs`; repeated
/// variables add up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<(usize, i64)>,
    pub rhs: i64,
}

impl Row {
    pub fn new(coeffs: Vec<(usize, i64)>, rhs: i64) -> Self {
        Row { coeffs, rhs }
    }
}

/// A system over `vars` non-negative variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearSystem {
    pub vars: usize,
    pub rows: Vec<Row>,
}

/// Feasible point as integer numerators over one positive denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledPoint {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl ScaledPoint {
    pub fn to_rationals(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|x| Rational::new(x.clone(), self.den.clone()))
            .collect()
    }
}

/// Returns an exact feasible point of `sys`, or `None` if it is infeasible.
pub fn lp_feasible(sys: &LinearSystem) -> Option<Vec<Rational>> {
    solve(sys.vars, &sys.rows).map(|p| p.to_rationals())
}

pub(crate) fn solve(vars: usize, rows: &[Row]) -> Option<ScaledPoint> {
    match Dictionary::<i128>::run(vars, rows) {
        Ok(result) => result.map(|(num, den)| ScaledPoint {
            num: num.into_iter().map(BigInt::from).collect(),
            den: BigInt::from(den),
        }),
        Err(Overflow) => Dictionary::<BigInt>::run(vars, rows)
            .expect("big integers do not overflow")
            .map(|(num, den)| ScaledPoint { num, den }),
    }
}

#[derive(Debug)]
struct Overflow;

trait Exact: Clone + Ord + Sized {
    fn from_i64(v: i64) -> Self;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn neg(&self) -> Result<Self, Overflow>;
    fn mul(&self, o: &Self) -> Result<Self, Overflow>;
    /// `(p * a - q * b) / d`, where the division is known to be exact.
    fn cross_div(p: &Self, a: &Self, q: &Self, b: &Self, d: &Self) -> Result<Self, Overflow>;
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_positive(&self) -> bool {
        *self > 0
    }
    fn neg(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn cross_div(p: &Self, a: &Self, q: &Self, b: &Self, d: &Self) -> Result<Self, Overflow> {
        let lhs = p.checked_mul(*a).ok_or(Overflow)?;
        let rhs = q.checked_mul(*b).ok_or(Overflow)?;
        let diff = lhs.checked_sub(rhs).ok_or(Overflow)?;
        debug_assert_eq!(diff % d, 0);
        Ok(diff / d)
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn cross_div(p: &Self, a: &Self, q: &Self, b: &Self, d: &Self) -> Result<Self, Overflow> {
        let diff = p * a - q * b;
        let (quot, rem) = diff.div_rem(d);
        debug_assert!(Zero::is_zero(&rem));
        Ok(quot)
    }
}

/// Dictionary `den * x_basic[i] = t[i][0] + sum_j t[i][j] * x_nonbasic[j-1]`.
/// Variable ids: 0 is the auxiliary variable, `1..=vars` the structural
/// ones, then one slack per row. Row `m` is the objective `-x_aux`.
struct Dictionary<T> {
    t: Vec<Vec<T>>,
    den: T,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

type Solution<T> = Option<(Vec<T>, T)>;

impl<T: Exact> Dictionary<T> {
    fn run(vars: usize, rows: &[Row]) -> Result<Solution<T>, Overflow> {
        if rows.iter().all(|r| r.rhs <= 0) {
            return Ok(Some((vec![T::zero(); vars], T::one())));
        }
        let m = rows.len();
        let width = vars + 2;
        let mut t = Vec::with_capacity(m + 1);
        for r in rows {
            let mut dense = vec![0i64; vars];
            for &(j, a) in &r.coeffs {
                assert!(j < vars, "coefficient for variable {j} out of range");
                dense[j] += a;
            }
            let mut line = vec![T::zero(); width];
            line[0] = T::from_i64(-r.rhs);
            for (j, a) in dense.into_iter().enumerate() {
                line[j + 1] = T::from_i64(a);
            }
            line[vars + 1] = T::one();
            t.push(line);
        }
        let mut obj = vec![T::zero(); width];
        obj[vars + 1] = T::from_i64(-1);
        t.push(obj);

        let mut d = Dictionary {
            t,
            den: T::one(),
            basic: (0..m).map(|i| vars + 1 + i).collect(),
            // Column j (1-based) holds structural variable j; the last holds
            // the auxiliary variable.
            nonbasic: (1..=vars).chain([0]).collect(),
        };
        let aux_col = vars + 1;
        let mut r = 0;
        for i in 1..m {
            if d.t[i][0] < d.t[r][0] {
                r = i;
            }
        }
        d.pivot(r, aux_col)?;

        loop {
            // Once the auxiliary variable is nonbasic it is zero.
            if d.nonbasic.contains(&0) {
                return Ok(Some(d.point(vars)));
            }
            let Some(e) = d.entering() else {
                return Ok(if d.t[m][0].is_zero() {
                    Some(d.point(vars))
                } else {
                    None
                });
            };
            let r = d.leaving(e)?.expect("the auxiliary objective is bounded");
            d.pivot(r, e)?;
        }
    }

    /// Bland's rule: the smallest variable id with a positive objective
    /// coefficient.
    fn entering(&self) -> Option<usize> {
        let obj = self.t.last().expect("objective row");
        (1..obj.len())
            .filter(|&j| obj[j].is_positive())
            .min_by_key(|&j| self.nonbasic[j - 1])
    }

    fn leaving(&self, e: usize) -> Result<Option<usize>, Overflow> {
        let m = self.basic.len();
        let mut best: Option<usize> = None;
        for i in 0..m {
            if !self.t[i][e].is_negative() {
                continue;
            }
            best = Some(match best {
                None => i,
                Some(b) => {
                    // t[i][0] / -t[i][e] against t[b][0] / -t[b][e].
                    let lhs = self.t[i][0].mul(&self.t[b][e].neg()?)?;
                    let rhs = self.t[b][0].mul(&self.t[i][e].neg()?)?;
                    match lhs.cmp(&rhs) {
                        std::cmp::Ordering::Less => i,
                        std::cmp::Ordering::Equal if self.basic[i] < self.basic[b] => i,
                        _ => b,
                    }
                }
            });
        }
        Ok(best)
    }

    fn pivot(&mut self, r: usize, e: usize) -> Result<(), Overflow> {
        let p = self.t[r][e].clone();
        let width = self.t[r].len();
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let q = row[e].clone();
            for j in 0..width {
                if j != e {
                    row[j] = T::cross_div(&p, &row[j], &q, &pivot_row[j], &self.den)?;
                }
            }
        }
        let row = &mut self.t[r];
        for j in 0..width {
            row[j] = if j == e {
                self.den.clone()
            } else {
                pivot_row[j].neg()?
            };
        }
        if p.is_negative() {
            for row in &mut self.t {
                for x in row.iter_mut() {
                    *x = x.neg()?;
                }
            }
            self.den = p.neg()?;
        } else {
            self.den = p;
        }
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[e - 1]);
        Ok(())
    }

    fn point(&self, vars: usize) -> (Vec<T>, T) {
        let mut num = vec![T::zero(); vars];
        for (i, &v) in self.basic.iter().enumerate() {
            if (1..=vars).contains(&v) {
                num[v - 1] = self.t[i][0].clone();
            }
        }
        (num, self.den.clone())
    }
}

/// Numerators that fit comfortably in `i128`, for cheap point checks.
pub(crate) fn small(x: &BigInt) -> Option<i128> {
    let v = x.to_i128()?;
    (v.unsigned_abs() < 1 << 100).then_some(v)
}
