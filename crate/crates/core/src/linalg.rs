//! Exact linear algebra over the rationals.
//!
//! Rank and solving go through fraction-free (Bareiss) elimination on an
//! integer matrix obtained by clearing denominators row by row. Nothing here
//! has a tolerance.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{denominator_lcm, Rational};

/// Scales a rational row to a primitive-free integer row with the same kernel.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(row);
    row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
}

/// In-place Bareiss elimination to row echelon form. Returns the pivot
/// column of each leading row.
fn bareiss(m: &mut [Vec<BigInt>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in (c + 1)..cols {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    bareiss(&mut m).len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Inconsistent,
    /// Consistent with a positive-dimensional solution set.
    Underdetermined,
}

/// Solves `A x = b` exactly.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], unknowns: usize) -> Solution {
    assert_eq!(a.len(), b.len());
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), unknowns);
            let mut full = row.clone();
            full.push(rhs.clone());
            integer_row(&full)
        })
        .collect();
    let pivots = bareiss(&mut m);
    if pivots.last() == Some(&unknowns) {
        return Solution::Inconsistent;
    }
    if pivots.len() < unknowns {
        return Solution::Underdetermined;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_integer(m[r][unknowns].clone());
        for j in (c + 1)..unknowns {
            acc -= Rational::from_integer(m[r][j].clone()) * &x[j];
        }
        x[c] = acc / Rational::from_integer(m[r][c].clone());
    }
    Solution::Unique(x)
}

/// A set of linearly independent integer vectors kept in echelon form, with
/// push/pop for backtracking searches.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    vectors: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Adds `v` if it is independent of the current vectors.
    pub fn try_push(&mut self, mut v: Vec<BigInt>) -> bool {
        for (pivot, b) in &self.vectors {
            if v[*pivot].is_zero() {
                continue;
            }
            let vp = v[*pivot].clone();
            let bp = &b[*pivot];
            for (x, y) in v.iter_mut().zip(b) {
                *x = bp * &*x - &vp * y;
            }
            make_primitive(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.vectors.push((pivot, v));
                true
            }
            None => false,
        }
    }

    pub fn pop(&mut self) {
        self.vectors.pop();
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Integer columns of a rational matrix after clearing denominators row by
/// row. Column dependence is unchanged by row scaling.
pub fn integer_columns(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<BigInt>> {
    let int_rows: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    (0..cols)
        .map(|c| int_rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Finds some `x >= 0` with `A x = b`, or reports infeasibility, by phase-one
/// simplex with Bland's rule on an exact tableau.
pub fn nonnegative_feasible_point(
    a: &[Vec<Rational>],
    b: &[Rational],
    n: usize,
) -> Option<Vec<Rational>> {
    let m = a.len();
    // Tableau columns: n originals, m artificials, rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let sign = if rhs.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut r = vec![Rational::zero(); width];
        for (j, q) in row.iter().enumerate() {
            r[j] = q * &sign;
        }
        r[n + i] = Rational::one();
        r[width - 1] = rhs * &sign;
        t.push(r);
    }
    // Objective row: minimise the sum of artificials, stored as reduced costs.
    let mut obj = vec![Rational::zero(); width];
    for r in &t {
        for j in 0..n {
            obj[j] -= &r[j];
        }
        obj[width - 1] -= &r[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (pr, _) = leave.expect("phase-one objective is bounded below");
        let pv = t[pr][enter].clone();
        for x in t[pr].iter_mut() {
            *x /= &pv;
        }
        let pivot_row = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[pr] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}
