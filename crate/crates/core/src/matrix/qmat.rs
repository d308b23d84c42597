//! Linear algebra over Q for numeric-μ work such as recurrence fitting.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in row {
        den = den.lcm(c.denom());
    }
    row.iter().map(|c| (c * &den).to_integer()).collect()
}

/// Fraction-free Gauss-Jordan. Returns the reduced rows, the pivot columns
/// and the common pivot value.
fn echelon(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>, BigInt) {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&p| !a[p][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        let piv = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let lead = row[c].clone();
            for j in 0..ncols {
                if j == c {
                    continue;
                }
                let v = &piv * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots, prev)
}

/// Exact basis of {x : A·x = 0}, one vector per free column, each scaled to
/// coprime integers with a positive last nonzero entry.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (a, pivots, _) = echelon(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![BigInt::zero(); ncols];
        // After full reduction every pivot row shares the same pivot value
        // up to the scaling of rows reduced before their pivot step.
        let mut den = BigInt::one();
        for (i, &pc) in pivots.iter().enumerate() {
            den = den.lcm(&a[i][pc]);
        }
        v[f] = den.clone();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -(&a[i][f] * (&den / &a[i][pc]));
        }
        let mut g = BigInt::zero();
        for x in &v {
            g = g.gcd(x);
        }
        if let Some(last) = v.iter().rev().find(|x| !x.is_zero()) {
            if last.is_negative() {
                g = -g;
            }
        }
        basis.push(v.into_iter().map(|x| Rational::from_integer(x / &g)).collect());
    }
    basis
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    echelon(rows, ncols).1.len()
}

/// Unique solution of a square system over Q.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("square system expected".into()));
    }
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| r.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    let (red, pivots, _) = echelon(&aug, n + 1);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::Singular);
    }
    Ok((0..n).map(|i| Rational::new(red[i][n].clone(), red[i][i].clone())).collect())
}

pub fn det(a: &[Vec<Rational>]) -> Result<Rational> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("square matrix expected".into()));
    }
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut d = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&p| !m[p][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            m.swap(k, p);
            d = -d;
        }
        let piv = m[k][k].clone();
        d *= &piv;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &piv;
            for j in k..n {
                let v = &m[k][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    Ok(d)
}
