//! Fraction-free elimination over Z[μ].

use num::bigint::BigInt;
use num::{Integer, One};

use crate::arith::{IntPoly, PolyMu, RatFuncMu, Rational};
use crate::error::{Error, Result};

/// Determinant by Bareiss elimination; every division is exact.
/// Pivot: first nonzero entry scanning down the column.
pub fn det_int(mut a: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = a.len();
    if n == 0 {
        return IntPoly::constant(BigInt::one());
    }
    let mut negate = false;
    let mut prev = IntPoly::constant(BigInt::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&p| !a[p][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return IntPoly::zero(),
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let piv = &pivot_row[k];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let v = piv.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Fraction-free Gauss-Jordan on [A | b]. Returns x with A·x = b.
pub fn solve_int(mut a: Vec<Vec<IntPoly>>) -> Result<Vec<RatFuncMu>> {
    let n = a.len();
    let mut prev = IntPoly::constant(BigInt::one());
    for k in 0..n {
        let p = (k..n).find(|&p| !a[p][k].is_zero()).ok_or(Error::Singular)?;
        a.swap(k, p);
        let pivot_row = a[k].clone();
        let piv = &pivot_row[k];
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let lead = row[k].clone();
            for j in 0..=n {
                if j == k {
                    continue;
                }
                let v = piv.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev).expect("fraction-free division is exact");
            }
            row[k] = IntPoly::zero();
        }
        prev = pivot_row[k].clone();
    }
    (0..n)
        .map(|i| RatFuncMu::new(PolyMu::from_int_poly(&a[i][n]), PolyMu::from_int_poly(&a[i][i])))
        .collect()
}

/// Scales one line (row or column) of rational functions to integer
/// polynomials. Returns the scaled entries and the scale s, so that
/// scaled = s · original.
pub fn clear_line(line: &[&RatFuncMu]) -> (Vec<IntPoly>, RatFuncMu) {
    let mut l = PolyMu::one();
    for e in line {
        if !e.denom().is_one() {
            let g = l.gcd(e.denom());
            l = &l * &e.denom().div_exact(&g).expect("gcd divides");
        }
    }
    let polys: Vec<PolyMu> = line
        .iter()
        .map(|e| {
            if e.denom().is_one() {
                &l * e.numer()
            } else {
                &e.numer().clone() * &l.div_exact(e.denom()).expect("lcm is a multiple")
            }
        })
        .collect();
    let mut den = BigInt::one();
    for p in &polys {
        for c in p.coeffs() {
            den = den.lcm(c.denom());
        }
    }
    let ints = polys
        .iter()
        .map(|p| IntPoly::new(p.coeffs().iter().map(|c| (c * &den).to_integer()).collect()))
        .collect();
    let scale = RatFuncMu::from_poly(l.scale(&Rational::from_integer(den)));
    (ints, scale)
}

pub(crate) fn lcm_degree(line: &[&RatFuncMu]) -> usize {
    let mut l = PolyMu::one();
    for e in line {
        if !e.denom().is_one() {
            let g = l.gcd(e.denom());
            l = &l * &e.denom().div_exact(&g).expect("gcd divides");
        }
    }
    l.degree().unwrap_or(0)
}
