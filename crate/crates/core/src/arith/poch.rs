use num::bigint::BigInt;
use num::{One, Zero};

use super::{AffineMu, LinProd, PolyMu, RatFuncMu, Rational};
use crate::error::Result;

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// (base)_len for any integer length. Negative lengths use (a)_{-b} = 1/(a-b)_b;
/// a vanishing constant factor in that denominator is a pole.
pub fn poch(base: &AffineMu, len: i64) -> Result<RatFuncMu> {
    Ok(LinProd::poch(base, len)?.to_ratfunc())
}

/// Rising factorial as a polynomial (len ≥ 0).
pub fn poch_poly(base: &AffineMu, len: u64) -> PolyMu {
    let mut acc = PolyMu::one();
    for k in 0..len {
        acc = &acc * &base.plus_int(k as i64).to_poly();
    }
    acc
}

/// Binomial coefficient with an affine upper index and an integer lower
/// index. A negative lower index gives 0, the limit of the gamma-function
/// definition at the pole of Γ(y+1).
pub fn gbinom(upper: &AffineMu, lower: i64) -> PolyMu {
    if lower < 0 {
        return PolyMu::zero();
    }
    let base = upper.plus_int(1 - lower);
    poch_poly(&base, lower as u64).scale(&Rational::new(BigInt::one(), factorial(lower as u64)))
}

/// Coefficient of ε in binom(x + 2ε, k + ε) for k ≤ −1; the constant term is 0.
/// Equals (−1)^(k+1) (−k−1)! / (x+1)_{−k}.
pub fn gbinom_eps_first_order(x: &AffineMu, k: i64) -> Result<RatFuncMu> {
    assert!(k <= -1, "first-order coefficient is only defined for negative lower index");
    let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
    let mut p = LinProd::from_rational(Rational::from_integer(factorial((-k - 1) as u64) * sign));
    p.mul_poch(&x.plus_int(1), -k, -1)?;
    Ok(p.to_ratfunc())
}

/// (binom(x+1, y), binom(x, y), binom(x, y−1)); the first minus the second is the third.
pub fn pascal_step(x: &AffineMu, y: i64) -> (PolyMu, PolyMu, PolyMu) {
    (gbinom(&x.plus_int(1), y), gbinom(x, y), gbinom(x, y - 1))
}

/// Σ_{ℓ=0}^{j−1} binom(x+ℓ, y+ℓ), which telescopes to binom(x+j, y+j−1) − binom(x, y−1).
pub fn pascal_sum(x: &AffineMu, y: i64, j: u64) -> PolyMu {
    let mut acc = PolyMu::zero();
    for l in 0..j as i64 {
        acc = &acc + &gbinom(&x.plus_int(l), y + l);
    }
    acc
}

/// Closed side of the telescoped sum.
pub fn pascal_sum_closed(x: &AffineMu, y: i64, j: u64) -> PolyMu {
    &gbinom(&x.plus_int(j as i64), y + j as i64 - 1) - &gbinom(x, y - 1)
}

/// Integer binomial coefficient, zero for k < 0 or k > n ≥ 0.
pub fn binom_int(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    gbinom(&AffineMu::from_int(n), k).constant_term().to_integer()
}

pub fn rat_binom(x: &Rational, k: i64) -> Rational {
    gbinom(&AffineMu::constant(x.clone()), k).constant_term()
}
