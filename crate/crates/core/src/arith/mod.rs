//! Exact scalars, polynomials and rational functions in the indeterminate μ.

mod affine;
mod intpoly;
mod linprod;
mod poch;
mod poly;
mod ratfunc;

pub use affine::AffineMu;
pub use intpoly::IntPoly;
pub use linprod::LinProd;
pub use poch::{
    binom_int, factorial, gbinom, gbinom_eps_first_order, pascal_step, pascal_sum, pascal_sum_closed,
    poch, poch_poly, rat_binom,
};
pub use poly::PolyMu;
pub use ratfunc::RatFuncMu;

/// Arbitrary-precision rational; text form is `p/q`, or `p` when q = 1.
pub type Rational = num::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    s.trim().parse().map_err(|_| crate::Error::Parse(s.to_string()))
}
