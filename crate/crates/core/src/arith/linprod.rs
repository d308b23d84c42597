//! Products of affine factors kept in factored form:
//! constant · ∏ (μ + c)^e. Every Pochhammer product formula lands here, so
//! cancellation is exponent arithmetic and expansion needs no gcd.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use super::{AffineMu, PolyMu, RatFuncMu, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinProd {
    constant: Rational,
    roots: BTreeMap<Rational, i64>,
}

impl LinProd {
    pub fn one() -> Self {
        LinProd::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        LinProd { constant: c, roots: BTreeMap::new() }
    }

    pub fn from_int(c: i64) -> Self {
        LinProd::from_rational(Rational::from_integer(c.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    /// (μ + c) ↦ exponent; zero exponents are never stored.
    pub fn roots(&self) -> &BTreeMap<Rational, i64> {
        &self.roots
    }

    /// The single affine factor a·μ + b.
    pub fn affine(a: &AffineMu) -> Self {
        let mut p = LinProd::one();
        p.mul_affine(a, 1).expect("positive exponent never divides");
        p
    }

    /// Multiplies by (a·μ + b)^e. A zero constant factor with e < 0 is a pole.
    pub fn mul_affine(&mut self, a: &AffineMu, e: i64) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        if a.slope.is_zero() {
            if a.constant.is_zero() {
                if e < 0 {
                    return Err(Error::Pole("division by a vanishing constant factor".into()));
                }
                self.constant = Rational::zero();
                self.roots.clear();
                return Ok(());
            }
            self.constant *= pow_rat(&a.constant, e);
            return Ok(());
        }
        if self.is_zero() {
            return Ok(());
        }
        self.constant *= pow_rat(&a.slope, e);
        let c = &a.constant / &a.slope;
        let entry = self.roots.entry(c.clone()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.roots.remove(&c);
        }
        Ok(())
    }

    /// Pochhammer symbol (base)_len for any integer length:
    /// (a)_{-b} = 1/(a-b)_b.
    pub fn poch(base: &AffineMu, len: i64) -> Result<Self> {
        let mut p = LinProd::one();
        p.mul_poch(base, len, 1)?;
        Ok(p)
    }

    /// Multiplies by ((base)_len)^e.
    pub fn mul_poch(&mut self, base: &AffineMu, len: i64, e: i64) -> Result<()> {
        if len >= 0 {
            for k in 0..len {
                self.mul_affine(&base.plus_int(k), e)?;
            }
        } else {
            let start = base.plus_int(len);
            for k in 0..(-len) {
                self.mul_affine(&start.plus_int(k), -e)?;
            }
        }
        Ok(())
    }

    pub fn mul_rational(&mut self, c: &Rational) {
        self.constant *= c;
        if c.is_zero() {
            self.roots.clear();
        }
    }

    pub fn mul(&self, o: &LinProd) -> LinProd {
        if self.is_zero() || o.is_zero() {
            return LinProd::from_rational(Rational::zero());
        }
        let mut out = self.clone();
        out.constant *= &o.constant;
        for (c, e) in &o.roots {
            let entry = out.roots.entry(c.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                out.roots.remove(c);
            }
        }
        out
    }

    pub fn recip(&self) -> Result<LinProd> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(LinProd {
            constant: self.constant.recip(),
            roots: self.roots.iter().map(|(c, e)| (c.clone(), -e)).collect(),
        })
    }

    pub fn div(&self, o: &LinProd) -> Result<LinProd> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, e: i64) -> Result<LinProd> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        if self.is_zero() {
            return Ok(if e == 0 { LinProd::one() } else { self.clone() });
        }
        Ok(LinProd {
            constant: pow_rat(&self.constant, e),
            roots: self.roots.iter().map(|(c, k)| (c.clone(), k * e)).filter(|(_, k)| *k != 0).collect(),
        })
    }

    /// Expands to a reduced rational function; the factors are distinct
    /// monic linears, so numerator and denominator are already coprime.
    pub fn to_ratfunc(&self) -> RatFuncMu {
        if self.is_zero() {
            return RatFuncMu::zero();
        }
        let mut num = PolyMu::constant(self.constant.clone());
        let mut den = PolyMu::one();
        for (c, e) in &self.roots {
            let lin = PolyMu::linear(Rational::one(), c.clone());
            if *e > 0 {
                num = &num * &lin.pow(*e as u32);
            } else {
                den = &den * &lin.pow((-e) as u32);
            }
        }
        RatFuncMu::from_reduced(num, den)
    }

    pub fn eval(&self, mu: &Rational) -> Result<Rational> {
        let mut v = self.constant.clone();
        for (c, e) in &self.roots {
            let f = mu + c;
            if f.is_zero() && *e < 0 {
                return Err(Error::Pole(format!("at mu = {mu}")));
            }
            v *= pow_rat(&f, *e);
        }
        Ok(v)
    }

    pub fn sign_of_constant(&self) -> i32 {
        if self.constant.is_positive() {
            1
        } else if self.constant.is_negative() {
            -1
        } else {
            0
        }
    }
}

fn pow_rat(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num::pow(x.clone(), e as usize)
    } else {
        num::pow(x.recip(), (-e) as usize)
    }
}
