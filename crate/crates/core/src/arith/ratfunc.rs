use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{One, Zero};

use super::poly::{forward_owned, PolyMu};
use super::Rational;
use crate::error::{Error, Result};

/// Reduced rational function in μ: gcd(num, den) = 1 and den is monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncMu {
    num: PolyMu,
    den: PolyMu,
}

impl Default for RatFuncMu {
    fn default() -> Self {
        RatFuncMu::zero()
    }
}

impl RatFuncMu {
    pub fn zero() -> Self {
        RatFuncMu { num: PolyMu::zero(), den: PolyMu::one() }
    }

    pub fn one() -> Self {
        RatFuncMu::from_poly(PolyMu::one())
    }

    pub fn from_poly(p: PolyMu) -> Self {
        RatFuncMu { num: p, den: PolyMu::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFuncMu::from_poly(PolyMu::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        RatFuncMu::from_poly(PolyMu::from_int(c))
    }

    pub fn mu() -> Self {
        RatFuncMu::from_poly(PolyMu::mu())
    }

    /// Normalizes num/den; a zero denominator is a pole.
    pub fn new(num: PolyMu, den: PolyMu) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole(format!("{num} / 0")));
        }
        if num.is_zero() {
            return Ok(RatFuncMu::zero());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let l = d.leading().unwrap().clone();
        if !l.is_one() {
            let inv = l.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RatFuncMu { num: n, den: d })
    }

    /// Builds from parts already known to be coprime with monic denominator.
    pub(crate) fn from_reduced(num: PolyMu, den: PolyMu) -> Self {
        debug_assert!(den.leading().is_some_and(|l| l.is_one()));
        RatFuncMu { num, den }
    }

    pub fn numer(&self) -> &PolyMu {
        &self.num
    }

    pub fn denom(&self) -> &PolyMu {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&PolyMu> {
        self.is_poly().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<RatFuncMu> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFuncMu::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &RatFuncMu) -> Result<RatFuncMu> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g1 = self.num.gcd(&o.num);
        let g2 = self.den.gcd(&o.den);
        let n = &self.num.div_exact(&g1)? * &o.den.div_exact(&g2)?;
        let d = &self.den.div_exact(&g2)? * &o.num.div_exact(&g1)?;
        RatFuncMu::new(n, d)
    }

    pub fn scale(&self, k: &Rational) -> RatFuncMu {
        if k.is_zero() {
            return RatFuncMu::zero();
        }
        RatFuncMu { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn pow(&self, e: i32) -> Result<RatFuncMu> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFuncMu { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Value at a rational point; a vanishing denominator is a pole.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("{self} at mu = {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    /// f(a·μ + b).
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Result<RatFuncMu> {
        RatFuncMu::new(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }

    pub fn shift(&self, c: &Rational) -> RatFuncMu {
        // A shift keeps coprimality and monicity.
        RatFuncMu { num: self.num.shift(c), den: self.den.shift(c) }
    }

    /// Checks a·d = b·c without normalizing the difference.
    pub fn equals_cross(&self, num: &PolyMu, den: &PolyMu) -> bool {
        &self.num * den == &self.den * num
    }

    pub fn pretty(&self) -> String {
        if self.den.is_one() {
            self.num.pretty()
        } else {
            format!("({}) / ({})", self.num.pretty(), self.den.pretty())
        }
    }
}

impl From<PolyMu> for RatFuncMu {
    fn from(p: PolyMu) -> Self {
        RatFuncMu::from_poly(p)
    }
}

/// Canonical text form `num / den` of ascending coefficient lists.
impl fmt::Display for RatFuncMu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

impl FromStr for RatFuncMu {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(" / ") {
            Some((a, b)) => RatFuncMu::new(a.parse()?, b.parse()?),
            None => Ok(RatFuncMu::from_poly(s.parse()?)),
        }
    }
}

impl Add for &RatFuncMu {
    type Output = RatFuncMu;
    fn add(self, o: &RatFuncMu) -> RatFuncMu {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFuncMu::new(&self.num + &o.num, self.den.clone()).expect("nonzero denominator");
        }
        let g = self.den.gcd(&o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        let n = &(&self.num * &b) + &(&o.num * &a);
        RatFuncMu::new(n, &self.den * &b).expect("nonzero denominator")
    }
}

impl Sub for &RatFuncMu {
    type Output = RatFuncMu;
    fn sub(self, o: &RatFuncMu) -> RatFuncMu {
        self + &(-o)
    }
}

impl Mul for &RatFuncMu {
    type Output = RatFuncMu;
    fn mul(self, o: &RatFuncMu) -> RatFuncMu {
        if self.is_zero() || o.is_zero() {
            return RatFuncMu::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFuncMu::from_poly(&self.num * &o.num);
        }
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = &self.num.div_exact(&g1).unwrap() * &o.num.div_exact(&g2).unwrap();
        let d = &self.den.div_exact(&g2).unwrap() * &o.den.div_exact(&g1).unwrap();
        RatFuncMu::new(n, d).expect("nonzero denominator")
    }
}

impl Div for &RatFuncMu {
    type Output = RatFuncMu;
    fn div(self, o: &RatFuncMu) -> RatFuncMu {
        self.checked_div(o).expect("division by zero rational function")
    }
}

impl Neg for &RatFuncMu {
    type Output = RatFuncMu;
    fn neg(self) -> RatFuncMu {
        RatFuncMu { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFuncMu {
    type Output = RatFuncMu;
    fn neg(self) -> RatFuncMu {
        -&self
    }
}

forward_owned!(RatFuncMu, Add add, Sub sub, Mul mul, Div div);
