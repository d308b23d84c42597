use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use super::intpoly::IntPoly;
use super::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial in μ with rational coefficients, ascending degree.
/// The coefficient list never ends in a zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyMu {
    coeffs: Vec<Rational>,
}

impl PolyMu {
    pub fn zero() -> Self {
        PolyMu { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyMu::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyMu::new(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        PolyMu::constant(Rational::from_integer(c.into()))
    }

    /// The indeterminate μ itself.
    pub fn mu() -> Self {
        PolyMu::new(vec![Rational::zero(), Rational::one()])
    }

    /// slope·μ + constant.
    pub fn linear(slope: Rational, constant: Rational) -> Self {
        PolyMu::new(vec![constant, slope])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyMu { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> PolyMu {
        if k.is_zero() {
            return PolyMu::zero();
        }
        PolyMu { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn monic(&self) -> PolyMu {
        match self.leading() {
            None => PolyMu::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// p(a·μ + b).
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> PolyMu {
        let lin = PolyMu::linear(a.clone(), b.clone());
        let mut acc = PolyMu::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &PolyMu::constant(c.clone());
        }
        acc
    }

    /// p(μ + c).
    pub fn shift(&self, c: &Rational) -> PolyMu {
        self.compose_affine(&Rational::one(), c)
    }

    pub fn pow(&self, e: u32) -> PolyMu {
        let mut acc = PolyMu::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &PolyMu) -> Result<(PolyMu, PolyMu)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.clone();
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((PolyMu::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let qk = top / &dl;
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= &qk * dj;
            }
            q[k] = qk;
        }
        r.truncate(dd);
        Ok((PolyMu::new(q), PolyMu::new(r)))
    }

    /// Quotient when the division is known to be exact.
    pub fn div_exact(&self, d: &PolyMu) -> Result<PolyMu> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Pole(format!("{self} is not divisible by {d}")));
        }
        Ok(q)
    }

    /// Monic gcd over Q; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &PolyMu) -> PolyMu {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.is_constant() || o.is_constant() {
            return PolyMu::one();
        }
        let (_, a) = self.to_int();
        let (_, b) = o.to_int();
        PolyMu::from_int_poly(&a.gcd(&b)).monic()
    }

    /// Splits p = f · q with q a primitive integer polynomial with positive
    /// leading coefficient and f rational. The zero polynomial gives f = 0.
    pub fn to_int(&self) -> (Rational, IntPoly) {
        if self.is_zero() {
            return (Rational::zero(), IntPoly::zero());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let ip = IntPoly::new(ints);
        let mut g = ip.content();
        if ip.leading().unwrap().is_negative() {
            g = -g;
        }
        let prim = ip.primitive();
        (Rational::new(g, den), prim)
    }

    pub fn from_int_poly(p: &IntPoly) -> PolyMu {
        PolyMu::new(p.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Human-oriented rendering such as `mu^2 - 1/2*mu + 3`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match d {
                0 => String::new(),
                1 => "mu".to_string(),
                _ => format!("mu^{d}"),
            };
            if d == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

/// Canonical text form: the ascending coefficient list, e.g. `[1, -1/2, 3]`.
impl fmt::Display for PolyMu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for PolyMu {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(PolyMu::zero());
        }
        let coeffs = inner
            .split(',')
            .map(|c| c.trim().parse::<Rational>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMu::new(coeffs))
    }
}

impl Add for &PolyMu {
    type Output = PolyMu;
    fn add(self, o: &PolyMu) -> PolyMu {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        PolyMu::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &PolyMu {
    type Output = PolyMu;
    fn sub(self, o: &PolyMu) -> PolyMu {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        PolyMu::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Mul for &PolyMu {
    type Output = PolyMu;
    fn mul(self, o: &PolyMu) -> PolyMu {
        if self.is_zero() || o.is_zero() {
            return PolyMu::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyMu::new(out)
    }
}

impl Neg for &PolyMu {
    type Output = PolyMu;
    fn neg(self) -> PolyMu {
        PolyMu { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t { (&self).$m(o) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(PolyMu, Add add, Sub sub, Mul mul);

impl Neg for PolyMu {
    type Output = PolyMu;
    fn neg(self) -> PolyMu {
        -&self
    }
}
