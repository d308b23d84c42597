use std::fmt;

use num::{One, Signed, Zero};

use super::{int, PolyMu, Rational};

/// slope·μ + constant. Exact, so bases like μ/2 + 3r − 1/2 need no floats.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMu {
    pub slope: Rational,
    pub constant: Rational,
}

impl AffineMu {
    pub fn new(slope: Rational, constant: Rational) -> Self {
        AffineMu { slope, constant }
    }

    /// μ + c.
    pub fn mu_plus(c: i64) -> Self {
        AffineMu::new(Rational::one(), int(c))
    }

    /// μ/2 + c.
    pub fn half_mu_plus(c: Rational) -> Self {
        AffineMu::new(Rational::new(1.into(), 2.into()), c)
    }

    pub fn constant(c: Rational) -> Self {
        AffineMu::new(Rational::zero(), c)
    }

    pub fn from_int(c: i64) -> Self {
        AffineMu::constant(int(c))
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    pub fn plus(&self, c: &Rational) -> Self {
        AffineMu::new(self.slope.clone(), &self.constant + c)
    }

    pub fn plus_int(&self, c: i64) -> Self {
        self.plus(&int(c))
    }

    pub fn neg(&self) -> Self {
        AffineMu::new(-&self.slope, -&self.constant)
    }

    pub fn to_poly(&self) -> PolyMu {
        PolyMu::linear(self.slope.clone(), self.constant.clone())
    }

    pub fn eval(&self, mu: &Rational) -> Rational {
        &self.slope * mu + &self.constant
    }
}

impl fmt::Display for AffineMu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            return write!(f, "{}", self.constant);
        }
        if self.slope.is_one() {
            f.write_str("mu")?;
        } else if (-&self.slope).is_one() {
            f.write_str("-mu")?;
        } else {
            write!(f, "{}*mu", self.slope)?;
        }
        if self.constant.is_positive() {
            write!(f, " + {}", self.constant)?;
        } else if self.constant.is_negative() {
            write!(f, " - {}", self.constant.abs())?;
        }
        Ok(())
    }
}
