//! Product formulas as data: sign × 2^k × rational × ∏ (base)_len^exp with
//! affine bases in μ. Each formula also names what it should equal, so the
//! verifier can walk the whole inventory.

use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{AffineMu, LinProd, PolyMu, RatFuncMu, Rational};
use crate::error::{Error, Result};
use crate::families::{determinant, switch_prefactor, Family, FamilySpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochFactor {
    pub base: AffineMu,
    pub length: i64,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormExpr {
    /// −1, 0 or 1; 0 marks an identically vanishing formula.
    pub sign: i8,
    pub two_power: i64,
    pub rational_prefactor: Rational,
    pub factors: Vec<PochFactor>,
}

impl ClosedFormExpr {
    pub fn new(sign: i8) -> Self {
        ClosedFormExpr { sign, two_power: 0, rational_prefactor: Rational::one(), factors: Vec::new() }
    }

    pub fn zero() -> Self {
        ClosedFormExpr::new(0)
    }

    /// Multiplies by (−1)^e.
    pub fn neg_pow(mut self, e: i64) -> Self {
        if e.rem_euclid(2) == 1 {
            self.sign = -self.sign;
        }
        self
    }

    pub fn two(mut self, e: i64) -> Self {
        self.two_power += e;
        self
    }

    pub fn times(mut self, q: Rational) -> Self {
        self.rational_prefactor *= q;
        self
    }

    pub fn int(self, v: i64) -> Self {
        self.times(Rational::from_integer(v.into()))
    }

    pub fn poch(mut self, base: AffineMu, length: i64, exponent: i64) -> Self {
        if length != 0 && exponent != 0 {
            self.factors.push(PochFactor { base, length, exponent });
        }
        self
    }

    /// A single affine factor.
    pub fn lin(self, base: AffineMu, exponent: i64) -> Self {
        self.poch(base, 1, exponent)
    }

    /// k!^exponent.
    pub fn fact(self, k: i64, exponent: i64) -> Self {
        self.poch(c(1), k, exponent)
    }

    pub fn mul(mut self, o: ClosedFormExpr) -> Self {
        self.sign *= o.sign;
        self.two_power += o.two_power;
        self.rational_prefactor *= o.rational_prefactor;
        self.factors.extend(o.factors);
        self
    }

    pub fn to_linprod(&self) -> Result<LinProd> {
        if self.sign == 0 || self.rational_prefactor.is_zero() {
            return Ok(LinProd::from_int(0));
        }
        let mut p = LinProd::from_rational(self.rational_prefactor.clone() * Rational::from_integer(self.sign.into()));
        let two = Rational::from_integer(2.into());
        p.mul_rational(&pow_rational(&two, self.two_power));
        for f in &self.factors {
            p.mul_poch(&f.base, f.length, f.exponent)?;
        }
        Ok(p)
    }

    pub fn eval(&self) -> Result<RatFuncMu> {
        Ok(self.to_linprod()?.to_ratfunc())
    }

    pub fn eval_at(&self, mu: &Rational) -> Result<Rational> {
        self.to_linprod()?.eval(mu)
    }
}

fn pow_rational(q: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= q;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn mu(c: i64) -> AffineMu {
    AffineMu::mu_plus(c)
}

/// μ/2 + twice/2.
fn hm(twice: i64) -> AffineMu {
    AffineMu::half_mu_plus(Rational::new(twice.into(), 2.into()))
}

fn c(v: i64) -> AffineMu {
    AffineMu::from_int(v)
}

/// The constant twice/2.
fn ch(twice: i64) -> AffineMu {
    AffineMu::constant(Rational::new(twice.into(), 2.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CfId {
    DetNoDelta,
    E11,
    Es0EvenZero,
    Es0Even,
    Es0OddOdd,
    Es0OddEven,
    Krat37Nice,
    Krat37Ugly,
    KtConj20,
    Eneg1,
    KtConj21,
    Biglemma1A,
    Biglemma1B,
    Biglemma2A,
    Biglemma2B,
    QuoED1,
    EdCor1,
    EdCor2,
    TriangleE1A,
    TriangleE1B,
    TriangleE1C,
    TriangleEm1A,
    TriangleEm1B,
    TriangleEm1C,
    TriangleD1A,
    TriangleD1B,
    TriangleD1C,
    TriangleDm1A,
    TriangleDm1B,
    TriangleDm1C,
}

impl CfId {
    pub const ALL: [CfId; 30] = [
        CfId::DetNoDelta,
        CfId::E11,
        CfId::Es0EvenZero,
        CfId::Es0Even,
        CfId::Es0OddOdd,
        CfId::Es0OddEven,
        CfId::Krat37Nice,
        CfId::Krat37Ugly,
        CfId::KtConj20,
        CfId::Eneg1,
        CfId::KtConj21,
        CfId::Biglemma1A,
        CfId::Biglemma1B,
        CfId::Biglemma2A,
        CfId::Biglemma2B,
        CfId::QuoED1,
        CfId::EdCor1,
        CfId::EdCor2,
        CfId::TriangleE1A,
        CfId::TriangleE1B,
        CfId::TriangleE1C,
        CfId::TriangleEm1A,
        CfId::TriangleEm1B,
        CfId::TriangleEm1C,
        CfId::TriangleD1A,
        CfId::TriangleD1B,
        CfId::TriangleD1C,
        CfId::TriangleDm1A,
        CfId::TriangleDm1B,
        CfId::TriangleDm1C,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CfId::DetNoDelta => "det-no-delta",
            CfId::E11 => "e11",
            CfId::Es0EvenZero => "es0-even-zero",
            CfId::Es0Even => "es0-even",
            CfId::Es0OddOdd => "es0-odd-odd",
            CfId::Es0OddEven => "es0-odd-even",
            CfId::Krat37Nice => "krat37-nice",
            CfId::Krat37Ugly => "krat37-ugly",
            CfId::KtConj20 => "ktconj20",
            CfId::Eneg1 => "eneg1",
            CfId::KtConj21 => "ktconj21",
            CfId::Biglemma1A => "biglemma1-a",
            CfId::Biglemma1B => "biglemma1-b",
            CfId::Biglemma2A => "biglemma2-a",
            CfId::Biglemma2B => "biglemma2-b",
            CfId::QuoED1 => "quo-ed1",
            CfId::EdCor1 => "ed-cor1",
            CfId::EdCor2 => "ed-cor2",
            CfId::TriangleE1A => "triangle-e1-a",
            CfId::TriangleE1B => "triangle-e1-b",
            CfId::TriangleE1C => "triangle-e1-c",
            CfId::TriangleEm1A => "triangle-em1-a",
            CfId::TriangleEm1B => "triangle-em1-b",
            CfId::TriangleEm1C => "triangle-em1-c",
            CfId::TriangleD1A => "triangle-d1-a",
            CfId::TriangleD1B => "triangle-d1-b",
            CfId::TriangleD1C => "triangle-d1-c",
            CfId::TriangleDm1A => "triangle-dm1-a",
            CfId::TriangleDm1B => "triangle-dm1-b",
            CfId::TriangleDm1C => "triangle-dm1-c",
        }
    }

    /// Whether the formula is indexed by (s, t, n) rather than (m, r).
    pub fn uses_stn(self) -> bool {
        self == CfId::DetNoDelta
    }

    pub fn is_triangle(self) -> bool {
        self.name().starts_with("triangle")
    }

    /// Smallest admissible r and the strictness of m against r:
    /// m ≥ r + gap is required.
    fn range(self) -> (i64, i64) {
        use CfId::*;
        match self {
            DetNoDelta => (0, 0),
            E11 | QuoED1 | EdCor1 | EdCor2 => (0, 1),
            Es0EvenZero | Es0Even | Es0OddOdd | Es0OddEven | KtConj21 | Biglemma2B => (0, 1),
            Krat37Nice | Krat37Ugly | KtConj20 | Eneg1 | Biglemma1A | Biglemma1B => (1, 0),
            Biglemma2A | TriangleE1A | TriangleE1B | TriangleE1C => (1, 1),
            TriangleD1A | TriangleD1B | TriangleD1C => (1, 1),
            TriangleEm1A | TriangleEm1B | TriangleEm1C => (1, 2),
            TriangleDm1A | TriangleDm1B | TriangleDm1C => (0, 1),
        }
    }

    /// Formulas that take m only (r is ignored).
    pub fn m_only(self) -> bool {
        matches!(self, CfId::E11 | CfId::QuoED1 | CfId::EdCor1 | CfId::EdCor2)
    }

    pub fn in_range(self, m: i64, r: i64) -> bool {
        let (rmin, gap) = self.range();
        if self.m_only() {
            return m >= 1;
        }
        r >= rmin && m >= r + gap && m >= 1
    }
}

impl fmt::Display for CfId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CfId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        CfId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == key)
            .ok_or_else(|| Error::Parse(format!("unknown formula {s:?}")))
    }
}

/// A determinant of a family at μ + shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedSpec {
    pub spec: FamilySpec,
    pub mu_shift: i64,
}

impl ShiftedSpec {
    pub fn new(family: Family, s: i64, t: i64, n: usize, mu_shift: i64) -> Self {
        ShiftedSpec { spec: FamilySpec::new(family, s, t, n), mu_shift }
    }

    pub fn determinant(&self) -> Result<PolyMu> {
        Ok(determinant(&self.spec)?.shift(&Rational::from_integer(self.mu_shift.into())))
    }
}

/// What a formula is supposed to equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Det(ShiftedSpec),
    Ratio(ShiftedSpec, ShiftedSpec),
    /// The value is a limit of ε-perturbed determinants; see the epsilon module.
    EpsLimit,
}

impl Target {
    /// Direct evaluation of the target, when it is a determinant expression.
    pub fn evaluate(&self) -> Result<Option<RatFuncMu>> {
        match self {
            Target::Det(a) => Ok(Some(RatFuncMu::from_poly(a.determinant()?))),
            Target::Ratio(a, b) => {
                let den = b.determinant()?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Some(RatFuncMu::new(a.determinant()?, den)?))
            }
            Target::EpsLimit => Ok(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    pub id: CfId,
    pub params: Vec<(&'static str, i64)>,
    pub expr: ClosedFormExpr,
    pub target: Target,
}

fn det_t(f: Family, s: i64, t: i64, n: i64) -> ShiftedSpec {
    ShiftedSpec::new(f, s, t, n as usize, 0)
}

fn det_t3(f: Family, s: i64, t: i64, n: i64) -> ShiftedSpec {
    ShiftedSpec::new(f, s, t, n as usize, 3)
}

/// Π_{i=0}^{t−1} (μ+s+i−1)_n / (i+1)_n, the determinant of the delta-free matrix.
pub fn cf_det_no_delta(s: i64, t: i64, n: i64) -> Result<Formula> {
    if s < 0 || t < 0 || n < 1 {
        return Err(Error::Range(format!("needs s, t ≥ 0 and n ≥ 1, got ({s}, {t}, {n})")));
    }
    let mut e = ClosedFormExpr::new(1);
    for i in 0..t {
        e = e.poch(mu(s + i - 1), n, 1).poch(c(i + 1), n, -1);
    }
    Ok(Formula {
        id: CfId::DetNoDelta,
        params: vec![("s", s), ("t", t), ("n", n)],
        expr: e,
        target: Target::Det(det_t(Family::B, s, t, n)),
    })
}

/// Π_{i=1}^{m−r−1} (μ+2i+6r)_i² (μ/2+2i+3r+1)_i² / ((i+1)_i² (μ/2+i+3r)_i²)
fn p_mr(m: i64, r: i64) -> ClosedFormExpr {
    let mut e = ClosedFormExpr::new(1);
    for i in 1..m - r {
        e = e
            .poch(mu(2 * i + 6 * r), i, 2)
            .poch(hm(4 * i + 6 * r + 2), i, 2)
            .poch(c(i + 1), i, -2)
            .poch(hm(2 * i + 6 * r), i, -2);
    }
    e
}

fn expr_for(id: CfId, m: i64, r: i64) -> Result<(ClosedFormExpr, Target)> {
    use CfId::*;
    use Family::{D, E};
    let d = m - r;
    let out = match id {
        DetNoDelta => unreachable!("indexed by (s, t, n)"),
        E11 => {
            let mut e = ClosedFormExpr::new(1)
                .neg_pow(m - 1)
                .two(2 * m - 1)
                .poch(hm(-1), m, 1)
                .poch(c(m), m, -1);
            for i in 1..m {
                e = e
                    .poch(mu(2 * i + 1), i - 1, 2)
                    .poch(hm(4 * i + 2), i, 2)
                    .poch(c(i), i, -2)
                    .poch(hm(2 * i + 2), i - 1, -2);
            }
            (e, Target::Det(det_t(E, 1, 1, 2 * m - 1)))
        }
        Es0EvenZero => (ClosedFormExpr::zero(), Target::Det(det_t(E, 2 * r, 0, 2 * m - 1))),
        Es0Even => {
            let e = ClosedFormExpr::new(1)
                .neg_pow(d)
                .poch(hm(6 * r - 1), d, 1)
                .poch(ch(1), d, -1)
                .mul(p_mr(m, r));
            (e, Target::Det(det_t(E, 2 * r, 0, 2 * m)))
        }
        Es0OddOdd => {
            let e = ClosedFormExpr::new(1)
                .poch(c(d), d - 1, 1)
                .poch(hm(4 * m + 2 * r - 2), d - 1, -1)
                .mul(p_mr(m, r));
            (e, Target::Det(det_t(E, 2 * r + 1, 0, 2 * m - 1)))
        }
        Es0OddEven => {
            let e = ClosedFormExpr::new(1)
                .int(2)
                .poch(mu(2 * m + 4 * r + 1), d - 1, 1)
                .poch(hm(2 * m + 4 * r + 2), d - 1, -1)
                .mul(p_mr(m, r));
            (e, Target::Det(det_t(E, 2 * r + 1, 0, 2 * m)))
        }
        Krat37Nice => {
            let mut e = ClosedFormExpr::new(1)
                .neg_pow(d)
                .lin(mu(-1), 1)
                .poch(mu(2 * r - 1), 2 * m - 2, 1)
                .fact(2 * r - 2, -1)
                .poch(c(m + r - 1), d + 1, -1)
                .poch(hm(2 * r), d, -1);
            for i in 1..=d {
                e = e
                    .poch(mu(2 * i + 6 * r - 5), i - 1, 2)
                    .poch(hm(4 * i + 6 * r - 4), i, 2)
                    .poch(c(i), i, -2)
                    .poch(hm(2 * i + 6 * r - 4), i - 1, -2);
            }
            (e, Target::Det(det_t(E, 2 * r - 1, 1, 2 * m - 1)))
        }
        Krat37Ugly => (krat37_ugly(m, r), Target::Det(det_t(E, 1, 2 * r - 1, 2 * m - 1))),
        KtConj20 => {
            let mut e = ClosedFormExpr::new(1)
                .neg_pow(d)
                .lin(mu(-1), 1)
                .poch(mu(2 * r), 2 * m - 1, 1)
                .fact(2 * r - 1, -1)
                .poch(c(m + r), d + 1, -1)
                .poch(hm(2 * r + 1), d, -1);
            for i in 1..=d {
                e = e
                    .poch(mu(2 * i + 6 * r - 2), i - 1, 2)
                    .poch(hm(4 * i + 6 * r - 1), i, 2)
                    .poch(c(i), i, -2)
                    .poch(hm(2 * i + 6 * r - 1), i - 1, -2);
            }
            (e, Target::Det(det_t(D, 2 * r, 1, 2 * m)))
        }
        Eneg1 => {
            // (3 − μ) = −(μ − 3)
            let mut e = ClosedFormExpr::new(-1)
                .neg_pow(d)
                .lin(mu(-3), 1)
                .poch(c(m + r + 1), d, 1)
                .two(-(2 * d + 1))
                .poch(hm(2 * r - 3), d + 1, -1);
            for i in 1..=2 * m {
                e = e.poch(mu(i - 3), 2 * r, 1).poch(c(i), 2 * r, -1);
            }
            for i in 1..=d {
                e = e
                    .poch(mu(2 * i + 6 * r - 3), i, 2)
                    .poch(hm(4 * i + 6 * r - 2), i - 1, 2)
                    .poch(c(i), i, -2)
                    .poch(hm(2 * i + 6 * r - 2), i - 1, -2);
            }
            (e, Target::Det(det_t(E, -1, 2 * r - 1, 2 * m + 1)))
        }
        KtConj21 => {
            let mut e = ClosedFormExpr::new(1)
                .neg_pow(d)
                .lin(mu(-3), 1)
                .poch(hm(2 * r - 1), d - 1, 1)
                .poch(c(2 * r + 1), d, -1);
            for i in 1..=2 * m {
                e = e.poch(mu(i - 3), 2 * r, 1).poch(c(i), 2 * r, -1);
            }
            for i in 1..d {
                e = e
                    .poch(mu(2 * i + 6 * r), i, 2)
                    .poch(hm(4 * i + 6 * r + 1), i - 1, 2)
                    .poch(c(i), i, -2)
                    .poch(hm(2 * i + 6 * r + 1), i - 1, -2);
            }
            (e, Target::Det(det_t(D, -1, 2 * r, 2 * m)))
        }
        Biglemma1A => (
            r_s1(2 * r, 2 * m),
            Target::Ratio(det_t(D, 2 * r, 1, 2 * m), det_t3(E, 2 * r - 1, 1, 2 * m - 1)),
        ),
        Biglemma1B => (
            r_s1(2 * r + 1, 2 * m + 1),
            Target::Ratio(det_t(E, 2 * r + 1, 1, 2 * m + 1), det_t3(D, 2 * r, 1, 2 * m)),
        ),
        Biglemma2A => (r_sneg1(2 * r, 2 * m), Target::EpsLimit),
        Biglemma2B => (r_sneg1(2 * r + 1, 2 * m + 1), Target::EpsLimit),
        QuoED1 => {
            let e = ClosedFormExpr::new(-1)
                .int(4 * m - 2)
                .lin(mu(-3), 1)
                .lin(mu(2 * m + 1), 1)
                .lin(c(m + 1), -1)
                .lin(mu(-1), -1)
                .lin(mu(1), -1)
                .lin(mu(3), -1)
                .lin(mu(2 * m - 2), -1);
            (e, Target::EpsLimit)
        }
        EdCor1 => {
            let e = ClosedFormExpr::new(-1)
                .int(2 * (2 * m - 1))
                .lin(mu(0), 1)
                .lin(mu(2 * m + 1), 1)
                .lin(c(m), -1)
                .lin(mu(3), -1)
                .lin(mu(2 * m), -1);
            (e, Target::Ratio(det_t(E, 1, 1, 2 * m), det_t3(D, 0, 1, 2 * m - 1)))
        }
        EdCor2 => {
            let e = ClosedFormExpr::new(-1)
                .int(2 * m + 1)
                .lin(mu(0), 1)
                .lin(mu(2 * m + 3), 1)
                .lin(c(m + 1), -1)
                .lin(mu(2 * m + 2), -1);
            (e, Target::Ratio(det_t(E, 2, 2, 2 * m + 1), det_t3(D, 1, 2, 2 * m)))
        }
        TriangleE1A => (
            ClosedFormExpr::new(1)
                .poch(mu(2 * m + 4 * r - 1), d + 1, 1)
                .poch(hm(4 * m + 2 * r + 2), d, 1)
                .poch(c(d + 1), d + 1, -1)
                .poch(hm(2 * m + 4 * r), d, -1),
            Target::Ratio(det_t(E, 2 * r, 1, 2 * m + 1), det_t(E, 2 * r, 1, 2 * m)),
        ),
        TriangleE1B => (
            ClosedFormExpr::new(1)
                .neg_pow(d)
                .poch(hm(4 * m + 2 * r + 2), d, 1)
                .poch(hm(6 * r - 1), d + 1, 1)
                .poch(ch(3), d, -1)
                .poch(c(d), d, -1),
            Target::Ratio(det_t(E, 2 * r, 1, 2 * m + 1), det_t(E, 2 * r + 1, 1, 2 * m)),
        ),
        TriangleE1C => (
            ClosedFormExpr::new(1)
                .neg_pow(d)
                .poch(ch(1), d + 1, 1)
                .poch(mu(2 * m + 4 * r - 1), d + 1, 1)
                .lin(c(2 * d + 1), -1)
                .poch(hm(2 * m + 4 * r), d, -1)
                .poch(hm(6 * r - 1), d + 1, -1),
            Target::Ratio(det_t(E, 2 * r + 1, 1, 2 * m), det_t(E, 2 * r, 1, 2 * m)),
        ),
        TriangleD1A => (
            ClosedFormExpr::new(1)
                .poch(mu(2 * m + 4 * r - 4), d + 1, 1)
                .poch(hm(4 * m + 2 * r - 1), d, 1)
                .poch(c(d + 1), d + 1, -1)
                .poch(hm(2 * m + 4 * r - 3), d, -1),
            Target::Ratio(det_t(D, 2 * r - 1, 1, 2 * m), det_t(D, 2 * r - 1, 1, 2 * m - 1)),
        ),
        TriangleD1B => (
            ClosedFormExpr::new(1)
                .neg_pow(d)
                .poch(c(d), d, 1)
                .poch(c(d + 1), d + 1, 1)
                .two(-2 * d)
                .poch(hm(4 * m + 2 * r - 1), d, -1)
                .poch(hm(6 * r - 4), d + 1, -1),
            Target::Ratio(det_t(D, 2 * r, 1, 2 * m - 1), det_t(D, 2 * r - 1, 1, 2 * m)),
        ),
        TriangleD1C => (
            ClosedFormExpr::new(1)
                .neg_pow(d)
                .poch(c(d), d, 1)
                .poch(hm(2 * m + 4 * r - 4), d, 1)
                .poch(hm(6 * r - 4), d + 1, -1)
                .poch(mu(3 * m + 3 * r - 3), d - 1, -1),
            Target::Ratio(det_t(D, 2 * r, 1, 2 * m - 1), det_t(D, 2 * r - 1, 1, 2 * m - 1)),
        ),
        TriangleEm1A => (
            ClosedFormExpr::new(1)
                .poch(mu(2 * m - 3), 2 * r + 1, 1)
                .poch(mu(2 * m + 4 * r - 2), d - 1, 1)
                .poch(hm(4 * m + 2 * r - 2), d - 1, 1)
                .two(-1)
                .poch(c(2 * m - 1), 2 * r + 1, -1)
                .poch(c(d - 1), d - 1, -1)
                .poch(hm(2 * m + 4 * r - 2), d - 1, -1),
            Target::Ratio(det_t(E, -1, 2 * r, 2 * m), det_t(E, -1, 2 * r, 2 * m - 1)),
        ),
        TriangleEm1B => (
            ClosedFormExpr::new(1)
                .neg_pow(d)
                .poch(c(d), d, 1)
                .poch(mu(2 * r - 2), 2 * m, 1)
                .poch(hm(2 * m + 4 * r - 3), d, 1)
                .poch(c(2 * r), 2 * m, -1)
                .poch(hm(6 * r - 1), d, -1)
                .poch(mu(3 * m + 3 * r - 3), d, -1),
            Target::Ratio(det_t(E, -1, 2 * r, 2 * m), det_t(E, -1, 2 * r - 1, 2 * m)),
        ),
        TriangleEm1C => (
            // −(−4)^{m−r−1}
            ClosedFormExpr::new(-1)
                .neg_pow(d - 1)
                .two(2 * (d - 1))
                .poch(c(2 * r), 2 * d - 1, 1)
                .poch(hm(4 * m + 2 * r - 4), d, 1)
                .poch(hm(6 * r - 1), d - 1, 1)
                .poch(c(d), d, -1)
                .poch(c(d - 1), d - 1, -1)
                .poch(mu(2 * r - 2), 2 * d - 1, -1),
            Target::Ratio(det_t(E, -1, 2 * r - 1, 2 * m), det_t(E, -1, 2 * r, 2 * m - 1)),
        ),
        TriangleDm1A => (
            ClosedFormExpr::new(1)
                .poch(mu(2 * m - 2), 2 * r + 2, 1)
                .poch(mu(2 * m + 4 * r + 1), d - 1, 1)
                .poch(hm(4 * m + 2 * r + 1), d - 1, 1)
                .poch(c(2 * m), 2 * r + 2, -1)
                .poch(c(d), d - 1, -1)
                .poch(hm(2 * m + 4 * r + 1), d - 1, -1),
            Target::Ratio(det_t(D, -1, 2 * r + 1, 2 * m + 1), det_t(D, -1, 2 * r + 1, 2 * m)),
        ),
        TriangleDm1B => (
            ClosedFormExpr::new(1)
                .neg_pow(d)
                .two(2 * d - 1)
                .poch(ch(1), d, 1)
                .poch(hm(2 * m + 4 * r + 2), d - 1, 1)
                .poch(mu(2 * r - 1), 2 * m + 1, 1)
                .poch(c(2 * r + 1), 2 * m + 1, -1)
                .poch(hm(6 * r + 2), d - 1, -1)
                .poch(mu(3 * m + 3 * r), d, -1),
            Target::Ratio(det_t(D, -1, 2 * r + 1, 2 * m + 1), det_t(D, -1, 2 * r, 2 * m + 1)),
        ),
        TriangleDm1C => (
            ClosedFormExpr::new(1)
                .neg_pow(d)
                .poch(c(2 * r + 1), 2 * d - 1, 1)
                .poch(hm(6 * r + 2), d - 1, 1)
                .poch(hm(4 * m + 2 * r - 1), d, 1)
                .poch(ch(1), d, -1)
                .poch(c(d), d - 1, -1)
                .poch(mu(2 * r - 1), 2 * d - 1, -1),
            Target::Ratio(det_t(D, -1, 2 * r, 2 * m + 1), det_t(D, -1, 2 * r + 1, 2 * m)),
        ),
    };
    Ok(out)
}

/// R_{s,1}(n) as a product of linear factors.
fn r_s1(s: i64, n: i64) -> ClosedFormExpr {
    ClosedFormExpr::new(1)
        .int(n + s - 2)
        .lin(mu(-1), 1)
        .lin(mu(n + 1), 1)
        .lin(mu(s), 1)
        .lin(c(2 * n * (s - 1)), -1)
        .lin(mu(2), -1)
        .lin(mu(n + s - 1), -1)
}

fn r_sneg1(s: i64, n: i64) -> ClosedFormExpr {
    ClosedFormExpr::new(1)
        .int(2 * s * (n - 1))
        .lin(mu(-3), 1)
        .lin(mu(n + s - 2), 1)
        .lin(mu(0), -1)
        .lin(c(n + s), -1)
        .lin(mu(n - 3), -1)
        .lin(mu(s - 2), -1)
}

/// 2^{4m−3r} ℓ1 ℓ2 ℓ3 ∏_{i=0}^{m−1} i!(i+1)!/((2i)!(2i+2)!), the closed form of
/// E_{1,2r−1}(2m−1) before switching.
fn krat37_ugly(m: i64, r: i64) -> ClosedFormExpr {
    let d = m - r;
    let mut e = ClosedFormExpr::new(1).two(4 * m - 3 * r);
    // ℓ1
    for i in 0..2 * r - 2 {
        e = e.fact(i, 1);
    }
    for i in 0..r - 1 {
        e = e
            .fact(2 * m - 2 * i - 3, 2)
            .fact(m - i - 2, -2)
            .fact(2 * m + 2 * i - 1, -1)
            .fact(2 * m + 2 * i + 1, -1);
    }
    // ℓ2
    e = e.lin(mu(-1), 1).poch(hm(2 * r - 1), d, 1);
    for i in 1..2 * r - 1 {
        e = e.poch(mu(i - 1), 2 * m + 2 * r - 2 * i - 1, 1);
    }
    // ℓ3; the second base has slope −1/2
    e = e.neg_pow(d).two(d * (d - 1));
    if d >= 1 {
        for i in 0..=(d - 1) / 2 {
            let neg = AffineMu::new(Rational::new((-1).into(), 2.into()), Rational::from_integer((3 * i + 3 - 3 * m).into()));
            e = e.poch(hm(6 * i + 6 * r - 1), d - 2 * i - 1, 2).poch(neg, d - 2 * i, 2);
        }
    }
    for i in 0..m {
        e = e.fact(i, 1).fact(i + 1, 1).fact(2 * i, -1).fact(2 * i + 2, -1);
    }
    e
}

/// The formula `id` at (m, r). Formulas taking only m ignore r.
pub fn closed_form(id: CfId, m: i64, r: i64) -> Result<Formula> {
    if id == CfId::DetNoDelta {
        return Err(Error::Range("det-no-delta is indexed by (s, t, n); use cf_det_no_delta".into()));
    }
    if !id.in_range(m, r) {
        return Err(Error::Range(format!("{id} is not defined at m={m}, r={r}")));
    }
    let (expr, target) = expr_for(id, m, r)?;
    let params = if id.m_only() { vec![("m", m)] } else { vec![("m", m), ("r", r)] };
    Ok(Formula { id, params, expr, target })
}

/// Every in-range (m, r) instance of every (m, r)-indexed formula with m ≤ max_m.
pub fn inventory(max_m: i64) -> Vec<Formula> {
    let mut out = Vec::new();
    for id in CfId::ALL {
        if id.uses_stn() {
            continue;
        }
        for m in 1..=max_m {
            if id.m_only() {
                out.push(closed_form(id, m, 0).expect("in range"));
                continue;
            }
            for r in 0..=m {
                if id.in_range(m, r) {
                    out.push(closed_form(id, m, r).expect("in range"));
                }
            }
        }
    }
    out
}

/// Krat37ugly as the switching prefactor times Krat37nice.
pub fn krat37_ugly_via_switch(m: i64, r: i64) -> Result<RatFuncMu> {
    let nice = closed_form(CfId::Krat37Nice, m, r)?.expr.to_linprod()?;
    Ok(switch_prefactor(1, 2 * r - 1, (2 * m - 1) as usize)?.mul(&nice).to_ratfunc())
}

/// Both sides of the CancelPoch identity:
/// 2^{(m−1)(m−2)/2} ∏_{i=1}^{⌊m/2⌋} (μ/2+3i−1/2)_{m−2i} (μ/2+2m−i)_{m−2i+1}
/// and ∏_{i=1}^{m−1} (μ+2i+1)_{i−1} (μ/2+2i+1)_i / (μ/2+i+1)_{i−1}.
pub fn cancel_poch_sides(m: i64) -> Result<(PolyMu, PolyMu)> {
    if m < 1 {
        return Err(Error::Range("m ≥ 1".into()));
    }
    let mut l = ClosedFormExpr::new(1).two((m - 1) * (m - 2) / 2);
    for i in 1..=m / 2 {
        l = l.poch(hm(6 * i - 1), m - 2 * i, 1).poch(hm(4 * m - 2 * i), m - 2 * i + 1, 1);
    }
    let mut r = ClosedFormExpr::new(1);
    for i in 1..m {
        r = r.poch(mu(2 * i + 1), i - 1, 1).poch(hm(4 * i + 2), i, 1).poch(hm(2 * i + 2), i - 1, -1);
    }
    let as_poly = |e: &ClosedFormExpr| -> Result<PolyMu> {
        let v = e.eval()?;
        v.as_poly().cloned().ok_or_else(|| Error::Pole("not a polynomial".into()))
    };
    Ok((as_poly(&l)?, as_poly(&r)?))
}

/// Reciprocity: D_{2r−1,0}(2m+1) and D_{0,0}(2m−2r+2) at μ → 1−μ−6m (same for E).
/// Returns (left, right), both as polynomials in μ.
pub fn ktconj24_sides(family: Family, m: i64, r: i64) -> Result<(PolyMu, PolyMu)> {
    if !(1 <= r && r <= m) {
        return Err(Error::Range(format!("needs m ≥ r ≥ 1, got m={m}, r={r}")));
    }
    let left = determinant(&FamilySpec::new(family, 2 * r - 1, 0, (2 * m + 1) as usize))?;
    let right = determinant(&FamilySpec::new(family, 0, 0, (2 * m - 2 * r + 2) as usize))?;
    let mapped = right.compose_affine(&-Rational::one(), &Rational::from_integer((1 - 6 * m).into()));
    Ok((left, mapped))
}
