//! Limits of determinants of A_{s+ε,−1+ε}(n) as ε → 0.
//!
//! Only column 1 of that matrix has a negative lower index, so its determinant
//! is ε·det(leading matrix) + O(ε²), and ratios of such determinants have
//! finite limits. Three independent routes compute them: the direct leading
//! matrix, the (n−1)×(n−1) pair with column 1 replaced, and the ε-bearing
//! cofactor system with O(ε) terms dropped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ansatz::{verify_ansatz_identity, Identity};
use crate::arith::{gbinom, gbinom_eps_first_order, AffineMu, LinProd, PolyMu, RatFuncMu, Rational};
use crate::closed_forms::{closed_form, CfId};
use crate::error::{Error, Result};
use crate::families::{build_transformed, eps_leading_matrix, ratio_formula, Family, FamilySpec, RatioId, TransformedKind, TransformedMatrixSpec};
use crate::matrix::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EpsTarget {
    /// D_{2r,−1}(2m) / E_{2r−1,−1}^{μ+3}(2m−1), for m > r ≥ 1.
    Biglemma2A,
    /// E_{2r+1,−1}(2m+1) / D_{2r,−1}^{μ+3}(2m), for m > r ≥ 0.
    Biglemma2B,
    /// E_{1,−1}(2m+1) / D_{1,0}^{μ+3}(2m−1), for m ≥ 1.
    QuoED1,
}

impl FromStr for EpsTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "biglemma2a" => Ok(EpsTarget::Biglemma2A),
            "biglemma2b" => Ok(EpsTarget::Biglemma2B),
            "quoed1" => Ok(EpsTarget::QuoED1),
            other => Err(Error::Parse(format!("unknown target {other:?}"))),
        }
    }
}

impl fmt::Display for EpsTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsTarget::Biglemma2A => "biglemma2a",
            EpsTarget::Biglemma2B => "biglemma2b",
            EpsTarget::QuoED1 => "quoED1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsLimitSpec {
    pub target: EpsTarget,
    pub r: i64,
    pub m: i64,
}

impl EpsLimitSpec {
    pub fn new(target: EpsTarget, r: i64, m: i64) -> Result<Self> {
        let ok = match target {
            EpsTarget::Biglemma2A => m > r && r >= 1,
            EpsTarget::Biglemma2B => m > r && r >= 0,
            EpsTarget::QuoED1 => m >= 1,
        };
        if !ok {
            return Err(Error::Range(format!("{target} is not defined at r={r}, m={m}")));
        }
        Ok(EpsLimitSpec { target, r, m })
    }

    /// (family, s, n) of the numerator.
    pub fn numerator(&self) -> (Family, i64, usize) {
        let (r, m) = (self.r, self.m);
        match self.target {
            EpsTarget::Biglemma2A => (Family::D, 2 * r, (2 * m) as usize),
            EpsTarget::Biglemma2B => (Family::E, 2 * r + 1, (2 * m + 1) as usize),
            EpsTarget::QuoED1 => (Family::E, 1, (2 * m + 1) as usize),
        }
    }

    /// The closed ratio the limit should equal.
    pub fn expected(&self) -> Result<RatFuncMu> {
        let (_, s, n) = self.numerator();
        match self.target {
            EpsTarget::QuoED1 => closed_form(CfId::QuoED1, self.m, 0)?.expr.eval(),
            _ => ratio_formula(RatioId::RsNeg1, s, n as i64),
        }
    }
}

fn quo_denominator(m: i64) -> Result<RatFuncMu> {
    let d = FamilySpec::new(Family::D, 1, 0, (2 * m - 1) as usize).determinant()?;
    Ok(RatFuncMu::from_poly(d.shift(&Rational::from_integer(3.into()))))
}

fn nonzero_ratio(num: RatFuncMu, den: RatFuncMu) -> Result<RatFuncMu> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    num.checked_div(&den)
}

/// The limit as a quotient of two ε-free determinants from the column-1
/// replacement pair (or Ẽ over D_{1,0}^{μ+3}(2m−1) for quoED1).
pub fn eps_limit_ratio(spec: &EpsLimitSpec) -> Result<RatFuncMu> {
    let (family, s, n) = spec.numerator();
    match spec.target {
        EpsTarget::QuoED1 => {
            let e = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::QuoED1Tilde, family, s, n })?;
            nonzero_ratio(e.det()?, quo_denominator(spec.m)?)
        }
        _ => {
            let a = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::AppendixAtilde, family, s, n })?;
            let b = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::AppendixBtilde, family, s, n })?;
            nonzero_ratio(a.det()?, b.det()?)
        }
    }
}

/// det of the leading matrix of A_{s+ε,−1+ε}(n) at μ + mu_shift.
pub fn leading_det(family: Family, s: i64, n: usize, mu_shift: i64) -> Result<RatFuncMu> {
    eps_leading_matrix(family, s, -1, n, mu_shift)?.det()
}

/// Same limit from the leading matrices of numerator and denominator.
pub fn eps_limit_direct(spec: &EpsLimitSpec) -> Result<RatFuncMu> {
    let (family, s, n) = spec.numerator();
    let num = leading_det(family, s, n, 0)?;
    match spec.target {
        EpsTarget::QuoED1 => nonzero_ratio(num, quo_denominator(spec.m)?),
        _ => nonzero_ratio(num, leading_det(family.partner(), s - 1, n - 1, 3)?),
    }
}

/// Same limit from the ε-bearing cofactor system (biglemma2 targets only).
pub fn eps_limit_syseps(spec: &EpsLimitSpec) -> Result<RatFuncMu> {
    if spec.target == EpsTarget::QuoED1 {
        return Err(Error::Range("the ε-bearing system covers the biglemma2 targets".into()));
    }
    let (family, s, n) = spec.numerator();
    Ok(verify_ansatz_identity(Identity::Biglemma2Eps, family, s, n)?.lhs)
}

/// binom(μ + c + 2ε, k + ε), scaled by `coeff`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct EpsBinom {
    c: i64,
    k: i64,
    coeff: i64,
}

impl EpsBinom {
    fn constant_part(&self) -> PolyMu {
        gbinom(&AffineMu::mu_plus(self.c), self.k).scale(&Rational::from_integer(self.coeff.into()))
    }

    /// Only available for k < 0; for k ≥ 0 it involves digamma values.
    fn first_order(&self) -> Result<RatFuncMu> {
        Ok(gbinom_eps_first_order(&AffineMu::mu_plus(self.c), self.k)?.scale(&Rational::from_integer(self.coeff.into())))
    }
}

/// Entry (i, j) of L·A_{s+ε,−1+ε}(n)·R written as binomials in ε plus an
/// integer delta part, from the difference and telescoping sum identities.
/// The last term is the one subtracted by the telescoping sum.
fn transformed_eps_entry(family: Family, s: i64, i: i64, j: i64) -> (Vec<EpsBinom>, i64) {
    let pm = family.sigma();
    if i == 1 {
        let hit = if (1..=j).contains(&(s + 2)) { pm } else { 0 };
        (vec![EpsBinom { c: s + j - 3, k: j - 2, coeff: 1 }, EpsBinom { c: s - 3, k: -2, coeff: -1 }], hit)
    } else {
        let d = if s == j - i { -pm } else { 0 };
        (vec![EpsBinom { c: i + j + s - 5, k: j - 3, coeff: 1 }, EpsBinom { c: i + s - 5, k: -3, coeff: -1 }], d)
    }
}

/// Leading-order data of L·A_{s+ε,−1+ε}(n)·R: column 1 carries ε-coefficients
/// (all its binomials have negative lower index), column 2 keeps its constant
/// 1 in row 1 and the ε-coefficient of its first binomial below (the common
/// subtracted term is removed by a column operation), and columns j ≥ 3 keep
/// exact constant parts.
pub fn eps_leading_from_binomials(family: Family, s: i64, n: usize) -> Result<ExactMatrix> {
    let ni = n as i64;
    let mut rows = Vec::with_capacity(n);
    for i in 1..=ni {
        let mut row = Vec::with_capacity(n);
        for j in 1..=ni {
            let (terms, delta) = transformed_eps_entry(family, s, i, j);
            let v = match j {
                1 => {
                    let mut acc = RatFuncMu::from_int(delta);
                    for t in &terms {
                        acc = &acc + &t.first_order()?;
                    }
                    acc
                }
                2 if i > 1 => &terms[0].first_order()? + &RatFuncMu::from_int(delta),
                _ => {
                    let mut acc = PolyMu::from_int(delta);
                    for t in terms.iter().filter(|t| t.k >= 0) {
                        acc = &acc + &t.constant_part();
                    }
                    RatFuncMu::from_poly(acc)
                }
            };
            row.push(v);
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows)
}

/// Compares a candidate ε-leading matrix with the data derived from the
/// binomial expansion, entry by entry.
pub fn eps_leading_matches(candidate: &ExactMatrix, family: Family, s: i64, n: usize) -> Result<bool> {
    Ok(*candidate == eps_leading_from_binomials(family, s, n)?)
}

/// The ε-bearing matrix used by the cofactor system agrees with the
/// first-order expansion of the transformed perturbed matrix.
pub fn eps_leading_coefficient_check(family: Family, s: i64, n: usize) -> Result<bool> {
    if n as i64 <= s {
        return Err(Error::Range(format!("needs n > s, got n={n}, s={s}")));
    }
    let built = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::Biglemma2Tilde, family, s, n })?;
    eps_leading_matches(&built, family, s, n)
}

/// lim ε · switching prefactor for (s, t) = (−1+ε, t+ε):
/// (μ−2)_n / (n−1)! · Π_{i=1}^{t} (μ+i−2)_n / (i)_n.
pub fn switch_prefactor_limit(t: i64, n: usize) -> Result<LinProd> {
    let ni = n as i64;
    let mut p = LinProd::one();
    p.mul_poch(&AffineMu::mu_plus(-2), ni, 1)?;
    p.mul_poch(&AffineMu::from_int(1), ni - 1, -1)?;
    for i in 1..=t {
        p.mul_poch(&AffineMu::mu_plus(i - 2), ni, 1)?;
        p.mul_poch(&AffineMu::from_int(i), ni, -1)?;
    }
    Ok(p)
}

/// Rebuilds A_{−1,t}(n) from limits: switch to (t, −1), step s down to 1 with
/// R_{s,−1} (alternating family, μ += 3 per step), close with the quoED1 ratio
/// and the direct determinant D_{1,0}(2m'−1). Needs the final n to be odd.
pub fn chained_value(family: Family, t: i64, n: usize) -> Result<RatFuncMu> {
    let mut acc = switch_prefactor_limit(t, n)?.to_ratfunc();
    let (mut fam, mut s, mut size, mut shift) = (family, t, n as i64, 0i64);
    while s > 1 {
        let r = ratio_formula(RatioId::RsNeg1, s, size)?.shift(&Rational::from_integer(shift.into()));
        acc = &acc * &r;
        fam = fam.partner();
        s -= 1;
        size -= 1;
        shift += 3;
    }
    if fam != Family::E || size % 2 == 0 || size < 3 {
        return Err(Error::Range(format!("chain ends at {fam}_{{1,-1}}({size}), which is not covered")));
    }
    let m = (size - 1) / 2;
    let q = closed_form(CfId::QuoED1, m, 0)?.expr.eval()?.shift(&Rational::from_integer(shift.into()));
    let base = quo_denominator(m)?.shift(&Rational::from_integer(shift.into()));
    Ok(&(&acc * &q) * &base)
}
