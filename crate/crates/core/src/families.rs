//! The binomial matrix families and the matrices derived from them.
//!
//! Entry (i, j) of the (s, t) matrix of size n is
//! binom(μ+i+j+s+t−4, j+t−1) + σ·δ(i+s, j+t), with σ = +1 for D, −1 for E
//! and 0 for the plain binomial matrix B.

use std::fmt;
use std::str::FromStr;

use num::One;
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, gbinom, AffineMu, LinProd, PolyMu, RatFuncMu, Rational};
use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, MinorSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    D,
    E,
    B,
}

impl Family {
    pub fn sigma(self) -> i64 {
        match self {
            Family::D => 1,
            Family::E => -1,
            Family::B => 0,
        }
    }

    /// D ↔ E; B is its own partner.
    pub fn partner(self) -> Family {
        match self {
            Family::D => Family::E,
            Family::E => Family::D,
            Family::B => Family::B,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::D => "D",
            Family::E => "E",
            Family::B => "B",
        };
        f.write_str(c)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "B" | "b" => Ok(Family::B),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub s: i64,
    pub t: i64,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(family: Family, s: i64, t: i64, n: usize) -> Self {
        FamilySpec { family, s, t, n }
    }

    pub fn entry(&self, i: usize, j: usize) -> PolyMu {
        family_entry(self.family, self.s, self.t, i as i64, j as i64)
    }

    pub fn build_matrix(&self) -> ExactMatrix {
        build_matrix(self)
    }

    pub fn determinant(&self) -> Result<PolyMu> {
        determinant(self)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{}}}({})", self.family, self.s, self.t, self.n)
    }
}

fn family_entry(family: Family, s: i64, t: i64, i: i64, j: i64) -> PolyMu {
    let b = gbinom(&AffineMu::mu_plus(i + j + s + t - 4), j + t - 1);
    if i + s == j + t && family != Family::B {
        &b + &PolyMu::from_int(family.sigma())
    } else {
        b
    }
}

pub fn build_matrix(spec: &FamilySpec) -> ExactMatrix {
    ExactMatrix::from_fn(spec.n, spec.n, |i, j| RatFuncMu::from_poly(spec.entry(i, j)))
}

/// Determinant as a polynomial in μ. Size 0 gives 1.
pub fn determinant(spec: &FamilySpec) -> Result<PolyMu> {
    let d = build_matrix(spec).det()?;
    d.as_poly()
        .cloned()
        .ok_or_else(|| Error::Pole(format!("determinant of {spec} is not a polynomial")))
}

/// Determinant with μ shifted by an integer, e.g. the μ+3 partners.
pub fn determinant_shifted(spec: &FamilySpec, shift: i64) -> Result<PolyMu> {
    Ok(determinant(spec)?.shift(&Rational::from_integer(shift.into())))
}

/// Subsets of {1..m} as bitmasks are enumerated up to this size.
pub const MAX_DELTAS: usize = 20;

/// Expands det(B + σP) over the deltas: Σ_I σ^|I| (−1)^{|d|·|I|} B with rows and
/// columns of I removed, where the deltas sit at (i, i+d) for d = s−t ≥ 0 and at
/// (i−d, i) for d < 0. No deltas fit when n ≤ |d|, leaving det B.
pub fn sum_of_minors(spec: &FamilySpec) -> Result<PolyMu> {
    if spec.family == Family::B {
        return Err(Error::Range("sum of minors needs family D or E".into()));
    }
    let b = build_matrix(&FamilySpec { family: Family::B, ..*spec });
    let d = spec.s - spec.t;
    let shift = d.unsigned_abs() as usize;
    let deltas = spec.n.saturating_sub(shift);
    if deltas > MAX_DELTAS {
        return Err(Error::CapExceeded(deltas));
    }
    let sigma = spec.family.sigma();
    let mut total = RatFuncMu::zero();
    for mask in 0u64..(1u64 << deltas) {
        let set: Vec<usize> = (1..=deltas).filter(|k| mask >> (k - 1) & 1 == 1).collect();
        let moved: Vec<usize> = set.iter().map(|k| k + shift).collect();
        let minor = if d >= 0 {
            MinorSpec::new(set.clone(), moved)
        } else {
            MinorSpec::new(moved, set.clone())
        };
        let odd = set.len() % 2 == 1 && (sigma == -1) != (shift % 2 == 1);
        let m = b.minor_det(&minor)?;
        total = if odd { &total - &m } else { &total + &m };
    }
    total.as_poly().cloned().ok_or_else(|| Error::Pole("sum of minors".into()))
}

/// The diagonal scalings u_{t,n} and v_{s,n}, written with Pochhammer symbols:
/// u_i = (μ+n−3)_{t+i−n+1} / (i+t−1)!, v_j = (j+s−1)! / (μ+n−3)_{s+j−n+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchVectors {
    pub s: i64,
    pub t: i64,
    pub n: usize,
    pub u: Vec<RatFuncMu>,
    pub v: Vec<RatFuncMu>,
}

pub fn switch_vectors(s: i64, t: i64, n: usize) -> Result<SwitchVectors> {
    if s < 0 || t < 0 || n == 0 {
        return Err(Error::Range(format!("switch vectors need s, t ≥ 0 and n ≥ 1, got ({s}, {t}, {n})")));
    }
    let base = AffineMu::mu_plus(n as i64 - 3);
    let nn = n as i64;
    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for i in 1..=nn {
        let mut p = LinProd::poch(&base, t + i - nn + 1)?;
        p.mul_rational(&Rational::new(One::one(), factorial((i + t - 1) as u64)));
        u.push(p.to_ratfunc());
        let mut q = LinProd::poch(&base, s + i - nn + 1)?.recip()?;
        q.mul_rational(&Rational::from_integer(factorial((i + s - 1) as u64)));
        v.push(q.to_ratfunc());
    }
    Ok(SwitchVectors { s, t, n, u, v })
}

impl SwitchVectors {
    /// u_i · v_{i+t−s} = 1 for 1 ≤ i ≤ n+s−t.
    pub fn check_pairing(&self) -> bool {
        let d = self.t - self.s;
        (1..=self.n as i64 + self.s - self.t)
            .all(|i| (&self.u[(i - 1) as usize] * &self.v[(i + d - 1) as usize]).is_one())
    }

    /// Π u_i v_i, which should equal the switching prefactor.
    pub fn product(&self) -> RatFuncMu {
        self.u.iter().zip(&self.v).fold(RatFuncMu::one(), |acc, (a, b)| &(&acc * a) * b)
    }
}

/// Π_{i=0}^{t−s−1} (μ+s+i−1)_n / (i+s+1)_n; empty (= 1) when t ≤ s.
pub fn switch_prefactor(s: i64, t: i64, n: usize) -> Result<LinProd> {
    let mut p = LinProd::one();
    for i in 0..(t - s).max(0) {
        p.mul_poch(&AffineMu::mu_plus(s + i - 1), n as i64, 1)?;
        p.mul_poch(&AffineMu::from_int(i + s + 1), n as i64, -1)?;
    }
    Ok(p)
}

/// Right side of the switching identity: prefactor × det of the (t, s) matrix.
pub fn switched_determinant(family: Family, s: i64, t: i64, n: usize) -> Result<PolyMu> {
    if s < 0 || t <= s {
        return Err(Error::Range(format!("switching needs 0 ≤ s < t, got s={s}, t={t}")));
    }
    let other = determinant(&FamilySpec::new(family, t, s, n))?;
    let r = &switch_prefactor(s, t, n)?.to_ratfunc() * &RatFuncMu::from_poly(other);
    r.as_poly().cloned().ok_or_else(|| Error::Pole("switched determinant".into()))
}

/// Checks transpose(A_{s,t}) = diag(u_t) · A_{t,s} · diag(v_s) entrywise.
pub fn factor_diag_holds(family: Family, s: i64, t: i64, n: usize) -> Result<bool> {
    let sv = switch_vectors(s, t, n)?;
    let lhs = build_matrix(&FamilySpec::new(family, s, t, n)).transpose();
    let mid = build_matrix(&FamilySpec::new(family, t, s, n));
    let rhs = ExactMatrix::from_fn(n, n, |i, j| &(&sv.u[i - 1] * mid.get(i, j)) * &sv.v[j - 1]);
    Ok(lhs == rhs)
}

/// Matrices obtained from the families by row and column operations, with
/// any ε already reduced to its leading order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransformedKind {
    /// L·A_{s,1}(n)·R for A = D or E.
    Biglemma1Tilde,
    /// Leading ε-coefficient matrix of L·A_{s+ε,−1+ε}(n)·R after the column-2
    /// correction, used by the ε-bearing cofactor system.
    Biglemma2Tilde,
    /// The 2m×2m matrix whose determinant is the ε-limit of E_{1+ε,−1+ε}(2m+1).
    QuoED1Tilde,
    /// (n−1)×(n−1): column 1 is 1/(μ+s+i−3)_2, then n−2 columns of the partner family.
    AppendixAtilde,
    /// Same as above with column 1 equal to 1/(μ+s+i−1).
    AppendixBtilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformedMatrixSpec {
    pub kind: TransformedKind,
    pub family: Family,
    pub s: i64,
    pub n: usize,
}

fn rf(p: PolyMu) -> RatFuncMu {
    RatFuncMu::from_poly(p)
}

fn binom_rf(c: i64, k: i64) -> RatFuncMu {
    rf(gbinom(&AffineMu::mu_plus(c), k))
}

fn poch_recip(base: AffineMu, len: i64) -> Result<RatFuncMu> {
    Ok(LinProd::poch(&base, len)?.recip()?.to_ratfunc())
}

pub fn build_transformed(spec: &TransformedMatrixSpec) -> Result<ExactMatrix> {
    let TransformedMatrixSpec { kind, family, s, n } = *spec;
    if family == Family::B {
        return Err(Error::Range("transformed matrices are defined for D and E".into()));
    }
    let pm = family.sigma();
    let ni = n as i64;
    match kind {
        TransformedKind::Biglemma1Tilde => {
            if n < 1 {
                return Err(Error::Dimension("empty matrix".into()));
            }
            // For s = 0 a delta falls into column 1 below the first row.
            if s < 1 {
                return Err(Error::Range(format!("L·A_{{s,1}}·R is tabulated for s ≥ 1, got s={s}")));
            }
            let mut rows = Vec::with_capacity(n);
            for i in 1..=ni {
                let mut row = Vec::with_capacity(n);
                for j in 1..=ni {
                    let v = if i == 1 {
                        if j == 1 {
                            &binom_rf(s - 1, 1) + &RatFuncMu::from_int(if s == 1 { pm } else { 0 })
                        } else {
                            // Pascal-summed first row: binom(μ+j+s−1, j) − 1, plus
                            // the deltas of columns 1..j.
                            let hit = if (1..=j).contains(&s) { pm } else { 0 };
                            &binom_rf(j + s - 1, j) + &RatFuncMu::from_int(hit - 1)
                        }
                    } else {
                        let d = if s == j - i + 2 { pm } else { 0 };
                        &binom_rf(i + j + s - 3, j - 1) - &RatFuncMu::from_int(d)
                    };
                    row.push(v);
                }
                rows.push(row);
            }
            ExactMatrix::from_rows(rows)
        }
        TransformedKind::Biglemma2Tilde => {
            if n < 2 {
                return Err(Error::Dimension("needs n ≥ 2".into()));
            }
            let mut rows = Vec::with_capacity(n);
            for i in 1..=ni {
                let mut row = Vec::with_capacity(n);
                for j in 1..=ni {
                    let v = match (i, j) {
                        (1, 1) => poch_recip(AffineMu::mu_plus(s - 2), 1)?,
                        (1, 2) => RatFuncMu::one(),
                        (1, _) => {
                            let hit = if (1..=j).contains(&(s + 2)) { pm } else { 0 };
                            &binom_rf(j + s - 3, j - 2) + &RatFuncMu::from_int(hit)
                        }
                        (_, 1) => -&poch_recip(AffineMu::mu_plus(i + s - 4), 2)?,
                        (_, 2) => poch_recip(AffineMu::mu_plus(i + s - 2), 1)?,
                        _ => {
                            let d = if s == j - i { pm } else { 0 };
                            &binom_rf(i + j + s - 5, j - 3) - &RatFuncMu::from_int(d)
                        }
                    };
                    row.push(v);
                }
                rows.push(row);
            }
            ExactMatrix::from_rows(rows)
        }
        TransformedKind::QuoED1Tilde => {
            if n < 3 || n % 2 == 0 || family != Family::E || s != 1 {
                return Err(Error::Range("the ε-limit matrix for E_{1,−1} needs odd n = 2m+1 ≥ 3".into()));
            }
            let size = ni - 1;
            let mut rows = Vec::with_capacity(n - 1);
            for i in 1..=size {
                let mut row = Vec::with_capacity(n - 1);
                row.push(poch_recip(AffineMu::mu_plus(i - 2), 2)?);
                for j in 2..=size {
                    let d = if i == j - 1 { 1 } else { 0 };
                    row.push(&binom_rf(i + j - 2, j - 2) + &RatFuncMu::from_int(d));
                }
                rows.push(row);
            }
            ExactMatrix::from_rows(rows)
        }
        TransformedKind::AppendixAtilde | TransformedKind::AppendixBtilde => {
            if n < 2 {
                return Err(Error::Dimension("needs n ≥ 2".into()));
            }
            let partner = FamilySpec::new(family.partner(), s - 1, 0, n - 1);
            let mut rows = Vec::with_capacity(n - 1);
            for i in 1..ni {
                let first = if kind == TransformedKind::AppendixAtilde {
                    poch_recip(AffineMu::mu_plus(s + i - 3), 2)?
                } else {
                    poch_recip(AffineMu::mu_plus(s + i - 1), 1)?
                };
                let mut row = vec![first];
                for j in 1..ni - 1 {
                    row.push(rf(partner.entry(i as usize, j as usize).shift(&Rational::from_integer(3.into()))));
                }
                rows.push(row);
            }
            ExactMatrix::from_rows(rows)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RatioId {
    /// R_{s,1}(n) = (n+s−2)(μ−1)(μ+n+1)(μ+s) / (2n(s−1)(μ+2)(μ+n+s−1))
    Rs1,
    /// R_{s,−1}(n) = 2s(n−1)(μ−3)(μ+n+s−2) / (μ(n+s)(μ+n−3)(μ+s−2))
    RsNeg1,
}

pub fn ratio_formula(id: RatioId, s: i64, n: i64) -> Result<RatFuncMu> {
    let mut p = LinProd::one();
    let q = |v: i64| Rational::from_integer(v.into());
    match id {
        RatioId::Rs1 => {
            if n == 0 || s == 1 {
                return Err(Error::Pole(format!("R_{{s,1}} at s={s}, n={n}")));
            }
            p.mul_rational(&(q(n + s - 2) / q(2 * n * (s - 1))));
            p.mul_affine(&AffineMu::mu_plus(-1), 1)?;
            p.mul_affine(&AffineMu::mu_plus(n + 1), 1)?;
            p.mul_affine(&AffineMu::mu_plus(s), 1)?;
            p.mul_affine(&AffineMu::mu_plus(2), -1)?;
            p.mul_affine(&AffineMu::mu_plus(n + s - 1), -1)?;
        }
        RatioId::RsNeg1 => {
            if n + s == 0 {
                return Err(Error::Pole(format!("R_{{s,-1}} at s={s}, n={n}")));
            }
            p.mul_rational(&(q(2 * s * (n - 1)) / q(n + s)));
            p.mul_affine(&AffineMu::mu_plus(-3), 1)?;
            p.mul_affine(&AffineMu::mu_plus(n + s - 2), 1)?;
            p.mul_affine(&AffineMu::mu_plus(0), -1)?;
            p.mul_affine(&AffineMu::mu_plus(n - 3), -1)?;
            p.mul_affine(&AffineMu::mu_plus(s - 2), -1)?;
        }
    }
    Ok(p.to_ratfunc())
}

/// Matrix with the ε-leading data of A_{s+ε,t+ε}(n): columns whose lower index
/// j+t−1 is negative carry the first-order coefficient, all others the exact
/// binomial (plus the delta). With exactly one such column the determinant of
/// the perturbed matrix is ε times the determinant of this one, up to O(ε²).
pub fn eps_leading_matrix(family: Family, s: i64, t: i64, n: usize, mu_shift: i64) -> Result<ExactMatrix> {
    let sigma = family.sigma();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n as i64 {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n as i64 {
            let k = j + t - 1;
            let x = AffineMu::mu_plus(i + j + s + t - 4 + mu_shift);
            let mut v = if k < 0 {
                crate::arith::gbinom_eps_first_order(&x, k)?
            } else {
                rf(gbinom(&x, k))
            };
            if i + s == j + t {
                v = &v + &RatFuncMu::from_int(sigma);
            }
            row.push(v);
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows)
}
