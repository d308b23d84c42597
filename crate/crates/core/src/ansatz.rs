//! Normalized cofactors c_{n,k}: the linear systems that characterize them,
//! the summation identities they satisfy, and recurrence guessing from data.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{AffineMu, LinProd, RatFuncMu, Rational};
use crate::error::{Error, Result};
use crate::families::{build_matrix, build_transformed, ratio_formula, Family, FamilySpec, RatioId, TransformedKind, TransformedMatrixSpec};
use crate::matrix::{qmat, ExactMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum System {
    /// c_1 = 1 and rows 2..n of L·A_{s,1}(n)·R annihilate c.
    Sys1,
    /// c_1 = 1 and columns 2..2m of the ε-limit matrix for E_{1,−1}(2m+1); n = 2m.
    Sys3,
    /// c_1 = 1 and the first n−2 columns of the partner A'_{s−1,0}(n−1) at μ+3.
    Sys2Appendix,
    /// The ε-bearing system with O(ε) dropped: unknowns c_2..c_n, c_1 = 1.
    SysEps,
    /// Plain ansatz on A(n): c_n = 1 and rows 1..n−1 of A(n) annihilate c.
    Plain,
}

impl FromStr for System {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sys1" => Ok(System::Sys1),
            "sys3" => Ok(System::Sys3),
            "sys2" | "sys2_appendix" | "sys2-appendix" => Ok(System::Sys2Appendix),
            "syseps" => Ok(System::SysEps),
            "plain" => Ok(System::Plain),
            other => Err(Error::Parse(format!("unknown system {other:?}"))),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            System::Sys1 => "sys1",
            System::Sys3 => "sys3",
            System::Sys2Appendix => "sys2",
            System::SysEps => "syseps",
            System::Plain => "plain",
        };
        f.write_str(s)
    }
}

/// The family the ratio lemmas pair with s: even s goes with D, odd s with E.
pub fn family_for(s: i64) -> Family {
    if s.rem_euclid(2) == 0 {
        Family::D
    } else {
        Family::E
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorRatioVector {
    pub n: usize,
    pub values: Vec<RatFuncMu>,
}

impl CofactorRatioVector {
    /// 1-based.
    pub fn get(&self, k: usize) -> &RatFuncMu {
        &self.values[k - 1]
    }
}

/// Coefficient matrix and right side of a system, in the unknown order c_1..c_len.
pub fn system_matrix(system: System, family: Family, s: i64, n: usize) -> Result<(ExactMatrix, Vec<RatFuncMu>)> {
    let unit = |len: usize, at: usize, v: RatFuncMu| -> Vec<RatFuncMu> {
        (0..len).map(|i| if i == at { v.clone() } else { RatFuncMu::zero() }).collect()
    };
    match system {
        System::Sys1 => {
            let t = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::Biglemma1Tilde, family, s, n })?;
            let mut rows = vec![unit(n, 0, RatFuncMu::one())];
            for i in 2..=n {
                rows.push(t.row(i));
            }
            Ok((ExactMatrix::from_rows(rows)?, unit(n, 0, RatFuncMu::one())))
        }
        System::Sys3 => {
            if n == 0 || n % 2 == 1 {
                return Err(Error::Range(format!("sys3 needs even n = 2m, got {n}")));
            }
            let t = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::QuoED1Tilde, family: Family::E, s: 1, n: n + 1 })?;
            let mut rows = vec![unit(n, 0, RatFuncMu::one())];
            for j in 2..=n {
                rows.push(t.col(j));
            }
            Ok((ExactMatrix::from_rows(rows)?, unit(n, 0, RatFuncMu::one())))
        }
        System::Sys2Appendix => {
            if n < 2 {
                return Err(Error::Range("sys2 needs n ≥ 2".into()));
            }
            let t = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::AppendixAtilde, family, s, n })?;
            let len = n - 1;
            let mut rows = vec![unit(len, 0, RatFuncMu::one())];
            for j in 2..=len {
                rows.push(t.col(j));
            }
            Ok((ExactMatrix::from_rows(rows)?, unit(len, 0, RatFuncMu::one())))
        }
        System::SysEps => {
            if n < 2 {
                return Err(Error::Range("syseps needs n ≥ 2".into()));
            }
            let t = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::Biglemma2Tilde, family, s, n })?;
            let len = n - 1;
            let rows: Vec<Vec<RatFuncMu>> = (2..=n).map(|j| (2..=n).map(|i| t.get(i, j).clone()).collect()).collect();
            // c_1 = 1 enters through the (1, 2) entry only.
            Ok((ExactMatrix::from_rows(rows)?, unit(len, 0, -t.get(1, 2))))
        }
        System::Plain => {
            let a = build_matrix(&FamilySpec::new(family, s, 1, n));
            plain_system(&a)
        }
    }
}

fn plain_system(a: &ExactMatrix) -> Result<(ExactMatrix, Vec<RatFuncMu>)> {
    let n = a.rows();
    let mut rows: Vec<Vec<RatFuncMu>> = (1..n).map(|i| a.row(i)).collect();
    let mut last = vec![RatFuncMu::zero(); n];
    last[n - 1] = RatFuncMu::one();
    rows.push(last.clone());
    Ok((ExactMatrix::from_rows(rows)?, last))
}

/// Unique exact solution with symbolic μ. For sys1 and the plain system the
/// family is taken as given; sys3 ignores family and s.
pub fn solve_cofactor_system(system: System, family: Family, s: i64, n: usize) -> Result<CofactorRatioVector> {
    let (a, b) = system_matrix(system, family, s, n)?;
    let x = a.solve(&b)?;
    let values = if system == System::SysEps {
        std::iter::once(RatFuncMu::one()).chain(x).collect()
    } else {
        x
    };
    Ok(CofactorRatioVector { n, values })
}

/// c_k = Cof(M, row, k) / Cof(M, row, norm) straight from minors.
pub fn cofactor_ratios(m: &ExactMatrix, row: usize, norm: usize) -> Result<Vec<RatFuncMu>> {
    let d = m.cofactor(row, norm)?;
    if d.is_zero() {
        return Err(Error::Singular);
    }
    (1..=m.cols()).map(|k| m.cofactor(row, k)?.checked_div(&d)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identity {
    /// Σ_k ã_{1,k} c_k = R_{s,1}(n).
    Biglemma1,
    /// Σ_i c_i / (μ+i−2)_2 = the closed ε-limit ratio for E_{1,−1}(2m+1); n = 2m.
    QuoED1,
    /// Σ c_i/(μ+s+i−3)_2 = R_{s,−1}(n) · Σ c_i/(μ+s+i−1).
    Biglemma2Appendix,
    /// Σ_{i≥2} ã_{i,1} c_i = R_{s,−1}(n).
    Biglemma2Eps,
    /// Σ_k a_{n,k} c_k = det A(n) / det A(n−1) for A_{s,1}.
    Plain,
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "biglemma1" => Ok(Identity::Biglemma1),
            "quoed1" | "quo-ed1" => Ok(Identity::QuoED1),
            "biglemma2" | "biglemma2-appendix" | "biglemma2_appendix" => Ok(Identity::Biglemma2Appendix),
            "biglemma2-eps" | "biglemma2_eps" => Ok(Identity::Biglemma2Eps),
            "plain" => Ok(Identity::Plain),
            other => Err(Error::Parse(format!("unknown identity {other:?}"))),
        }
    }
}

impl Identity {
    pub fn system(self) -> System {
        match self {
            Identity::Biglemma1 => System::Sys1,
            Identity::QuoED1 => System::Sys3,
            Identity::Biglemma2Appendix => System::Sys2Appendix,
            Identity::Biglemma2Eps => System::SysEps,
            Identity::Plain => System::Plain,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: RatFuncMu,
    pub rhs: RatFuncMu,
    pub residual: RatFuncMu,
}

/// Closed ratio −(4m−2)(μ−3)(μ+2m+1) / ((m+1)(μ−1)(μ+1)(μ+3)(μ+2m−2)).
pub fn quo_ed1_ratio(m: i64) -> Result<RatFuncMu> {
    let mut p = LinProd::from_rational(Rational::new((-(4 * m - 2)).into(), (m + 1).into()));
    for (c, e) in [(-3, 1), (2 * m + 1, 1), (-1, -1), (1, -1), (3, -1), (2 * m - 2, -1)] {
        p.mul_affine(&AffineMu::mu_plus(c), e)?;
    }
    Ok(p.to_ratfunc())
}

fn recip_poch(c: i64, len: i64) -> Result<RatFuncMu> {
    Ok(LinProd::poch(&AffineMu::mu_plus(c), len)?.recip()?.to_ratfunc())
}

/// Both sides of an identity evaluated at the given c-vector.
pub fn identity_sides(id: Identity, family: Family, s: i64, n: usize, c: &CofactorRatioVector) -> Result<(RatFuncMu, RatFuncMu)> {
    let dot = |coef: &dyn Fn(usize) -> Result<RatFuncMu>, range: std::ops::RangeInclusive<usize>| -> Result<RatFuncMu> {
        let mut acc = RatFuncMu::zero();
        for i in range {
            acc = &acc + &(&coef(i)? * c.get(i));
        }
        Ok(acc)
    };
    let ni = n as i64;
    match id {
        Identity::Biglemma1 => {
            let t = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::Biglemma1Tilde, family, s, n })?;
            Ok((dot(&|k| Ok(t.get(1, k).clone()), 1..=n)?, ratio_formula(RatioId::Rs1, s, ni)?))
        }
        Identity::QuoED1 => {
            let lhs = dot(&|i| recip_poch(i as i64 - 2, 2), 1..=n)?;
            Ok((lhs, quo_ed1_ratio(ni / 2)?))
        }
        Identity::Biglemma2Appendix => {
            let lhs = dot(&|i| recip_poch(s + i as i64 - 3, 2), 1..=n - 1)?;
            let inner = dot(&|i| recip_poch(s + i as i64 - 1, 1), 1..=n - 1)?;
            Ok((lhs, &ratio_formula(RatioId::RsNeg1, s, ni)? * &inner))
        }
        Identity::Biglemma2Eps => {
            let t = build_transformed(&TransformedMatrixSpec { kind: TransformedKind::Biglemma2Tilde, family, s, n })?;
            Ok((dot(&|i| Ok(t.get(i, 1).clone()), 2..=n)?, ratio_formula(RatioId::RsNeg1, s, ni)?))
        }
        Identity::Plain => {
            let a = build_matrix(&FamilySpec::new(family, s, 1, n));
            let lhs = dot(&|k| Ok(a.get(n, k).clone()), 1..=n)?;
            let prev = build_matrix(&FamilySpec::new(family, s, 1, n - 1)).det()?;
            Ok((lhs, a.det()?.checked_div(&prev)?))
        }
    }
}

pub fn verify_ansatz_identity(id: Identity, family: Family, s: i64, n: usize) -> Result<IdentityCheck> {
    let c = solve_cofactor_system(id.system(), family, s, n)?;
    check_with(id, family, s, n, &c)
}

/// Same check with a caller-supplied c-vector; used to confirm that a
/// perturbed vector is rejected.
pub fn check_with(id: Identity, family: Family, s: i64, n: usize, c: &CofactorRatioVector) -> Result<IdentityCheck> {
    let (lhs, rhs) = identity_sides(id, family, s, n, c)?;
    let residual = &lhs - &rhs;
    Ok(IdentityCheck { holds: residual.is_zero(), lhs, rhs, residual })
}

/// c-values over (n, k) at a fixed rational μ.
pub type CData = BTreeMap<(usize, usize), Rational>;

/// Solves `system` numerically at μ for every n in 1..=max_n (sizes where the
/// system is defined) and tabulates c_{n,k}.
pub fn cofactor_data(system: System, family: Family, s: i64, mu: &Rational, max_n: usize) -> Result<CData> {
    let mut out = CData::new();
    for n in 1..=max_n {
        let (a, b) = match system_matrix(system, family, s, n) {
            Ok(v) => v,
            Err(Error::Range(_)) | Err(Error::Dimension(_)) => continue,
            Err(e) => return Err(e),
        };
        let aq = a.at(mu)?;
        let rows: Vec<Vec<Rational>> = (1..=aq.rows())
            .map(|i| aq.row(i).iter().map(|e| e.eval(mu)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let bq: Vec<Rational> = b.iter().map(|e| e.eval(mu)).collect::<Result<_>>()?;
        let mut x = qmat::solve(&rows, &bq)?;
        if system == System::SysEps {
            x.insert(0, Rational::one());
        }
        for (k, v) in x.into_iter().enumerate() {
            out.insert((n, k + 1), v);
        }
    }
    Ok(out)
}

/// Shape of a recurrence: shifts a ∈ 0..n_shifts, b ∈ 0..k_shifts and
/// coefficient polynomials in (n, k) of total degree ≤ degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub n_shifts: usize,
    pub k_shifts: usize,
    pub degree: usize,
}

impl Shape {
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for a in 0..self.n_shifts {
            for b in 0..self.k_shifts {
                v.push((a, b));
            }
        }
        v
    }

    pub fn monomials(&self) -> Vec<(u32, u32)> {
        let mut v = Vec::new();
        for p in 0..=self.degree as u32 {
            for q in 0..=(self.degree as u32 - p) {
                v.push((p, q));
            }
        }
        v
    }

    pub fn unknowns(&self) -> usize {
        self.support().len() * self.monomials().len()
    }
}

impl FromStr for Shape {
    type Err = Error;
    /// "AxB" or "AxB:D".
    fn from_str(s: &str) -> Result<Self> {
        let (sup, deg) = s.split_once(':').unwrap_or((s, "0"));
        let (a, b) = sup.split_once(['x', 'X']).ok_or_else(|| Error::Parse(format!("support {sup:?} is not AxB")))?;
        let p = |t: &str| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}")));
        Ok(Shape { n_shifts: p(a)?, k_shifts: p(b)?, degree: p(deg)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub shape: Shape,
    /// One polynomial per support point, coefficients indexed like `shape.monomials()`.
    pub coefficients: Vec<Vec<Rational>>,
    /// Dimension of the solution space on the training data.
    pub solution_dim: usize,
    pub training_equations: usize,
    pub validation_equations: usize,
}

impl Recurrence {
    /// Σ_{(a,b)} p_{a,b}(n, k) · c_{n+a, k+b} at one anchor, or None when a
    /// shifted point is missing from the data.
    pub fn residual_at(&self, data: &CData, n: usize, k: usize) -> Option<Rational> {
        residual_at(&self.shape, &self.coefficients.concat(), data, n, k)
    }

    pub fn annihilates(&self, data: &CData, anchors: &[(usize, usize)]) -> bool {
        anchors.iter().all(|&(n, k)| self.residual_at(data, n, k).is_none_or(|r| r.is_zero()))
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mons = self.shape.monomials();
        let mut first = true;
        for ((a, b), coeffs) in self.shape.support().iter().zip(&self.coefficients) {
            if coeffs.iter().all(|c| c.is_zero()) {
                continue;
            }
            let poly: Vec<String> = mons
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&(p, q), c)| {
                    let mut t = c.to_string();
                    if p > 0 {
                        t += &if p == 1 { "*n".to_string() } else { format!("*n^{p}") };
                    }
                    if q > 0 {
                        t += &if q == 1 { "*k".to_string() } else { format!("*k^{q}") };
                    }
                    t
                })
                .collect();
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*c(n+{a},k+{b})", poly.join(" + "))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = 0")
    }
}

fn residual_at(shape: &Shape, flat: &[Rational], data: &CData, n: usize, k: usize) -> Option<Rational> {
    let row = equation_row(shape, data, n, k)?;
    Some(row.iter().zip(flat).map(|(a, b)| a * b).fold(Rational::zero(), |acc, x| acc + x))
}

fn equation_row(shape: &Shape, data: &CData, n: usize, k: usize) -> Option<Vec<Rational>> {
    let mons = shape.monomials();
    let nq = Rational::from_integer(n.into());
    let kq = Rational::from_integer(k.into());
    let mut row = Vec::with_capacity(shape.unknowns());
    for (a, b) in shape.support() {
        let v = data.get(&(n + a, k + b))?;
        for &(p, q) in &mons {
            row.push(v * pow(&nq, p) * pow(&kq, q));
        }
    }
    Some(row)
}

fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// Anchors (n, k) whose shifted points all lie in `data`, split by whether
/// the largest row index used is at most `train_max_n`.
pub fn anchors(shape: &Shape, data: &CData, train_max_n: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let top = shape.n_shifts.saturating_sub(1);
    let mut train = Vec::new();
    let mut valid = Vec::new();
    for &(n, k) in data.keys() {
        if equation_row(shape, data, n, k).is_none() {
            continue;
        }
        if n + top <= train_max_n {
            train.push((n, k));
        } else {
            valid.push((n, k));
        }
    }
    (train, valid)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GuessOutcome {
    /// The training data determine a solution space, and all of it annihilates the validation anchors.
    Found(Recurrence),
    /// Only the zero recurrence fits the training data.
    Trivial,
    /// Training admits solutions but some of them fail on validation data,
    /// so the training data do not pin a recurrence down.
    Unconfirmed { solution_dim: usize },
}

/// Fits `shape` on anchors that stay within n ≤ train_max_n and validates on
/// the remaining anchors. A recurrence is reported only if every solution of
/// the training system also holds on validation data, so nothing is chosen
/// by looking at the held-out rows.
pub fn guess_recurrence(data: &CData, train_max_n: usize, shape: Shape) -> Result<GuessOutcome> {
    let unknowns = shape.unknowns();
    if unknowns == 0 {
        return Err(Error::Range("empty ansatz".into()));
    }
    let (train, valid) = anchors(&shape, data, train_max_n);
    if train.len() < 2 * unknowns {
        return Err(Error::InsufficientData(format!("{} equations for {} unknowns", train.len(), unknowns)));
    }
    let rows: Vec<Vec<Rational>> = train.iter().map(|&(n, k)| equation_row(&shape, data, n, k).expect("anchor")).collect();
    let basis = qmat::nullspace(&rows, unknowns);
    if basis.is_empty() {
        return Ok(GuessOutcome::Trivial);
    }
    let all_hold = basis.iter().all(|v| valid.iter().all(|&(n, k)| residual_at(&shape, v, data, n, k).is_none_or(|r| r.is_zero())));
    if !all_hold {
        return Ok(GuessOutcome::Unconfirmed { solution_dim: basis.len() });
    }
    let per = shape.monomials().len();
    let coefficients = basis[0].chunks(per).map(|c| c.to_vec()).collect();
    Ok(GuessOutcome::Found(Recurrence {
        shape,
        coefficients,
        solution_dim: basis.len(),
        training_equations: train.len(),
        validation_equations: valid.len(),
    }))
}

/// One attempted shape in a search, for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStep {
    pub shape: Shape,
    pub outcome: std::result::Result<GuessOutcome, String>,
}

/// Tries shapes in order of increasing unknown count, up to the given
/// bounds, and stops at the first confirmed recurrence.
pub fn search_recurrence(data: &CData, train_max_n: usize, max_shifts: usize, max_degree: usize) -> (Option<Recurrence>, Vec<SearchStep>) {
    let mut shapes = Vec::new();
    for a in 1..=max_shifts {
        for b in 1..=max_shifts {
            if a * b < 2 {
                continue;
            }
            for d in 0..=max_degree {
                shapes.push(Shape { n_shifts: a, k_shifts: b, degree: d });
            }
        }
    }
    shapes.sort_by_key(|s| (s.unknowns(), s.n_shifts, s.k_shifts, s.degree));
    let mut log = Vec::new();
    for shape in shapes {
        let outcome = guess_recurrence(data, train_max_n, shape);
        let done = matches!(outcome, Ok(GuessOutcome::Found(_)));
        let found = if let Ok(GuessOutcome::Found(r)) = &outcome { Some(r.clone()) } else { None };
        log.push(SearchStep { shape, outcome: outcome.map_err(|e| e.to_string()) });
        if done {
            return (found, log);
        }
    }
    (None, log)
}
