//! Registered checks grouped into suites, a parallel runner and the JSON report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ansatz::{family_for, verify_ansatz_identity, Identity};
use crate::arith::{factorial, gbinom, pascal_step, pascal_sum, pascal_sum_closed, poch, AffineMu, PolyMu, RatFuncMu, Rational};
use crate::closed_forms::{cancel_poch_sides, cf_det_no_delta, closed_form, inventory, krat37_ugly_via_switch, ktconj24_sides, CfId, Formula, Target};
use crate::epsilon::{chained_value, eps_leading_coefficient_check, eps_limit_direct, eps_limit_ratio, eps_limit_syseps, EpsLimitSpec, EpsTarget};
use crate::error::{Error, Result};
use crate::families::{determinant, determinant_shifted, factor_diag_holds, sum_of_minors, switch_prefactor, switch_vectors, switched_determinant, Family, FamilySpec};
use crate::matrix::{apply_transform, ElementaryTransform, Side, TransformKind};
use crate::tilings::{build_region, cyclic_tiling_count, enumerate_paths, first_path_tuple, lgv_count, render_svg, PathProblem};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable that overrides the configured job count.
pub const JOBS_ENV: &str = "BINDET_JOBS";

pub const SUITES: [&str; 11] =
    ["pochhammer", "figures", "switch", "djd", "famA", "closed-forms", "theorems", "triangles", "ansatz", "eps", "tilings"];

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    /// "p/q" text form.
    Rational(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Rational(v) => f.write_str(v),
        }
    }
}

pub type Params = BTreeMap<String, ParamValue>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub params: Params,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.equal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.equal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub max_m: i64,
    pub max_r: i64,
    pub max_n: usize,
    pub jobs: usize,
    pub output: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { suites: vec!["all".into()], max_m: 4, max_r: 4, max_n: 9, jobs: 0, output: None }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_m < 1 || self.max_r < 1 || self.max_n < 1 {
            return Err(Error::Range("grid bounds must be ≥ 1".into()));
        }
        for s in &self.suites {
            if s != "all" && !SUITES.contains(&s.as_str()) {
                return Err(Error::Parse(format!("unknown suite {s:?}")));
            }
        }
        Ok(())
    }

    /// Suite names with "all" expanded, in registry order, without repeats.
    pub fn selected(&self) -> Vec<&'static str> {
        let all = self.suites.iter().any(|s| s == "all");
        SUITES.iter().copied().filter(|name| all || self.suites.iter().any(|s| s == name)).collect()
    }

    /// BINDET_JOBS wins over the configured count; 0 means one per core.
    pub fn effective_jobs(&self) -> usize {
        std::env::var(JOBS_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(self.jobs)
    }
}

type CheckFn = Box<dyn Fn() -> Result<(RatFuncMu, RatFuncMu)> + Send + Sync>;

/// One registered check: an id, its parameters and a thunk producing both sides.
pub struct Check {
    pub id: String,
    pub params: Params,
    run: CheckFn,
}

impl Check {
    pub fn new(id: impl Into<String>, params: &[(&str, i64)], run: impl Fn() -> Result<(RatFuncMu, RatFuncMu)> + Send + Sync + 'static) -> Self {
        let params = params.iter().map(|(k, v)| (k.to_string(), ParamValue::Int(*v))).collect();
        Check { id: id.into(), params, run: Box::new(run) }
    }

    pub fn with_param(mut self, key: &str, v: ParamValue) -> Self {
        self.params.insert(key.into(), v);
        self
    }

    pub fn execute(&self) -> CheckRecord {
        let t0 = Instant::now();
        let out = (self.run)();
        let elapsed_ms = t0.elapsed().as_millis() as u64;
        match out {
            Ok((lhs, rhs)) => CheckRecord {
                check_id: self.id.clone(),
                params: self.params.clone(),
                equal: lhs == rhs,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                elapsed_ms,
                error: None,
            },
            Err(e) => CheckRecord {
                check_id: self.id.clone(),
                params: self.params.clone(),
                lhs: String::new(),
                rhs: String::new(),
                equal: false,
                elapsed_ms,
                error: Some(e.to_string()),
            },
        }
    }
}

fn poly(p: PolyMu) -> RatFuncMu {
    RatFuncMu::from_poly(p)
}

fn flag(b: bool) -> RatFuncMu {
    RatFuncMu::from_int(b as i64)
}

fn count(v: impl Into<num::BigInt>) -> RatFuncMu {
    RatFuncMu::constant(Rational::from_integer(v.into()))
}

fn boolean(id: &str, params: &[(&str, i64)], f: impl Fn() -> Result<bool> + Send + Sync + 'static) -> Check {
    Check::new(id, params, move || Ok((flag(f()?), flag(true))))
}

/// Formula expression against its determinant target.
fn formula_check(prefix: &str, f: Formula) -> Option<Check> {
    if matches!(f.target, Target::EpsLimit) {
        return None;
    }
    let params: Vec<(&str, i64)> = f.params.clone();
    let id = format!("{prefix}/{}", f.id);
    Some(Check::new(id, &params, move || {
        let lhs = f.expr.eval()?;
        let rhs = f.target.evaluate()?.ok_or_else(|| Error::Range("no direct target".into()))?;
        Ok((lhs, rhs))
    }))
}

/// All checks of one suite for the grid in `cfg`.
pub fn suite_checks(name: &str, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    Ok(match name {
        "pochhammer" => pochhammer_checks(cfg),
        "figures" => figure_checks(),
        "switch" => switch_checks(cfg),
        "djd" => djd_checks(cfg),
        "famA" => fam_a_checks(cfg),
        "closed-forms" => closed_form_checks(cfg),
        "theorems" => theorem_checks(cfg),
        "triangles" => triangle_checks(cfg),
        "ansatz" => ansatz_checks(cfg),
        "eps" => eps_checks(cfg),
        "tilings" => tiling_checks(cfg),
        other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
    })
}

const POCH_CASES: usize = 200;

fn random_base(rng: &mut ChaCha8Rng) -> AffineMu {
    let slopes = [Rational::from_integer(1.into()), Rational::new(1.into(), 2.into()), Rational::from_integer(2.into()), Rational::from_integer((-1).into())];
    let slope = slopes[rng.random_range(0..slopes.len())].clone();
    let c = Rational::new(rng.random_range(-12i64..=12).into(), rng.random_range(1i64..=3).into());
    AffineMu::new(slope, c)
}

/// P1–P8 over seeded random bases, pascal identities, CancelPoch.
fn pochhammer_checks(_cfg: &SuiteConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b1d_e7);
    let mut out = Vec::new();
    // P1 with integer bases: (a)_b = Γ(a+b)/Γ(a) = (a+b−1)!/(a−1)!.
    for case in 0..POCH_CASES as i64 {
        let a = 1 + case % 15;
        let b = case / 15;
        out.push(Check::new("pochhammer/P1", &[("a", a), ("b", b)], move || {
            let lhs = poch(&AffineMu::from_int(a), b)?;
            let rhs = RatFuncMu::constant(Rational::new(factorial((a + b - 1) as u64), factorial((a - 1) as u64)));
            Ok((lhs, rhs))
        }));
    }
    let push = |out: &mut Vec<Check>, id: &str, case: usize, a: AffineMu, b: i64, k: i64, f: fn(&AffineMu, i64, i64) -> Result<(RatFuncMu, RatFuncMu)>| {
        let text = ParamValue::Rational(a.to_string());
        out.push(Check::new(id, &[("case", case as i64), ("b", b), ("k", k)], move || f(&a, b, k)).with_param("a", text));
    };
    let props: [(&str, fn(&AffineMu, i64, i64) -> Result<(RatFuncMu, RatFuncMu)>); 7] = [
        ("pochhammer/P2", |a, b, _| Ok((poch(a, -b)?, poch(&a.plus_int(-b), b)?.recip()?))),
        ("pochhammer/P3", |a, b, _| {
            let half = a.plus(&Rational::new(1.into(), 2.into()));
            let two_a = AffineMu::new(a.slope.clone() * Rational::from_integer(2.into()), a.constant.clone() * Rational::from_integer(2.into()));
            let lhs = (&poch(a, b)? * &poch(&half, b)?).scale(&Rational::from_integer(num::BigInt::from(2).pow((2 * b) as u32)));
            Ok((lhs, poch(&two_a, 2 * b)?))
        }),
        ("pochhammer/P4", |a, b, k| Ok((&poch(a, b)? * &poch(&a.plus_int(b), k)?, poch(a, b + k)?))),
        ("pochhammer/P5", |a, b, k| Ok((poch(a, b)?.checked_div(&poch(a, k)?)?, poch(&a.plus_int(k), b - k)?))),
        ("pochhammer/P6", |a, b, _| {
            let sign = if b % 2 == 0 { 1 } else { -1 };
            Ok((poch(&a.neg(), b)?, poch(&a.plus_int(1 - b), b)?.scale(&Rational::from_integer(sign.into()))))
        }),
        ("pochhammer/P7", |a, b, k| {
            let l = (0..b).try_fold(RatFuncMu::one(), |acc, i| Ok::<_, Error>(&acc * &poch(&a.plus_int(i), k)?))?;
            let r = (0..k).try_fold(RatFuncMu::one(), |acc, i| Ok::<_, Error>(&acc * &poch(&a.plus_int(i), b)?))?;
            Ok((l, r))
        }),
        ("pochhammer/P8", |a, b, k| {
            let l = (0..k).try_fold(RatFuncMu::one(), |acc, i| Ok::<_, Error>(&acc * &poch(&a.plus_int(i * b), b)?))?;
            Ok((l, poch(a, k * b)?))
        }),
    ];
    for (id, f) in props {
        let mut made = 0;
        let mut case = 0;
        while made < POCH_CASES {
            case += 1;
            let a = random_base(&mut rng);
            let (b, k) = match id {
                // Signed lengths where the identity allows them.
                "pochhammer/P4" | "pochhammer/P5" => (rng.random_range(-12i64..=12), rng.random_range(-12i64..=12)),
                "pochhammer/P7" | "pochhammer/P8" => (rng.random_range(0i64..=6), rng.random_range(0i64..=6)),
                _ => (rng.random_range(0i64..=12), 0),
            };
            // Skip parameter choices that hit a pole on either side.
            if f(&a, b, k).is_err() {
                continue;
            }
            push(&mut out, id, case, a, b, k, f);
            made += 1;
        }
    }
    for c in -3i64..=3 {
        for y in -10i64..=10 {
            out.push(Check::new("pochhammer/pascal", &[("c", c), ("y", y)], move || {
                let (a, b, d) = pascal_step(&AffineMu::mu_plus(c), y);
                Ok((poly(&a - &b), poly(d)))
            }));
            for j in 1..=10u64 {
                out.push(Check::new("pochhammer/pascal-sum", &[("c", c), ("y", y), ("j", j as i64)], move || {
                    let x = AffineMu::mu_plus(c);
                    Ok((poly(pascal_sum(&x, y, j)), poly(pascal_sum_closed(&x, y, j))))
                }));
            }
        }
    }
    for k in 0..=12i64 {
        out.push(Check::new("pochhammer/gbinom-degree", &[("k", k)], move || {
            let d = gbinom(&AffineMu::mu_plus(3), k).degree().map(|d| d as i64).unwrap_or(-1);
            Ok((RatFuncMu::from_int(d), RatFuncMu::from_int(k)))
        }));
    }
    for m in 1..=10 {
        out.push(Check::new("pochhammer/cancel-poch", &[("m", m)], move || {
            let (l, r) = cancel_poch_sides(m)?;
            Ok((poly(l), poly(r)))
        }));
    }
    out
}

/// E_{2,1}^2(2) = 10 with minors 6 and 4, by every route.
fn figure_checks() -> Vec<Check> {
    let mu2 = Rational::from_integer(2.into());
    let spec = FamilySpec::new(Family::E, 2, 1, 2);
    let mut out = Vec::new();
    let m = mu2.clone();
    out.push(Check::new("figures/determinant", &[("mu", 2)], move || Ok((RatFuncMu::constant(determinant(&spec)?.eval(&m)), RatFuncMu::from_int(10)))));
    let m = mu2.clone();
    out.push(Check::new("figures/sum-of-minors", &[("mu", 2)], move || Ok((RatFuncMu::constant(sum_of_minors(&spec)?.eval(&m)), RatFuncMu::from_int(10)))));
    out.push(Check::new("figures/cyclic-count", &[("mu", 2)], || Ok((count(cyclic_tiling_count(Family::E, 2, 1, 2, 2)?.value), RatFuncMu::from_int(10)))));
    for (set, want) in [(vec![], 6i64), (vec![1usize], 4)] {
        let size = set.len() as i64;
        let s2 = set.clone();
        out.push(Check::new("figures/lgv", &[("deleted", size)], move || {
            Ok((count(lgv_count(&PathProblem::with_deleted(2, 2, 1, 2, &s2)?)?.value), RatFuncMu::from_int(want)))
        }));
        out.push(Check::new("figures/enumerate", &[("deleted", size)], move || {
            let n = enumerate_paths(&PathProblem::with_deleted(2, 2, 1, 2, &set)?, 1000)?.len();
            Ok((RatFuncMu::from_int(n as i64), RatFuncMu::from_int(want)))
        }));
    }
    out
}

fn switch_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for family in [Family::D, Family::E] {
        for t in 1..=4 {
            for s in 0..t {
                for n in 1..=cfg.max_n.min(7) {
                    let p = [("s", s), ("t", t), ("n", n as i64)];
                    out.push(Check::new(format!("switch/{family}"), &p, move || {
                        Ok((poly(determinant(&FamilySpec::new(family, s, t, n))?), poly(switched_determinant(family, s, t, n)?)))
                    }));
                    if n <= 5 {
                        out.push(boolean(&format!("switch/factor-diag-{family}"), &p, move || factor_diag_holds(family, s, t, n)));
                    }
                }
            }
        }
    }
    for t in 0..=4 {
        for s in 0..=t {
            for n in 1..=6usize {
                let p = [("s", s), ("t", t), ("n", n as i64)];
                out.push(boolean("switch/uv-pairing", &p, move || Ok(switch_vectors(s, t, n)?.check_pairing())));
                out.push(Check::new("switch/uv-product", &p, move || {
                    Ok((switch_vectors(s, t, n)?.product(), switch_prefactor(s, t, n)?.to_ratfunc()))
                }));
            }
        }
    }
    out
}

/// Binomial-array window M_{s,t}(n): rows s+1..s+n, columns t+1..t+n of binom(μ+x+y−4, y−1).
fn window(s: i64, t: i64, n: usize) -> Result<PolyMu> {
    determinant(&FamilySpec::new(Family::B, s, t, n))
}

fn djd_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0d6_50);
    let mut out = Vec::new();
    for case in 0..50 {
        let s = rng.random_range(-3i64..=5);
        let t = rng.random_range(-3i64..=5);
        let n = rng.random_range(2usize..=6);
        out.push(Check::new("djd/window", &[("case", case), ("s", s), ("t", t), ("n", n as i64)], move || {
            let lhs = &window(s, t, n)? * &window(s + 1, t + 1, n - 2)?;
            let rhs = &(&window(s, t, n - 1)? * &window(s + 1, t + 1, n - 1)?) - &(&window(s + 1, t, n - 1)? * &window(s, t + 1, n - 1)?);
            Ok((poly(lhs), poly(rhs)))
        }));
    }
    for n in 1..=10usize {
        for kind in [TransformKind::L, TransformKind::R] {
            out.push(Check::new(format!("djd/{kind:?}-det"), &[("n", n as i64)], move || Ok((ElementaryTransform::new(kind, n)?.matrix().det()?, RatFuncMu::one()))));
        }
    }
    for family in [Family::D, Family::E] {
        for s in 0..=3 {
            for n in 2..=cfg.max_n.min(6) {
                out.push(Check::new(format!("djd/LAR-{family}"), &[("s", s), ("n", n as i64)], move || {
                    let a = FamilySpec::new(family, s, 1, n).build_matrix();
                    let l = ElementaryTransform::new(TransformKind::L, n)?;
                    let r = ElementaryTransform::new(TransformKind::R, n)?;
                    let lar = apply_transform(&r, Side::Right, &apply_transform(&l, Side::Left, &a)?)?;
                    Ok((lar.det()?, a.det()?))
                }));
            }
        }
    }
    out
}

fn fam_a_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=cfg.max_n.min(8) {
        for s in 1..=n as i64 {
            for family in [Family::E, Family::D] {
                out.push(Check::new(format!("famA/{family}"), &[("s", s), ("n", n as i64)], move || {
                    let lhs = determinant(&FamilySpec::new(family, s, 0, n))?;
                    let rhs = determinant_shifted(&FamilySpec::new(family.partner(), s - 1, 0, n - 1), 3)?;
                    Ok((poly(lhs), poly(rhs)))
                }));
            }
        }
    }
    for n in 1..=6usize {
        for s in 1..=n as i64 {
            for mu in (2 - s)..=(2 - s + 4) {
                out.push(boolean("famA/region", &[("s", s), ("n", n as i64), ("mu", mu)], move || {
                    Ok(build_region(s, 0, n, mu)?.reduced == build_region(s - 1, 0, n - 1, mu + 3)?.reduced)
                }));
            }
        }
    }
    out
}

fn closed_form_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for s in 0..=4 {
        for t in 0..=4 {
            for n in 1..=6i64 {
                let p = [("s", s), ("t", t), ("n", n)];
                out.push(Check::new("closed-forms/det-no-delta", &p, move || {
                    let f = cf_det_no_delta(s, t, n)?;
                    Ok((f.expr.eval()?, f.target.evaluate()?.expect("determinant target")))
                }));
                if n <= s - t {
                    for family in [Family::D, Family::E] {
                        out.push(Check::new(format!("closed-forms/det-no-delta-{family}"), &p, move || {
                            let f = cf_det_no_delta(s, t, n)?;
                            Ok((f.expr.eval()?, poly(determinant(&FamilySpec::new(family, s, t, n as usize))?)))
                        }));
                    }
                }
            }
        }
    }
    out.extend(grid_formulas(cfg, |id| !id.is_triangle()).into_iter().filter_map(|f| formula_check("closed-forms", f)));
    out
}

fn grid_formulas(cfg: &SuiteConfig, keep: impl Fn(CfId) -> bool) -> Vec<Formula> {
    inventory(cfg.max_m)
        .into_iter()
        .filter(|f| keep(f.id) && f.params.iter().all(|(k, v)| *k != "r" || *v <= cfg.max_r))
        .collect()
}

fn theorem_checks(cfg: &SuiteConfig) -> Vec<Check> {
    use CfId::*;
    let main = [Krat37Nice, Krat37Ugly, KtConj20, Eneg1, KtConj21, EdCor1, EdCor2, E11, Es0EvenZero, Es0Even, Es0OddOdd, Es0OddEven];
    let mut out: Vec<Check> = grid_formulas(cfg, |id| main.contains(&id)).into_iter().filter_map(|f| formula_check("theorems", f)).collect();
    for m in 1..=cfg.max_m {
        for r in 1..=m.min(cfg.max_r) {
            out.push(Check::new("theorems/krat37-ugly-switch", &[("m", m), ("r", r)], move || {
                Ok((closed_form(Krat37Ugly, m, r)?.expr.eval()?, krat37_ugly_via_switch(m, r)?))
            }));
            for family in [Family::D, Family::E] {
                out.push(Check::new(format!("theorems/ktconj24-{family}"), &[("m", m), ("r", r)], move || {
                    let (l, r) = ktconj24_sides(family, m, r)?;
                    Ok((poly(l), poly(r)))
                }));
            }
        }
    }
    // Combinatorial zeros: E_{0,0}(2m−1) and E_{2r,0}(2m−1) for r < m.
    for m in 1..=cfg.max_m {
        for r in 0..m.min(cfg.max_r + 1) {
            out.push(Check::new("theorems/es0-zero", &[("m", m), ("r", r)], move || {
                Ok((poly(determinant(&FamilySpec::new(Family::E, 2 * r, 0, (2 * m - 1) as usize))?), RatFuncMu::zero()))
            }));
        }
    }
    out
}

fn triangle_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let formulas = grid_formulas(cfg, |id| id.is_triangle());
    let mut out = Vec::new();
    for f in formulas {
        // Nonzero: both determinants in the ratio are nonzero polynomials.
        if let Target::Ratio(a, b) = f.target {
            let params = f.params.clone();
            out.push(boolean(&format!("triangles/nonzero-{}", f.id), &params, move || Ok(!a.determinant()?.is_zero() && !b.determinant()?.is_zero())));
        }
        out.extend(formula_check("triangles", f));
    }
    out
}

fn ansatz_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let identity = |id: Identity, family: Family, s: i64, n: usize, m: i64, r: i64| {
        Check::new(format!("ansatz/{id:?}"), &[("m", m), ("r", r), ("s", s), ("n", n as i64)], move || {
            let c = verify_ansatz_identity(id, family, s, n)?;
            Ok((c.lhs, c.rhs))
        })
    };
    for m in 1..=cfg.max_m {
        for r in 1..=m.min(cfg.max_r) {
            out.push(identity(Identity::Biglemma1, family_for(2 * r), 2 * r, (2 * m) as usize, m, r));
            out.push(identity(Identity::Biglemma1, family_for(2 * r + 1), 2 * r + 1, (2 * m + 1) as usize, m, r));
        }
        for r in 0..m.min(cfg.max_r + 1) {
            for id in [Identity::Biglemma2Appendix, Identity::Biglemma2Eps] {
                if r >= 1 {
                    out.push(identity(id, family_for(2 * r), 2 * r, (2 * m) as usize, m, r));
                }
                out.push(identity(id, family_for(2 * r + 1), 2 * r + 1, (2 * m + 1) as usize, m, r));
            }
        }
        out.push(identity(Identity::QuoED1, Family::E, 1, (2 * m) as usize, m, 0));
    }
    for family in [Family::D, Family::E] {
        // s = 0 makes D_{0,1}(n) vanish for odd n, so the normalization fails.
        for s in 1..=3 {
            for n in 2..=cfg.max_n.min(7) {
                out.push(identity(Identity::Plain, family, s, n, 0, 0).with_param("family", ParamValue::Rational(family.to_string())));
            }
        }
    }
    out
}

fn eps_checks(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for target in [EpsTarget::Biglemma2A, EpsTarget::Biglemma2B, EpsTarget::QuoED1] {
        for m in 1..=cfg.max_m {
            for r in 0..m.min(cfg.max_r + 1) {
                let Ok(spec) = EpsLimitSpec::new(target, r, m) else { continue };
                if target == EpsTarget::QuoED1 && r > 0 {
                    continue;
                }
                let p = [("m", m), ("r", r)];
                out.push(Check::new(format!("eps/{target}-ratio"), &p, move || Ok((eps_limit_ratio(&spec)?, spec.expected()?))));
                out.push(Check::new(format!("eps/{target}-direct"), &p, move || Ok((eps_limit_direct(&spec)?, spec.expected()?))));
                if target != EpsTarget::QuoED1 {
                    out.push(Check::new(format!("eps/{target}-syseps"), &p, move || Ok((eps_limit_syseps(&spec)?, spec.expected()?))));
                }
            }
        }
    }
    for family in [Family::D, Family::E] {
        for s in 1..=3 {
            for n in (s as usize + 1)..=cfg.max_n.min(7) {
                out.push(boolean(&format!("eps/leading-structure-{family}"), &[("s", s), ("n", n as i64)], move || eps_leading_coefficient_check(family, s, n)));
            }
        }
    }
    for m in 1..=cfg.max_m {
        for r in 1..=m.min(cfg.max_r) {
            out.push(Check::new("eps/chain-eneg1", &[("m", m), ("r", r)], move || {
                Ok((chained_value(Family::E, 2 * r - 1, (2 * m + 1) as usize)?, closed_form(CfId::Eneg1, m, r)?.expr.eval()?))
            }));
            if r < m {
                out.push(Check::new("eps/chain-ktconj21", &[("m", m), ("r", r)], move || {
                    Ok((chained_value(Family::D, 2 * r, (2 * m) as usize)?, closed_form(CfId::KtConj21, m, r)?.expr.eval()?))
                }));
            }
        }
    }
    out
}

const ORACLE_CAP: usize = 5000;

fn tiling_checks(_cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        for s in 0..=3i64 {
            for t in 0..=s {
                for mu in (2 - s).max(-1)..=5 {
                    let p = [("s", s), ("t", t), ("n", n as i64), ("mu", mu)];
                    // The oracle grid is the problems with at most ORACLE_CAP tuples.
                    let small = PathProblem::full(mu, s, t, n)
                        .and_then(|prob| lgv_count(&prob))
                        .is_ok_and(|c| c.value <= num::BigInt::from(ORACLE_CAP));
                    if !small {
                        continue;
                    }
                    out.push(Check::new("tilings/lgv-oracle", &p, move || {
                        let prob = PathProblem::full(mu, s, t, n)?;
                        let c = lgv_count(&prob)?.value;
                        let e = enumerate_paths(&prob, ORACLE_CAP)?.len();
                        Ok((count(c), RatFuncMu::from_int(e as i64)))
                    }));
                }
            }
        }
    }
    for family in [Family::D, Family::E] {
        for s in 0..=3i64 {
            for t in 0..=s {
                for n in 1..=6usize {
                    for mu in (2 - s)..=6 {
                        let p = [("s", s), ("t", t), ("n", n as i64), ("mu", mu)];
                        out.push(Check::new(format!("tilings/cyclic-{family}"), &p, move || {
                            let c = cyclic_tiling_count(family, s, t, n, mu)?;
                            let d = determinant(&FamilySpec::new(family, s, t, n))?.eval(&Rational::from_integer(mu.into()));
                            if !c.weighted && c.value < num::BigInt::from(0) {
                                return Err(Error::Range("negative plain count".into()));
                            }
                            Ok((count(c.value), RatFuncMu::constant(d)))
                        }));
                    }
                }
            }
        }
    }
    out.push(Check::new("tilings/fig2-svg-deterministic", &[], || {
        let region = build_region(2, 1, 2, 2)?;
        let prob = PathProblem::full(2, 2, 1, 2)?;
        let tiling = first_path_tuple(&prob)?.ok_or(Error::Singular)?;
        let a = render_svg(&region, Some(&tiling));
        let b = render_svg(&region, Some(&tiling));
        Ok((flag(a == b && a.starts_with("<?xml") && a.trim_end().ends_with("</svg>")), flag(true)))
    }));
    out
}

/// Runs the selected suites on a pool of `effective_jobs()` threads.
/// Records keep registration order, so the report does not depend on scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let mut checks = Vec::new();
    for name in cfg.selected() {
        checks.extend(suite_checks(name, cfg)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.effective_jobs())
        .build()
        .map_err(|e| Error::Range(format!("thread pool: {e}")))?;
    let records = pool.install(|| checks.par_iter().map(Check::execute).collect());
    Ok(Report { schema: SCHEMA_VERSION, checks: records })
}

/// Pretty JSON with a fixed key order.
pub fn emit_report(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn parse_report(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))
}

/// Report with every elapsed_ms zeroed, for comparing runs.
pub fn without_timings(report: &Report) -> Report {
    let mut r = report.clone();
    for c in &mut r.checks {
        c.elapsed_ms = 0;
    }
    r
}

impl FromStr for SuiteConfig {
    type Err = Error;
    /// Comma-separated suite list with default bounds.
    fn from_str(s: &str) -> Result<Self> {
        let suites: Vec<String> = s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
        let cfg = SuiteConfig { suites, ..SuiteConfig::default() };
        cfg.validate()?;
        Ok(cfg)
    }
}
