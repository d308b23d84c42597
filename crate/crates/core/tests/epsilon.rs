use bindet::closed_forms::{closed_form, CfId};
use bindet::epsilon::{
    chained_value, eps_leading_coefficient_check, eps_leading_from_binomials, eps_leading_matches, eps_limit_direct, eps_limit_ratio, eps_limit_syseps,
    EpsLimitSpec, EpsTarget,
};
use bindet::families::{ratio_formula, Family, RatioId};
use bindet::{AffineMu, PolyMu, RatFuncMu};
use proptest::prelude::*;

fn p(c: i64) -> PolyMu {
    AffineMu::mu_plus(c).to_poly()
}

fn spec(target: EpsTarget, r: i64, m: i64) -> EpsLimitSpec {
    EpsLimitSpec::new(target, r, m).unwrap()
}

#[test]
fn quo_ed1_at_m1() {
    let want = RatFuncMu::new(-p(-3), &(&p(0) * &p(-1)) * &p(1)).unwrap();
    let s = spec(EpsTarget::QuoED1, 0, 1);
    assert_eq!(eps_limit_ratio(&s).unwrap(), want);
    assert_eq!(eps_limit_direct(&s).unwrap(), want);
    assert!(eps_limit_syseps(&s).is_err());
}

#[test]
fn biglemma2_examples() {
    let a = spec(EpsTarget::Biglemma2A, 1, 2);
    assert_eq!(eps_limit_ratio(&a).unwrap(), ratio_formula(RatioId::RsNeg1, 2, 4).unwrap());
    let b = spec(EpsTarget::Biglemma2B, 0, 1);
    assert_eq!(eps_limit_ratio(&b).unwrap(), ratio_formula(RatioId::RsNeg1, 1, 3).unwrap());
}

#[test]
fn out_of_range_specs() {
    assert!(EpsLimitSpec::new(EpsTarget::Biglemma2A, 0, 2).is_err());
    assert!(EpsLimitSpec::new(EpsTarget::Biglemma2A, 2, 2).is_err());
    assert!(EpsLimitSpec::new(EpsTarget::Biglemma2B, 1, 1).is_err());
    assert!(EpsLimitSpec::new(EpsTarget::QuoED1, 0, 0).is_err());
    assert!("biglemma2-c".parse::<EpsTarget>().is_err());
    assert_eq!("quo_ed1".parse::<EpsTarget>().unwrap(), EpsTarget::QuoED1);
}

#[test]
fn three_routes_agree() {
    for m in 1..=4 {
        for r in 0..m {
            for target in [EpsTarget::Biglemma2A, EpsTarget::Biglemma2B] {
                let Ok(s) = EpsLimitSpec::new(target, r, m) else { continue };
                let want = s.expected().unwrap();
                assert_eq!(eps_limit_ratio(&s).unwrap(), want, "{target} r={r} m={m}");
                assert_eq!(eps_limit_direct(&s).unwrap(), want, "{target} r={r} m={m}");
                assert_eq!(eps_limit_syseps(&s).unwrap(), want, "{target} r={r} m={m}");
            }
        }
        let q = spec(EpsTarget::QuoED1, 0, m);
        assert_eq!(eps_limit_ratio(&q).unwrap(), eps_limit_direct(&q).unwrap());
    }
}

#[test]
fn structural_check_examples() {
    assert!(eps_leading_coefficient_check(Family::D, 2, 4).unwrap());
    assert!(eps_leading_coefficient_check(Family::E, 3, 5).unwrap());
    assert!(eps_leading_coefficient_check(Family::D, 3, 3).is_err());
}

#[test]
fn corrupted_entry_is_detected() {
    let good = eps_leading_from_binomials(Family::D, 2, 4).unwrap();
    assert!(eps_leading_matches(&good, Family::D, 2, 4).unwrap());
    for (i, j) in [(1, 1), (2, 2), (3, 4)] {
        let mut bad = good.clone();
        bad.set(i, j, good.get(i, j) + &RatFuncMu::one());
        assert!(!eps_leading_matches(&bad, Family::D, 2, 4).unwrap(), "({i},{j})");
    }
}

#[test]
fn chaining_reaches_the_closed_forms() {
    for m in 1..=3 {
        for r in 1..=m {
            let want = closed_form(CfId::Eneg1, m, r).unwrap().expr.eval().unwrap();
            assert_eq!(chained_value(Family::E, 2 * r - 1, (2 * m + 1) as usize).unwrap(), want, "m={m} r={r}");
            if r < m {
                let want = closed_form(CfId::KtConj21, m, r).unwrap().expr.eval().unwrap();
                assert_eq!(chained_value(Family::D, 2 * r, (2 * m) as usize).unwrap(), want, "m={m} r={r}");
            }
        }
    }
    // D with t = 0 ends at D_{1,-1}, which no chained ratio covers.
    assert!(chained_value(Family::D, 0, 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn leading_structure_holds(e in prop::bool::ANY, s in 1i64..=4, extra in 1usize..=3) {
        let family = if e { Family::E } else { Family::D };
        prop_assert!(eps_leading_coefficient_check(family, s, s as usize + extra).unwrap());
    }
}
