use std::collections::BTreeMap;

use bindet::ansatz::{
    check_with, cofactor_data, cofactor_ratios, family_for, guess_recurrence, quo_ed1_ratio, search_recurrence, solve_cofactor_system, system_matrix,
    verify_ansatz_identity, CData, GuessOutcome, Identity, Shape, System,
};
use bindet::families::{build_transformed, ratio_formula, Family, RatioId, TransformedKind, TransformedMatrixSpec};
use bindet::matrix::ExactMatrix;
use bindet::{int, rat, AffineMu, RatFuncMu, Rational};
use num::Zero;
use proptest::prelude::*;

fn tilde(family: Family, s: i64, n: usize) -> ExactMatrix {
    build_transformed(&TransformedMatrixSpec { kind: TransformedKind::Biglemma1Tilde, family, s, n }).unwrap()
}

#[test]
fn sys1_small_case_matches_cofactors() {
    let c = solve_cofactor_system(System::Sys1, Family::D, 2, 2).unwrap();
    assert!(c.get(1).is_one());
    let a = tilde(Family::D, 2, 2);
    let want = a.cofactor(1, 2).unwrap().checked_div(&a.cofactor(1, 1).unwrap()).unwrap();
    assert_eq!(c.get(2), &want);
}

#[test]
fn sys1_equals_cofactor_quotients() {
    for s in 2..=4 {
        for n in 1..=6 {
            let family = family_for(s);
            let c = solve_cofactor_system(System::Sys1, family, s, n).unwrap();
            assert_eq!(c.values, cofactor_ratios(&tilde(family, s, n), 1, 1).unwrap(), "s={s} n={n}");
        }
    }
}

#[test]
fn normalization_entry_is_one() {
    for (system, family, s, n) in [(System::Sys1, Family::E, 3, 5), (System::Sys3, Family::E, 1, 4), (System::Sys2Appendix, Family::D, 2, 4), (System::SysEps, Family::D, 2, 4)] {
        assert!(solve_cofactor_system(system, family, s, n).unwrap().get(1).is_one(), "{system}");
    }
    let plain = solve_cofactor_system(System::Plain, Family::D, 2, 4).unwrap();
    assert!(plain.get(4).is_one());
}

#[test]
fn identity_examples() {
    let c = verify_ansatz_identity(Identity::Biglemma1, Family::D, 2, 2).unwrap();
    assert!(c.holds);
    assert_eq!(c.lhs, RatFuncMu::from_poly(AffineMu::mu_plus(-1).to_poly().scale(&rat(1, 2))));
    assert!(c.residual.is_zero());
    let q = verify_ansatz_identity(Identity::QuoED1, Family::E, 1, 2).unwrap();
    assert!(q.holds);
    assert_eq!(q.rhs, quo_ed1_ratio(1).unwrap());
}

#[test]
fn perturbed_vector_is_rejected() {
    for (id, family, s, n) in [(Identity::Biglemma1, Family::D, 2, 4), (Identity::QuoED1, Family::E, 1, 4), (Identity::Biglemma2Appendix, Family::E, 3, 5)] {
        let mut c = solve_cofactor_system(id.system(), family, s, n).unwrap();
        let last = c.values.len() - 1;
        c.values[last] = -c.values[last].clone();
        let check = check_with(id, family, s, n, &c).unwrap();
        assert!(!check.holds, "{id:?}");
        assert!(!check.residual.is_zero());
    }
}

#[test]
fn sys1_identity_over_the_verified_range() {
    // The ratio is a product only when s and n have the same parity.
    for s in 2..=6i64 {
        for n in (s as usize..=10).step_by(2) {
            let c = verify_ansatz_identity(Identity::Biglemma1, family_for(s), s, n).unwrap();
            assert!(c.holds, "s={s} n={n}");
            assert_eq!(c.rhs, ratio_formula(RatioId::Rs1, s, n as i64).unwrap());
        }
    }
}

#[test]
fn sys3_identity_for_m_up_to_5() {
    for m in 1..=5 {
        assert!(verify_ansatz_identity(Identity::QuoED1, Family::E, 1, 2 * m).unwrap().holds, "m={m}");
    }
}

#[test]
fn appendix_identity_over_the_verified_range() {
    for s in 2..=5i64 {
        for n in (s as usize + 2..=9).step_by(2) {
            let c = verify_ansatz_identity(Identity::Biglemma2Appendix, family_for(s), s, n).unwrap();
            assert!(c.holds, "s={s} n={n}");
        }
    }
}

#[test]
fn row_permutation_gives_the_same_solution() {
    for (system, family, s, n) in [(System::Sys1, Family::D, 2, 5), (System::Sys3, Family::E, 1, 4), (System::Sys2Appendix, Family::E, 3, 5), (System::SysEps, Family::D, 4, 6)] {
        let (a, b) = system_matrix(system, family, s, n).unwrap();
        let order: Vec<usize> = (1..=a.rows()).rev().collect();
        let permuted = a.select(&order, &(1..=a.cols()).collect::<Vec<_>>());
        let pb: Vec<RatFuncMu> = order.iter().map(|&i| b[i - 1].clone()).collect();
        assert_eq!(permuted.solve(&pb).unwrap(), a.solve(&b).unwrap(), "{system}");
    }
}

#[test]
fn shape_parsing() {
    assert_eq!("2x3:4".parse::<Shape>().unwrap(), Shape { n_shifts: 2, k_shifts: 3, degree: 4 });
    assert_eq!("1X2".parse::<Shape>().unwrap(), Shape { n_shifts: 1, k_shifts: 2, degree: 0 });
    assert!("2-3".parse::<Shape>().is_err());
    assert_eq!("2x2:1".parse::<Shape>().unwrap().unknowns(), 12);
}

fn constant_table(max_n: usize) -> CData {
    let mut d = BTreeMap::new();
    for n in 1..=max_n {
        for k in 1..=n {
            d.insert((n, k), int(1));
        }
    }
    d
}

#[test]
fn constant_sequence_gives_first_difference() {
    let data = constant_table(12);
    let (found, log) = search_recurrence(&data, 10, 2, 1);
    let rec = found.expect("a recurrence");
    assert_eq!(rec.shape, Shape { n_shifts: 1, k_shifts: 2, degree: 0 });
    assert_eq!(log.len(), 1);
    assert_eq!(rec.coefficients[0][0], -rec.coefficients[1][0].clone());
    assert!(!rec.coefficients[0][0].is_zero());
    let held: Vec<(usize, usize)> = data.keys().copied().filter(|&(n, _)| n > 10).collect();
    assert!(rec.annihilates(&data, &held));
}

#[test]
fn insufficient_data_is_an_error() {
    let data = constant_table(3);
    assert!(guess_recurrence(&data, 3, "3x3:4".parse().unwrap()).is_err());
}

#[test]
fn sys1_data_is_exact() {
    let mu = int(7);
    let data = cofactor_data(System::Sys1, Family::D, 2, &mu, 6).unwrap();
    for n in 1..=6 {
        let c = solve_cofactor_system(System::Sys1, Family::D, 2, n).unwrap();
        for k in 1..=n {
            assert_eq!(data[&(n, k)], c.get(k).eval(&mu).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn noise_admits_no_recurrence(seed in proptest::collection::vec((-1000i64..=1000, 1i64..=97), 120)) {
        let mut data = CData::new();
        let mut it = seed.iter().cycle().enumerate();
        for n in 1..=14usize {
            for k in 1..=n {
                let (i, &(p, q)) = it.next().unwrap();
                // Mix the index in so cycling the seed does not repeat values.
                data.insert((n, k), rat(p * 131 + i as i64 * 7919, q));
            }
        }
        let outcome = guess_recurrence(&data, 12, Shape { n_shifts: 2, k_shifts: 2, degree: 1 }).unwrap();
        prop_assert_eq!(outcome, GuessOutcome::Trivial);
    }

    #[test]
    fn plain_identity_is_the_determinant_ratio(s in 1i64..=3, n in 2usize..=6, e in prop::bool::ANY) {
        let family = if e { Family::E } else { Family::D };
        prop_assert!(verify_ansatz_identity(Identity::Plain, family, s, n).unwrap().holds);
    }
}

#[test]
fn sys1_data_is_normalized() {
    let data = cofactor_data(System::Sys1, Family::D, 2, &int(7), 8).unwrap();
    for n in 1..=8 {
        assert_eq!(data[&(n, 1)], Rational::from_integer(1.into()));
    }
}
