use bindet::families::{
    build_transformed, determinant, factor_diag_holds, ratio_formula, sum_of_minors, switch_prefactor, switch_vectors, switched_determinant, Family,
    FamilySpec, RatioId, TransformedKind, TransformedMatrixSpec,
};
use bindet::matrix::{apply_transform, ElementaryTransform, ExactMatrix, Side, TransformKind};
use bindet::{int, rat, AffineMu, PolyMu, RatFuncMu};
use proptest::prelude::*;

fn p(c: i64) -> PolyMu {
    AffineMu::mu_plus(c).to_poly()
}

fn rf(p: PolyMu) -> RatFuncMu {
    RatFuncMu::from_poly(p)
}

fn det(family: Family, s: i64, t: i64, n: usize) -> PolyMu {
    determinant(&FamilySpec::new(family, s, t, n)).unwrap()
}

#[test]
fn build_examples() {
    let d = FamilySpec::new(Family::D, 0, 0, 1).build_matrix();
    assert_eq!(d, ExactMatrix::from_ints(&[&[2]]).unwrap());
    let e = FamilySpec::new(Family::E, 2, 1, 2).build_matrix().at(&int(2)).unwrap();
    assert_eq!(e, ExactMatrix::from_ints(&[&[3, 5], &[4, 10]]).unwrap());
}

#[test]
fn determinant_examples() {
    assert_eq!(det(Family::D, 0, 0, 2), p(3));
    assert_eq!(det(Family::E, 1, 1, 1), p(-1));
    assert_eq!(det(Family::D, 2, 1, 2), (&p(2) * &p(-1)).scale(&rat(1, 2)));
}

#[test]
fn sum_of_minors_examples() {
    let fig = FamilySpec::new(Family::E, 2, 1, 2);
    assert_eq!(sum_of_minors(&fig).unwrap().eval(&int(2)), int(10));
    assert!(sum_of_minors(&FamilySpec::new(Family::E, 0, 0, 1)).unwrap().is_zero());
    let d11 = FamilySpec::new(Family::D, 1, 1, 2);
    assert_eq!(sum_of_minors(&d11).unwrap(), determinant(&d11).unwrap());
    assert!(sum_of_minors(&FamilySpec::new(Family::B, 1, 1, 2)).is_err());
}

#[test]
fn switch_vector_examples() {
    assert_eq!(switch_vectors(0, 1, 1).unwrap().product(), rf(p(-1)));
    for n in 1..=4 {
        assert!(switch_vectors(1, 1, n).unwrap().product().is_one());
    }
    let want = (&(&(&p(-1) * &p(0)) * &p(0)) * &p(1)).scale(&rat(1, 12));
    assert_eq!(switch_vectors(0, 2, 2).unwrap().product(), rf(want));
    assert!(switch_vectors(-1, 2, 2).is_err());
}

#[test]
fn switching_examples() {
    assert_eq!(det(Family::E, 0, 1, 1), p(-1));
    assert_eq!(det(Family::E, 0, 1, 1), &p(-1) * &det(Family::E, 1, 0, 1));
    assert_eq!(switched_determinant(Family::E, 1, 3, 4).unwrap(), det(Family::E, 1, 3, 4));
    assert!(switch_prefactor(2, 2, 5).unwrap().to_ratfunc().is_one());
    assert!(switched_determinant(Family::D, 2, 2, 3).is_err());
}

#[test]
fn ratio_examples() {
    assert_eq!(ratio_formula(RatioId::Rs1, 2, 2).unwrap(), rf(p(-1).scale(&rat(1, 2))));
    let direct = RatFuncMu::new(det(Family::D, 2, 1, 2), det(Family::E, 1, 1, 1).shift(&int(3))).unwrap();
    assert_eq!(direct, rf(p(-1).scale(&rat(1, 2))));
    assert!(ratio_formula(RatioId::Rs1, 1, 4).is_err());
    // 2·2·3 (μ−3)(μ+4) / (6 μ (μ+1) μ)
    let num = (&p(-3) * &p(4)).scale(&int(12));
    let den = (&(&p(0) * &p(1)) * &p(0)).scale(&int(6));
    assert_eq!(ratio_formula(RatioId::RsNeg1, 2, 4).unwrap(), RatFuncMu::new(num, den).unwrap());
}

#[test]
fn biglemma1_tilde_is_l_a_r() {
    for family in [Family::D, Family::E] {
        for s in 1..=4 {
            for n in 1..=6 {
                let a = FamilySpec::new(family, s, 1, n).build_matrix();
                let l = ElementaryTransform::new(TransformKind::L, n).unwrap();
                let r = ElementaryTransform::new(TransformKind::R, n).unwrap();
                let lar = apply_transform(&r, Side::Right, &apply_transform(&l, Side::Left, &a).unwrap()).unwrap();
                let spec = TransformedMatrixSpec { kind: TransformedKind::Biglemma1Tilde, family, s, n };
                assert_eq!(build_transformed(&spec).unwrap(), lar, "{family} s={s} n={n}");
            }
        }
    }
    let zero = TransformedMatrixSpec { kind: TransformedKind::Biglemma1Tilde, family: Family::D, s: 0, n: 3 };
    assert!(build_transformed(&zero).is_err());
}

#[test]
fn quo_ed1_tilde_block() {
    let spec = TransformedMatrixSpec { kind: TransformedKind::QuoED1Tilde, family: Family::E, s: 1, n: 3 };
    let m = build_transformed(&spec).unwrap();
    assert_eq!((m.rows(), m.cols()), (2, 2));
    let block = FamilySpec::new(Family::D, 1, 0, 1).build_matrix().shift_mu(&int(3));
    assert_eq!(m.get(2, 2), block.get(1, 1));
    assert!(build_transformed(&TransformedMatrixSpec { n: 4, ..spec }).is_err());
}

#[test]
fn appendix_b_first_column() {
    for s in 2..=5 {
        let spec = TransformedMatrixSpec { kind: TransformedKind::AppendixBtilde, family: Family::D, s, n: 6 };
        let m = build_transformed(&spec).unwrap();
        for i in 1..=5 {
            assert_eq!(m.get(i, 1), &rf(p(s + i as i64 - 1)).recip().unwrap());
        }
    }
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::D), Just(Family::E)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_minus_e_is_twice_the_delta(s in 0i64..=5, t in 0i64..=5, n in 1usize..=6) {
        let d = FamilySpec::new(Family::D, s, t, n).build_matrix();
        let e = FamilySpec::new(Family::E, s, t, n).build_matrix();
        let diff = d.sub(&e).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let want = if i as i64 + s == j as i64 + t { 2 } else { 0 };
                prop_assert_eq!(diff.get(i, j), &RatFuncMu::from_int(want));
            }
        }
    }

    #[test]
    fn sum_of_minors_is_the_determinant(f in family(), s in 0i64..=4, t in 0i64..=4, n in 1usize..=6) {
        let spec = FamilySpec::new(f, s, t, n);
        prop_assert_eq!(sum_of_minors(&spec).unwrap(), determinant(&spec).unwrap());
    }

    #[test]
    fn switching_holds(f in family(), s in 0i64..=3, gap in 1i64..=3, n in 1usize..=6) {
        let t = s + gap;
        prop_assert_eq!(switched_determinant(f, s, t, n).unwrap(), det(f, s, t, n));
        prop_assert!(factor_diag_holds(f, s, t, n.min(5)).unwrap());
    }

    #[test]
    fn uv_pairing_and_product(s in 0i64..=4, gap in 0i64..=4, n in 1usize..=6) {
        let sv = switch_vectors(s, s + gap, n).unwrap();
        prop_assert!(sv.check_pairing());
        prop_assert_eq!(sv.product(), switch_prefactor(s, s + gap, n).unwrap().to_ratfunc());
    }

    #[test]
    fn no_delta_means_plain_binomials(f in family(), s in 0i64..=6, t in 0i64..=6, n in 1usize..=6) {
        prop_assume!(n as i64 <= (s - t).abs());
        prop_assert_eq!(det(f, s, t, n), det(Family::B, s, t, n));
    }
}
