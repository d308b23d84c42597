use bindet::families::{Family, FamilySpec};
use bindet::matrix::{apply_transform, ElementaryTransform, ExactMatrix, MinorSpec, Side, TransformKind};
use bindet::{int, AffineMu, PolyMu, RatFuncMu};
use proptest::prelude::*;

fn mu_plus(c: i64) -> RatFuncMu {
    RatFuncMu::from_poly(AffineMu::mu_plus(c).to_poly())
}

fn k(v: i64) -> RatFuncMu {
    RatFuncMu::from_int(v)
}

fn fig2() -> ExactMatrix {
    ExactMatrix::from_ints(&[&[3, 5], &[4, 10]]).unwrap()
}

#[test]
fn determinant_examples() {
    let one = ExactMatrix::from_rows(vec![vec![mu_plus(-1)]]).unwrap();
    assert_eq!(one.det().unwrap(), mu_plus(-1));
    assert_eq!(fig2().det().unwrap(), k(10));
    let d00 = ExactMatrix::from_rows(vec![vec![k(2), mu_plus(-1)], vec![k(1), mu_plus(1)]]).unwrap();
    assert_eq!(d00.det().unwrap(), mu_plus(3));
    assert_eq!(ExactMatrix::identity(0).det().unwrap(), RatFuncMu::one());
}

#[test]
fn minor_examples() {
    let m = fig2();
    assert_eq!(m.minor_det(&MinorSpec::new(vec![1], vec![2])).unwrap(), k(4));
    assert_eq!(m.minor_det(&MinorSpec::new(vec![1, 2], vec![1, 2])).unwrap(), RatFuncMu::one());
    assert_eq!(m.minor_det(&MinorSpec::new(vec![], vec![])).unwrap(), k(10));
    assert!(m.minor_det(&MinorSpec::new(vec![1], vec![])).is_err());
    assert!(m.minor_det(&MinorSpec::new(vec![3], vec![1])).is_err());
}

#[test]
fn cofactor_examples() {
    let c = ExactMatrix::from_ints(&[&[7]]).unwrap();
    assert_eq!(c.cofactor(1, 1).unwrap(), RatFuncMu::one());
    let abcd = ExactMatrix::from_ints(&[&[1, 2], &[3, 4]]).unwrap();
    assert_eq!(abcd.cofactor(1, 2).unwrap(), k(-3));
    assert_eq!(fig2().cofactor(1, 1).unwrap(), k(10));
}

#[test]
fn solve_examples() {
    let b = vec![mu_plus(0), k(5), k(-2)];
    assert_eq!(ExactMatrix::identity(3).solve(&b).unwrap(), b);
    let m = ExactMatrix::from_rows(vec![vec![mu_plus(0), k(0)], vec![k(0), k(1)]]).unwrap();
    assert_eq!(m.solve(&[mu_plus(0), k(1)]).unwrap(), vec![k(1), k(1)]);
    let singular = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
    assert!(singular.solve(&[k(1), k(1)]).is_err());
}

#[test]
fn transforms() {
    let l = ElementaryTransform::new(TransformKind::L, 4).unwrap();
    let applied = apply_transform(&l, Side::Left, &ExactMatrix::identity(4)).unwrap();
    assert_eq!(&applied, l.matrix());
    for kind in [TransformKind::L, TransformKind::R, TransformKind::Rtilde] {
        for n in 2..=7 {
            let d = ElementaryTransform::new(kind, n).unwrap().matrix().det().unwrap();
            assert!(d.is_one() || (-&d).is_one(), "{kind:?} {n}");
        }
    }
    assert!(ElementaryTransform::new(TransformKind::Rtilde, 1).is_err());
    assert!(ElementaryTransform::new(TransformKind::L, 0).is_err());
}

#[test]
fn elimination_routes_agree_on_family_matrices() {
    for (family, s, t) in [(Family::D, 0, 0), (Family::E, 2, 1), (Family::D, 1, 3), (Family::E, 3, 0)] {
        for n in 1..=5 {
            let m = FamilySpec::new(family, s, t, n).build_matrix();
            let d = m.det().unwrap();
            assert_eq!(d, m.det_field().unwrap(), "{family} {s} {t} {n}");
            assert_eq!(d, m.det_cofactor().unwrap(), "{family} {s} {t} {n}");
        }
    }
}

#[test]
fn desnanot_jacobi_on_a_symbolic_matrix() {
    let m = FamilySpec::new(Family::B, 1, 2, 5).build_matrix();
    let n = 5;
    let del = |r: Vec<usize>, c: Vec<usize>| m.minor_det(&MinorSpec::new(r, c)).unwrap();
    let lhs = &m.det().unwrap() * &del(vec![1, n], vec![1, n]);
    let rhs = &(&del(vec![1], vec![1]) * &del(vec![n], vec![n])) - &(&del(vec![1], vec![n]) * &del(vec![n], vec![1]));
    assert_eq!(lhs, rhs);
}

fn entry() -> impl Strategy<Value = RatFuncMu> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(a, b, d)| {
        let p = PolyMu::linear(int(a), int(b));
        RatFuncMu::new(p, PolyMu::from_int(d)).unwrap()
    })
}

fn square(max: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max).prop_flat_map(|n| proptest::collection::vec(entry(), n * n).prop_map(move |e| ExactMatrix::new(n, n, e).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in square(5)) {
        prop_assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
        prop_assert_eq!(m.det().unwrap(), m.det_field().unwrap());
    }

    #[test]
    fn laplace_along_any_row(m in square(5), pick in 0usize..5) {
        let i = pick % m.rows() + 1;
        let sum = (1..=m.cols()).fold(RatFuncMu::zero(), |acc, j| &acc + &(m.get(i, j) * &m.cofactor(i, j).unwrap()));
        prop_assert_eq!(sum, m.det().unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in square(4), seed in proptest::collection::vec(entry(), 16)) {
        let n = a.rows();
        let b = ExactMatrix::new(n, n, seed[..n * n].to_vec()).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn transpose_keeps_determinant(m in square(5)) {
        prop_assert_eq!(m.transpose().det().unwrap(), m.det().unwrap());
    }

    #[test]
    fn solve_inverts_apply(m in square(4), x in proptest::collection::vec(entry(), 4)) {
        prop_assume!(!m.det().unwrap().is_zero());
        let x = x[..m.rows()].to_vec();
        let b = m.apply(&x).unwrap();
        prop_assert_eq!(m.solve(&b).unwrap(), x);
    }
}
