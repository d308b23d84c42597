use bindet::arith::{binom_int, factorial, gbinom, gbinom_eps_first_order, pascal_step, pascal_sum, pascal_sum_closed, poch, rat_binom};
use bindet::{int, rat, AffineMu, PolyMu, RatFuncMu, Rational};
use num::BigInt;
use proptest::prelude::*;

fn mu_plus(c: i64) -> PolyMu {
    AffineMu::mu_plus(c).to_poly()
}

fn rf(p: PolyMu) -> RatFuncMu {
    RatFuncMu::from_poly(p)
}

#[test]
fn poch_examples() {
    let mu = AffineMu::mu_plus(0);
    let cubic = &(&mu_plus(0) * &mu_plus(1)) * &mu_plus(2);
    assert_eq!(poch(&mu, 3).unwrap(), rf(cubic));
    assert_eq!(poch(&mu, 0).unwrap(), RatFuncMu::one());
    assert_eq!(poch(&AffineMu::from_int(3), -2).unwrap(), RatFuncMu::constant(rat(1, 2)));
}

#[test]
fn negative_length_pole() {
    // (1)_{-1} = 1/(0)_1.
    assert!(poch(&AffineMu::from_int(1), -1).is_err());
}

#[test]
fn gbinom_examples() {
    assert_eq!(gbinom(&AffineMu::mu_plus(-1), 1), mu_plus(-1));
    assert!(gbinom(&AffineMu::mu_plus(-1), -1).is_zero());
    let want = (&mu_plus(2) * &mu_plus(1)).scale(&rat(1, 2));
    assert_eq!(gbinom(&AffineMu::mu_plus(2), 2), want);
}

#[test]
fn eps_first_order_examples() {
    let x = AffineMu::mu_plus(4);
    assert_eq!(gbinom_eps_first_order(&x, -1).unwrap(), rf(mu_plus(5)).recip().unwrap());
    assert_eq!(gbinom_eps_first_order(&x, -3).unwrap(), poch(&x.plus_int(1), 3).unwrap().recip().unwrap().scale(&int(2)));
    for (i, s) in [(1, 0), (2, 3), (3, 1)] {
        let x = AffineMu::mu_plus(i + s - 5);
        let want = -poch(&AffineMu::mu_plus(i + s - 4), 2).unwrap().recip().unwrap();
        assert_eq!(gbinom_eps_first_order(&x, -2).unwrap(), want);
    }
}

#[test]
fn pascal_examples() {
    let (a, b, d) = pascal_step(&AffineMu::mu_plus(0), 0);
    assert!((&a - &b).is_zero());
    assert!(d.is_zero());

    let mu = AffineMu::mu_plus(0);
    assert_eq!(pascal_sum(&mu, 0, 1), PolyMu::one());
    let want = &gbinom(&AffineMu::mu_plus(2), 2) - &PolyMu::one();
    assert_eq!(pascal_sum(&mu, 1, 2), want);
    let x = AffineMu::mu_plus(-1);
    let want = &gbinom(&AffineMu::mu_plus(2), 3) - &PolyMu::one();
    assert_eq!(pascal_sum(&x, 1, 3), want);
}

#[test]
fn integer_binomials() {
    assert_eq!(binom_int(10, 3), BigInt::from(120));
    assert_eq!(binom_int(4, -1), BigInt::from(0));
    assert_eq!(binom_int(3, 5), BigInt::from(0));
    assert_eq!(binom_int(-2, 2), BigInt::from(3));
    assert_eq!(rat_binom(&rat(1, 2), 2), rat(-1, 8));
    assert_eq!(factorial(0), BigInt::from(1));
    assert_eq!(factorial(6), BigInt::from(720));
}

#[test]
fn text_forms_round_trip() {
    let p = &(&mu_plus(1) * &mu_plus(-3)).scale(&rat(2, 3)) + &PolyMu::constant(rat(-5, 7));
    assert_eq!(p.to_string().parse::<PolyMu>().unwrap(), p);
    let f = RatFuncMu::new(p.clone(), &mu_plus(2) * &mu_plus(2)).unwrap();
    assert_eq!(f.to_string().parse::<RatFuncMu>().unwrap(), f);
}

#[test]
fn rational_functions_normalize() {
    let f = RatFuncMu::new(&mu_plus(1) * &mu_plus(2), (&mu_plus(2) * &mu_plus(3)).scale(&int(2))).unwrap();
    let g = RatFuncMu::new(mu_plus(1), mu_plus(3).scale(&int(2))).unwrap();
    assert_eq!(f, g);
    assert!(RatFuncMu::new(PolyMu::one(), PolyMu::zero()).is_err());
}

fn base() -> impl Strategy<Value = AffineMu> {
    let slope = prop_oneof![Just(int(1)), Just(rat(1, 2)), Just(int(2)), Just(int(-1))];
    (slope, -12i64..=12, 1i64..=3).prop_map(|(a, p, q)| AffineMu::new(a, rat(p, q)))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn p1_integer_gamma_ratio(a in 1i64..=15, b in 0i64..=15) {
        let want = Rational::new(factorial((a + b - 1) as u64), factorial((a - 1) as u64));
        prop_assert_eq!(poch(&AffineMu::from_int(a), b).unwrap(), RatFuncMu::constant(want));
    }

    #[test]
    fn p2_negative_length(a in base(), b in 0i64..=10) {
        let Ok(lhs) = poch(&a, -b) else { return Ok(()) };
        prop_assert_eq!(lhs, poch(&a.plus_int(-b), b).unwrap().recip().unwrap());
    }

    #[test]
    fn p3_duplication(a in base(), b in 0i64..=8) {
        let half = a.plus(&rat(1, 2));
        let double = AffineMu::new(a.slope.clone() * int(2), a.constant.clone() * int(2));
        let lhs = (&poch(&a, b).unwrap() * &poch(&half, b).unwrap()).scale(&Rational::from_integer(BigInt::from(4).pow(b as u32)));
        prop_assert_eq!(lhs, poch(&double, 2 * b).unwrap());
    }

    #[test]
    fn p4_concatenation(a in base(), b in -10i64..=10, k in -10i64..=10) {
        let (Ok(x), Ok(y), Ok(z)) = (poch(&a, b), poch(&a.plus_int(b), k), poch(&a, b + k)) else { return Ok(()) };
        prop_assert_eq!(&x * &y, z);
    }

    #[test]
    fn p5_quotient(a in base(), b in -10i64..=10, k in -10i64..=10) {
        let (Ok(x), Ok(y), Ok(z)) = (poch(&a, b), poch(&a, k), poch(&a.plus_int(k), b - k)) else { return Ok(()) };
        prop_assert_eq!(x.checked_div(&y).unwrap(), z);
    }

    #[test]
    fn p6_reflection(a in base(), b in 0i64..=10) {
        let sign = if b % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(poch(&a.neg(), b).unwrap(), poch(&a.plus_int(1 - b), b).unwrap().scale(&sign));
    }

    #[test]
    fn p7_product_grid(a in base(), b in 0i64..=5, k in 0i64..=5) {
        let rows = (0..b).fold(RatFuncMu::one(), |acc, i| &acc * &poch(&a.plus_int(i), k).unwrap());
        let cols = (0..k).fold(RatFuncMu::one(), |acc, i| &acc * &poch(&a.plus_int(i), b).unwrap());
        prop_assert_eq!(rows, cols);
    }

    #[test]
    fn p8_blocks(a in base(), b in 0i64..=5, k in 0i64..=5) {
        let blocks = (0..k).fold(RatFuncMu::one(), |acc, i| &acc * &poch(&a.plus_int(i * b), b).unwrap());
        prop_assert_eq!(blocks, poch(&a, k * b).unwrap());
    }

    #[test]
    fn pascal_recurrence(c in -6i64..=6, y in -8i64..=12) {
        let x = AffineMu::mu_plus(c);
        let (up, same, lower) = pascal_step(&x, y);
        prop_assert_eq!(&up - &same, lower);
    }

    #[test]
    fn pascal_telescoping(c in -6i64..=6, y in -8i64..=8, j in 1u64..=10) {
        let x = AffineMu::mu_plus(c);
        prop_assert_eq!(pascal_sum(&x, y, j), pascal_sum_closed(&x, y, j));
    }

    #[test]
    fn gbinom_has_degree_k(c in -10i64..=10, k in 0i64..=12) {
        prop_assert_eq!(gbinom(&AffineMu::mu_plus(c), k).degree(), Some(k as usize));
    }

    #[test]
    fn gbinom_matches_integer_binomial(c in -5i64..=5, k in 0i64..=8, m in 0i64..=20) {
        let p = gbinom(&AffineMu::mu_plus(c), k);
        prop_assert_eq!(p.eval(&int(m)), Rational::from_integer(binom_int(m + c, k)));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in base(), b in base(), x in small_rational()) {
        let (p, q) = (a.to_poly(), b.to_poly());
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
    }

    #[test]
    fn division_undoes_multiplication(a in base(), b in base(), c in base()) {
        let f = RatFuncMu::new(a.to_poly(), b.to_poly()).unwrap();
        let g = RatFuncMu::from_poly(c.to_poly());
        prop_assert_eq!((&f * &g).checked_div(&g).unwrap(), f.clone());
        prop_assert!((&f - &f).is_zero());
    }
}
