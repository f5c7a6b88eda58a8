//! Property tests for the module invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use sturmkit::cfrac::{complete_quotient, convergent_matrix, expand_periodic, expand_prefix, from_cf};
use sturmkit::decide::{sturmian_conjugate, sturmian_flow_equivalent, sturmian_isogenous, verify_conjugacy, verify_matrix};
use sturmkit::decision::{Certificate, Verdict};
use sturmkit::denjoy::{normalize, power_params, state_image as denjoy_state};
use sturmkit::iet::{ies_factors, minimal_model, new_iet, power_discontinuities, saf, IetSpec};
use sturmkit::json;
use sturmkit::moebius::{apply, stabilizer_matrix, Mat2};
use sturmkit::realnum::{qspan_of, wedge, zmodule_of};
use sturmkit::sturmian::{factors, letter_count, sadic_prefix, sturmian_window, SturmianParams};
use sturmkit::{Basis, Error, RealValue};

const FIELDS: [u64; 8] = [2, 3, 5, 6, 7, 10, 13, 19];

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn surd_parts(d: u64) -> impl Strategy<Value = RealValue> {
    (-40i64..=40, prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=12)
        .prop_map(move |(x, y, r)| RealValue::quadratic(d, q(x, r), q(y, r)).unwrap())
}

fn surd() -> impl Strategy<Value = RealValue> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(surd_parts)
}

/// Any element of `ℚ(√d)`, rational ones included.
fn element(d: u64) -> impl Strategy<Value = RealValue> {
    (-40i64..=40, -9i64..=9, 1i64..=12).prop_map(move |(x, y, r)| RealValue::quadratic(d, q(x, r), q(y, r)).unwrap())
}

fn unit_surd() -> impl Strategy<Value = RealValue> {
    surd().prop_map(|x| x.frac().unwrap())
}

fn positive(d: u64) -> impl Strategy<Value = RealValue> {
    (0i64..6, 1i64..6, 1i64..8).prop_map(move |(x, y, r)| RealValue::quadratic(d, q(x, r), q(y, r)).unwrap())
}

fn quadratic_iet() -> impl Strategy<Value = IetSpec> {
    (prop::sample::select(FIELDS.to_vec()), 2usize..=4)
        .prop_flat_map(|(d, n)| (irreducible_perm(n), prop::collection::vec(positive(d), n)))
        .prop_map(|(p, l)| new_iet(&p, &l).unwrap())
}

fn irreducible_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_filter("irreducible", move |p| (1..n).all(|k| p[..k].iter().any(|&x| x > k)))
}

/// `⌊(x + y√d)·10^k⌋` by integer square roots, independent of the library.
fn decimal(x: &RealValue, k: u32) -> BigInt {
    let Basis::Quadratic(d) = x.basis() else { panic!("quadratic only") };
    let (a, b) = (&x.coords()[0], &x.coords()[1]);
    let den = a.denom() * b.denom();
    let an = a.numer() * b.denom();
    let bn = b.numer() * a.denom();
    let scale = BigInt::from(10u32).pow(k);
    // b·√d·10^k = sign(b)·√(b²·d·10^2k)
    let inner: BigInt = &bn * &bn * BigInt::from(*d) * &scale * &scale;
    let root = inner.sqrt();
    let exact = &root * &root == inner;
    let rad = if bn.is_negative() { if exact { -root } else { -root - 1 } } else { root };
    num_integer::Integer::div_floor(&(an * &scale + rad), &den)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn compare_is_a_total_order(d in prop::sample::select(FIELDS.to_vec()), seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let mut pick = || {
            use rand::Rng;
            let r = rng.gen_range(1..9);
            RealValue::quadratic(d, q(rng.gen_range(-30..30), r), q(rng.gen_range(-5..5), r)).unwrap()
        };
        let (a, b, c) = (pick(), pick(), pick());
        prop_assert_eq!(a.compare(&b).unwrap(), b.compare(&a).unwrap().reverse());
        if a.compare(&b).unwrap().is_le() && b.compare(&c).unwrap().is_le() {
            prop_assert!(a.compare(&c).unwrap().is_le());
        }
        let k = q(3, 7);
        prop_assert_eq!(a.scale(&k).compare(&b.scale(&k)).unwrap(), a.compare(&b).unwrap());
        prop_assert_eq!(a.scale(&-k.clone()).compare(&b.scale(&-k)).unwrap(), a.compare(&b).unwrap().reverse());
    }

    #[test]
    fn compare_agrees_with_decimals(a in surd(), y in -8i64..8) {
        let b = a.add_rational(&q(y, 3)).scale(&q(2, 1)).try_sub(&a).unwrap();
        let (da, db) = (decimal(&a, 100), decimal(&b, 100));
        if da != db {
            prop_assert_eq!(a.compare(&b).unwrap(), da.cmp(&db));
        }
        prop_assert_eq!(a.floor().unwrap(), decimal(&a, 0));
    }

    #[test]
    fn modules_absorb_combinations(x in element(5), y in element(5), a in -5i64..5, b in -5i64..5) {
        let basis = Basis::quadratic(5).unwrap();
        let gens = vec![x.clone(), y.clone()];
        let m = zmodule_of(&basis, &gens).unwrap();
        let combo = x.scale(&q(a, 1)).try_add(&y.scale(&q(b, 1))).unwrap();
        let mut more = gens.clone();
        more.push(combo.clone());
        prop_assert_eq!(zmodule_of(&basis, &more).unwrap(), m.clone());
        prop_assert!(m.contains(&combo));
        prop_assert!(m.rank() <= basis.rank());
        let s = qspan_of(&basis, &gens).unwrap();
        more.push(x.scale(&q(a, 7)));
        prop_assert_eq!(qspan_of(&basis, &more).unwrap(), s);
    }

    #[test]
    fn wedge_is_bilinear(x in element(7), y in element(7), z in element(7), a in -6i64..6, b in 1i64..6) {
        let (qa, qb) = (q(a, b), q(b, 5));
        let lhs = wedge(&x.scale(&qa).try_add(&y.scale(&qb)).unwrap(), &z).unwrap();
        let rhs = wedge(&x, &z).unwrap().scale(&qa).add(&wedge(&y, &z).unwrap().scale(&qb));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(wedge(&x, &x).unwrap().is_zero());
        let w = wedge(&x, &y).unwrap();
        prop_assert_eq!(w.add(&wedge(&y, &x).unwrap()).is_zero(), true);
    }

    #[test]
    fn cf_round_trip(x in surd()) {
        let e = expand_periodic(&x).unwrap();
        prop_assert!(!e.period().is_empty());
        prop_assert_eq!(from_cf(&e).unwrap(), x.clone());
        let text = e.to_string();
        prop_assert_eq!(text.parse::<sturmkit::cfrac::ContinuedFraction>().unwrap(), e);
    }

    #[test]
    fn cf_tail_action(x in surd(), k in 1usize..12) {
        let digits = expand_prefix(&x, k).unwrap();
        let tail = complete_quotient(&x, k).unwrap();
        prop_assert_eq!(apply(&convergent_matrix(&digits), &tail).unwrap(), x);
    }

    #[test]
    fn reduced_surds_are_purely_periodic(x in surd()) {
        let reduced = x.compare(&RealValue::one(x.basis())).unwrap().is_gt() && {
            let c = x.conjugate().unwrap();
            c.is_positive().map(|p| !p).unwrap() && c.add_rational(&q(1, 1)).is_positive().unwrap()
        };
        let e = expand_periodic(&x).unwrap();
        prop_assert_eq!(e.preperiod().is_empty(), reduced, "{} = {}", x, e);
    }

    #[test]
    fn rational_cf_is_finite(n in -500i64..500, d in 1i64..60) {
        let x = RealValue::from_rational(&Basis::Rational, q(n, d));
        let e = expand_periodic(&x).unwrap();
        prop_assert!(e.is_finite());
        prop_assert_eq!(from_cf(&e).unwrap(), x);
    }

    #[test]
    fn apply_is_an_action(x in surd(), e in prop::array::uniform8(-4i64..5)) {
        prop_assume!(e[0] * e[3] != e[1] * e[2] && e[4] * e[7] != e[5] * e[6]);
        let m = Mat2::from_ints(e[0], e[1], e[2], e[3]);
        let n = Mat2::from_ints(e[4], e[5], e[6], e[7]);
        match apply(&n, &x) {
            Ok(y) => match apply(&m, &y) {
                Ok(z) => prop_assert_eq!(apply(&m.mul(&n), &x).unwrap(), z),
                Err(Error::PoleHit) => {}
                Err(e) => prop_assert!(false, "{e}"),
            },
            Err(Error::PoleHit) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn stabilizer_fixes_conjugate(x in surd()) {
        let s = stabilizer_matrix(&x).unwrap();
        prop_assert_eq!(apply(&s, &x).unwrap(), x.clone());
        let c = x.conjugate().unwrap();
        prop_assert_eq!(apply(&s, &c).unwrap(), c);
        prop_assert!(s.trace() > BigRational::from_integer(2.into()));
    }

    #[test]
    fn window_subwords_are_factors(a in unit_surd(), n in 1usize..10) {
        let p = SturmianParams::new(a).unwrap();
        let f: Vec<Vec<u8>> = factors(&p, n).unwrap().into_iter().map(|w| w.symbols).collect();
        let w = sturmian_window(&p, -37, 10 * n as i64).unwrap();
        for s in w.subwords(n) {
            prop_assert!(f.contains(&s));
        }
    }

    #[test]
    fn letter_frequencies(a in unit_surd()) {
        let p = SturmianParams::new(a.clone()).unwrap();
        let n = 3000;
        let w = sturmian_window(&p, 0, n).unwrap();
        let ones = letter_count(&w, 1) as f64;
        prop_assert!((ones / n as f64 - a.to_f64()).abs() <= 2.0 / n as f64);
        let s = sadic_prefix(&p, 500).unwrap();
        prop_assert_eq!(&s.symbols[..], &w.symbols[..500]);
    }

    #[test]
    fn denjoy_power_spans(rho in unit_surd(), raw in prop::collection::vec(-6i64..6, 0..3), m in prop::sample::select(vec![-2i64, -1, 2, 3])) {
        let reps: Vec<RealValue> = raw.iter().map(|&k| rho.scale(&q(k, 5)).add_rational(&q(1, 3))).collect();
        let p = normalize(&rho, &reps).unwrap();
        let pm = power_params(&p, m).unwrap();
        prop_assert_eq!(denjoy_state(&pm).unwrap().module.tensor_q(), denjoy_state(&p).unwrap().module.tensor_q());
        prop_assert_eq!(pm.n_orbits(), p.n_orbits() * m.unsigned_abs() as usize);
    }

    #[test]
    fn minimal_model_properties(t in quadratic_iet()) {
        let m = minimal_model(&t).unwrap();
        prop_assert!(m.d() <= t.d());
        prop_assert!(minimal_model(&m).unwrap().same_projective(&m));
        prop_assert_eq!(saf(&m).unwrap(), saf(&t).unwrap());
    }

    #[test]
    fn power_discontinuities_count_cylinders(t in quadratic_iet(), n in 1usize..6) {
        prop_assert_eq!(power_discontinuities(&t, n as i64).unwrap().len(), ies_factors(&t, n).unwrap().len());
    }

    #[test]
    fn json_round_trips(x in surd(), t in quadratic_iet()) {
        prop_assert_eq!(json::parse_reals(&[json::real(&x)], 100).unwrap().remove(0), x);
        prop_assert!(json::parse_iet(&json::iet(&t), 100).unwrap().same_projective(&t));
    }
}

fn pool() -> Vec<RealValue> {
    let texts = [
        "sqrt(2)", "3-sqrt(2)", "1/(1+sqrt(2))", "sqrt(2)/2", "(3-sqrt(2))/2", "sqrt(8)+1", "(1+sqrt(5))/2",
        "(1+sqrt(5))/4", "(sqrt(5)-1)/4", "sqrt(5)", "2+sqrt(5)", "sqrt(3)", "1/sqrt(3)", "2-sqrt(3)", "sqrt(12)/5",
        "sqrt(7)", "(5+sqrt(7))/3", "sqrt(2)+1/2", "-sqrt(2)", "7-sqrt(5)",
    ];
    texts.iter().map(|t| sturmkit::realnum::parse_value(t).unwrap()).collect()
}

#[test]
fn decision_relations_on_a_pool() {
    let pool = pool();
    let n = pool.len();
    let mut flow = vec![vec![false; n]; n];
    let mut iso = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&pool[i], &pool[j]);
            let c = sturmian_conjugate(a, b).unwrap();
            let f = sturmian_flow_equivalent(a, b).unwrap();
            let g = sturmian_isogenous(a, b).unwrap();
            if let Some(Certificate::Conjugacy { sign, shift }) = &c.certificate {
                assert!(verify_conjugacy(a, b, *sign, shift));
            }
            for d in [&f, &g] {
                if d.is_yes() {
                    assert!(verify_matrix(a, b, d.matrix().unwrap()), "{a} → {b}");
                }
            }
            // conjugate ⇒ flow ⇒ isogenous
            assert!(!c.is_yes() || f.is_yes());
            assert!(!f.is_yes() || g.is_yes());
            assert_ne!(f.verdict, Verdict::Unknown);
            flow[i][j] = f.is_yes();
            iso[i][j] = g.is_yes();
        }
    }
    for rel in [&flow, &iso] {
        for i in 0..n {
            assert!(rel[i][i]);
            for j in 0..n {
                assert_eq!(rel[i][j], rel[j][i]);
                for k in 0..n {
                    assert!(!(rel[i][j] && rel[j][k]) || rel[i][k]);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    /// Primitive discriminants up to about 10⁶.
    #[test]
    fn cf_round_trip_wide(
        d in prop::sample::select(vec![2u64, 13, 37, 101, 997, 4093, 9973]),
        x in -300i64..300,
        y in 1i64..6,
        r in 1i64..40,
    ) {
        let v = RealValue::quadratic(d, q(x, r), q(y, r)).unwrap();
        prop_assert_eq!(from_cf(&expand_periodic(&v).unwrap()).unwrap(), v);
    }
}
