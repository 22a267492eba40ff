use bsd_core::arith::numfield::NfElem;
use bsd_core::arith::scalar::{primes_up_to, rat, Scalar, Zp};
use bsd_core::builtin::*;
use bsd_core::curves::counting::{count_points_genus2, primes_above, trace_at};
use bsd_core::curves::elliptic::{cm_discriminant_check, isomorphism_test, Isomorphism};
use proptest::prelude::*;

#[test]
fn j_invariant_of_e() {
    let k = field_k();
    let j = curve_e().j_invariant().unwrap();
    // 632000 + 282880·√5 with √5 = g²
    assert_eq!(j, NfElem::from_i64_coords(&k, &[632000, 0, 282880, 0], 1));
    assert_eq!(cm_discriminant_check(&j), Some(-20));
    assert_eq!(cm_discriminant_check(&NfElem::from_int(&k, 1728)), Some(-4));
    assert_eq!(cm_discriminant_check(&j.plus(&NfElem::one(&k))), None);
    let js = curve_e_sigma().j_invariant().unwrap();
    assert_eq!(js, j);
}

#[test]
fn e_and_its_conjugate() {
    let e = curve_e();
    assert!(isomorphism_test(&e, &curve_e_sigma()).is_none());
    let id = isomorphism_test(&e, &e).unwrap();
    let k = field_k();
    assert_eq!(id, Isomorphism { u: NfElem::one(&k), r: NfElem::zero(&k), s: NfElem::zero(&k), t: NfElem::zero(&k) });
    let l = field_l8();
    let (g, _) = l8_generators();
    let el = e.base_change(&l, &g);
    let esl = curve_e_sigma().base_change(&l, &g);
    let w = isomorphism_test(&el, &esl).expect("isomorphic over Q(i, 5^(1/4))");
    assert_eq!(el.transform(&w), esl);
}

#[test]
fn e_is_a_twist_of_the_degree_sixteen_target() {
    // the Q(√5)-curve placed in K via √5 ↦ −g², then twisted by −g
    let k = field_k();
    let g = NfElem::generator(&k);
    let eo = curve_e_orig().base_change(&k, &g.pow_u(2).negated());
    assert!(isomorphism_test(&eo, &curve_e()).is_none());
    let t = eo.quadratic_twist(&g.negated()).unwrap();
    let w = isomorphism_test(&t, &curve_e()).unwrap();
    assert_eq!(t.transform(&w), curve_e());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn j_is_invariant_under_transforms(u in prop::collection::vec(-3i64..=3, 4), r in prop::collection::vec(-9i64..=9, 4),
                                       s in prop::collection::vec(-9i64..=9, 4), t in prop::collection::vec(-9i64..=9, 4)) {
        let k = field_k();
        let u = NfElem::from_i64_coords(&k, &u, 1);
        prop_assume!(!u.is_zero_elt());
        let iso = Isomorphism {
            u,
            r: NfElem::from_i64_coords(&k, &r, 2),
            s: NfElem::from_i64_coords(&k, &s, 3),
            t: NfElem::from_i64_coords(&k, &t, 1),
        };
        let e = curve_e();
        let e2 = e.transform(&iso);
        prop_assert_eq!(e2.j_invariant().unwrap(), e.j_invariant().unwrap());
        let w = isomorphism_test(&e, &e2).unwrap();
        prop_assert_eq!(e.transform(&w), e2);
    }

    #[test]
    fn absolute_invariants_survive_twists(n in -40i64..40, d in 1i64..12) {
        prop_assume!(n != 0);
        let h = curve_h();
        let t = h.quadratic_twist(&rat(n, d)).unwrap();
        prop_assert_eq!(t.igusa_clebsch().absolute, h.igusa_clebsch().absolute);
    }
}

#[test]
fn weil_bounds() {
    for p in primes_up_to(400).into_iter().filter(|&p| p > 5) {
        for c in [curve_h(), curve_hprime()] {
            let n = count_points_genus2(&c, p, 1).unwrap() as f64;
            assert!((n - p as f64 - 1.0).abs() <= 4.0 * (p as f64).sqrt(), "{} p={p}", c.label);
        }
        for rf in primes_above(&field_k(), p).unwrap() {
            let a = trace_at(&curve_e(), &rf).unwrap() as f64;
            assert!(a.abs() <= 2.0 * (rf.q() as f64).sqrt());
        }
    }
}

#[test]
fn supersingular_at_primes_inert_in_the_cm_field() {
    let mut seen = 0;
    for p in primes_up_to(200).into_iter().filter(|&p| p > 5) {
        if Zp::new(-5, p).legendre() != -1 {
            continue;
        }
        for rf in primes_above(&field_k(), p).unwrap().iter().filter(|rf| rf.f == 1) {
            assert_eq!(trace_at(&curve_e(), rf).unwrap(), 0, "p={p}");
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn twist_counts_at_three() {
    assert_eq!(count_points_genus2(&curve_hprime(), 3, 1).unwrap(), 4);
}
