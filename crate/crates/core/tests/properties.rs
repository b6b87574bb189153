//! Algebraic laws checked on random inputs.

use charmod::anomaly::{Mod2Poly, W};
use charmod::charring::{vb_adams, Gen, GradedPoly, Monomial, VirtualBundle};
use charmod::cubiclattice::{
    check_cubic_relations, defect, is_characteristic, solve_bhat, verify_refinement, CubicFormSpec, CubicPoly,
    TrilinearLattice,
};
use charmod::exactmath::{qs_exp, qs_inv, qs_log, qs_mul, QExpSeries, GRID};
use charmod::{Rat, RatSeries, ZMod};
use proptest::prelude::*;

const ORDER: u32 = 4;

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rat::new(n, d))
}

/// Exponents on the `q^(1/8)` grid through `q^ORDER`.
fn series() -> impl Strategy<Value = RatSeries> {
    prop::collection::vec((0u32..=8 * ORDER, rat()), 0..8)
        .prop_map(|ts| QExpSeries::from_terms((), ORDER, ts.into_iter().map(|(k, c)| (k * GRID / 8, c))))
}

fn unit_series() -> impl Strategy<Value = RatSeries> {
    (series(), 1i64..=5).prop_map(|(s, c)| {
        let tail = QExpSeries::from_terms((), ORDER, s.terms().filter(|(k, _)| *k > 0).map(|(k, c)| (k, c.clone())));
        tail.add(&RatSeries::constant(Rat::from_int(c), ORDER)).unwrap()
    })
}

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u8..=3, 0u8..=1, 0u8..=4, 0u8..=2).prop_map(|(a, b, c, x)| {
        Monomial::gen_pow(Gen::P1, a)
            .mul(&Monomial::gen_pow(Gen::P2, b))
            .mul(&Monomial::gen_pow(Gen::C, c))
            .mul(&Monomial::gen_pow(Gen::X, x))
    })
}

fn poly() -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec((monomial(), rat()), 0..6).prop_map(|ts| {
        let mut p = GradedPoly::zero(12);
        for (m, c) in ts {
            p = &p + &GradedPoly::monomial(m, c, 12);
        }
        p
    })
}

fn mod2() -> impl Strategy<Value = Mod2Poly> {
    let gen = prop::sample::select(vec![W::W2, W::W4, W::W6, W::W8]);
    prop::collection::vec(prop::collection::vec((gen, 0u32..=2), 0..3), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Mod2Poly::zero(), |acc, t| {
            let m = t.into_iter().fold(Mod2Poly::one(), |m, (w, e)| m.mul(&Mod2Poly::gen(w).pow(e)));
            acc.add(&m)
        })
    })
}

proptest! {
    #[test]
    fn rat_agrees_with_i128(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let (x, y) = (Rat::new(a, b), Rat::new(c, d));
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        let big = |n: i128, m: i128| Rat::from_big(n.into(), m.into());
        prop_assert_eq!(&x + &y, big(a * d + b * c, b * d));
        prop_assert_eq!(&x * &y, big(a * c, b * d));
        prop_assert_eq!(&x - &y, big(a * d - b * c, b * d));
        if c != 0 {
            prop_assert_eq!(&x / &y, big(a * d, b * c));
        }
        prop_assert_eq!(x.to_string().parse::<Rat>().unwrap(), x);
    }

    #[test]
    fn zmod_agrees_with_i128(a in -10_000i128..10_000, b in -10_000i128..10_000, m in 2u64..100) {
        let (x, y) = (ZMod::new(a, m), ZMod::new(b, m));
        let red = |v: i128| v.rem_euclid(m as i128) as u64;
        prop_assert_eq!((x + y).value(), red(a + b));
        prop_assert_eq!((x - y).value(), red(a - b));
        prop_assert_eq!((x * y).value(), red(a * b));
        match x.inverse() {
            Some(inv) => prop_assert_eq!((x * inv).value(), 1),
            None => prop_assert!(num_integer::gcd(red(a), m) != 1),
        }
    }

    #[test]
    fn series_ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(qs_mul(&a, &b).unwrap(), qs_mul(&b, &a).unwrap());
        prop_assert_eq!(
            qs_mul(&qs_mul(&a, &b).unwrap(), &c).unwrap(),
            qs_mul(&a, &qs_mul(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            qs_mul(&a, &b.add(&c).unwrap()).unwrap(),
            qs_mul(&a, &b).unwrap().add(&qs_mul(&a, &c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn series_inverse_exp_log(u in unit_series()) {
        let one = RatSeries::one((), ORDER);
        prop_assert_eq!(qs_mul(&u, &qs_inv(&u).unwrap()).unwrap(), one);
        let normed = u.scale(&u.coeff_q(0).recip().unwrap());
        prop_assert_eq!(qs_exp(&qs_log(&normed).unwrap()).unwrap(), normed.clone());
        // log turns products into sums
        let sq = qs_mul(&normed, &normed).unwrap();
        prop_assert_eq!(qs_log(&sq).unwrap(), qs_log(&normed).unwrap().scale(&Rat::from_int(2)));
    }

    #[test]
    fn graded_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).with_cap(8), &a.with_cap(8) * &b.with_cap(8));
        prop_assert!(a.max_degree().is_none_or(|d| d <= 12));
    }

    #[test]
    fn graded_exp_log(a in poly()) {
        let nil = &a - &GradedPoly::constant(a.constant_term(), 12);
        let e = nil.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), nil.clone());
        prop_assert_eq!(&e * &nil.scale_int(-1).exp().unwrap(), GradedPoly::one(12));
        let u = &e.scale_int(3) + &nil;
        prop_assert_eq!(&u * &u.inverse().unwrap(), GradedPoly::one(12));
    }

    #[test]
    fn adams_is_multiplicative(a in poly(), b in poly(), k in 1i64..=4, l in 1i64..=4) {
        let (ea, eb) = (VirtualBundle::from_ch(a), VirtualBundle::from_ch(b));
        let psi = |e: &VirtualBundle, k| vb_adams(e, k).unwrap();
        prop_assert_eq!(psi(&psi(&ea, k), l), psi(&ea, k * l));
        prop_assert_eq!(psi(&ea.tensor(&eb), k), psi(&ea, k).tensor(&psi(&eb, k)));
        prop_assert_eq!(psi(&(&ea + &eb), k), &psi(&ea, k) + &psi(&eb, k));
    }

    #[test]
    fn mod2_ring_laws(a in mod2(), b in mod2(), c in mod2()) {
        prop_assert!(a.add(&a).is_zero());
        prop_assert_eq!(a.add(&b).pow(2), a.pow(2).add(&b.pow(2)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn trilinear_symmetry(vals in prop::collection::vec(-5i64..=5, 10), u in prop::collection::vec(-9i64..=9, 3),
                          v in prop::collection::vec(-9i64..=9, 3), w in prop::collection::vec(-9i64..=9, 3)) {
        let l = TrilinearLattice::from_upper(3, &vals).unwrap();
        let t = l.eval(&u, &v, &w);
        prop_assert_eq!(t, l.eval(&v, &u, &w));
        prop_assert_eq!(t, l.eval(&w, &v, &u));
        prop_assert_eq!(t, l.eval(&u, &w, &v));
        let uv: Vec<i64> = u.iter().zip(&v).map(|(p, q)| p + q).collect();
        prop_assert_eq!(l.eval(&uv, &w, &w), l.eval(&u, &w, &w) + l.eval(&v, &w, &w));
        prop_assert_eq!(TrilinearLattice::new(3, l.to_nested()).unwrap(), l);
    }

    #[test]
    fn characteristic_forms_have_bhat(vals in prop::collection::vec(-3i64..=3, 4), a in prop::collection::vec(-24i64..=24, 2)) {
        let l = TrilinearLattice::from_upper(2, &vals).unwrap();
        if is_characteristic(&l, &a).unwrap() {
            let s = solve_bhat(&l, &a, 24).unwrap();
            prop_assert!(s.unique && s.exhaustive);
            for x in [[1, 0], [0, 1], [5, -7], [23, 11]] {
                prop_assert_eq!(defect(&l, &a, &s.bhat, 24, &x), 0);
            }
            let spec = CubicFormSpec::new(&l, a.clone(), s.bhat.clone()).unwrap();
            let r = check_cubic_relations(&l, &spec, 50, 7).unwrap();
            prop_assert!(r.passed && r.hypothesis && r.integrality_witness.is_none(), "{:?}", r);
        }
        let zero = solve_bhat(&l, &[0, 0], 3);
        prop_assert!(zero.is_ok());
    }

    #[test]
    fn refinement_shifts(vals in prop::collection::vec(-4i64..=4, 4), lin in prop::collection::vec(-9i64..=9, 2)) {
        let l = TrilinearLattice::from_upper(2, &vals).unwrap();
        let h = CubicPoly::standard(&l).with_linear(&lin);
        prop_assert!(verify_refinement(&l, &h, 20, 1).unwrap().passed);
        // doubling h doubles the alternating sum
        if l.to_nested().iter().flatten().flatten().any(|&t| t != 0) {
            prop_assert!(!verify_refinement(&l, &h.scale(&Rat::from_int(2)), 20, 1).unwrap().passed);
        }
    }
}
