mod common;

use std::cmp::Ordering;

use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::strat;
use qsig::arith::{
    alg_compare, circle_to_tangent, fmt_rational, int, laurent_bar, laurent_vanishes_at_root_of_unity, parse_rational,
    real_roots, root_of_unity_tangent, simplest_between, to_f64, two_cos_root_of_unity, unit_circle_point,
    GaussianRational, LaurentPolynomial, Poly, Rational, RealAlgebraic,
};

fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    (-3i64..=0, prop::collection::vec(strat::gaussian(), 0..6))
        .prop_map(|(lo, cs)| LaurentPolynomial::from_terms(cs.into_iter().enumerate().map(|(i, c)| (lo + i as i64, c))))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(strat::rational(), 0..6).prop_map(Poly::new)
}

fn to_c(z: &GaussianRational) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

fn eval_f(p: &LaurentPolynomial, w: Complex64) -> Complex64 {
    p.terms().map(|(e, c)| to_c(c) * w.powi(e as i32)).sum()
}

fn distinct_sorted(v: Vec<Rational>) -> Vec<Rational> {
    let mut v = v;
    v.sort();
    v.dedup();
    v
}

proptest! {
    #[test]
    fn rational_text_round_trip(q in strat::rational()) {
        prop_assert_eq!(parse_rational(&fmt_rational(&q)), Some(q));
    }

    #[test]
    fn gaussian_field_laws(a in strat::gaussian(), b in strat::gaussian(), c in strat::gaussian()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a * &b).norm_sqr(), a.norm_sqr() * b.norm_sqr());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        }
    }

    #[test]
    fn bar_is_an_involution_and_conjugates_on_the_circle(p in laurent(), q in laurent(), u in strat::rational()) {
        prop_assert_eq!(laurent_bar(&laurent_bar(&p)), p.clone());
        prop_assert_eq!(laurent_bar(&(&p * &q)), &laurent_bar(&p) * &laurent_bar(&q));
        let w = unit_circle_point(&u);
        prop_assert_eq!(w.norm_sqr(), Rational::one());
        prop_assert_eq!(laurent_bar(&p).eval(&w), p.eval(&w).conj());
    }

    #[test]
    fn tangent_rewrite_keeps_sign(p in laurent(), u in strat::rational()) {
        let s = &p + &laurent_bar(&p);
        let f = circle_to_tangent(&s).unwrap();
        let v = s.eval(&unit_circle_point(&u));
        prop_assert!(v.is_real());
        prop_assert_eq!(f.sign_at(&u), v.re.cmp(&Rational::zero()) as i32);
    }

    #[test]
    fn division_with_remainder(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(a in poly(), b in poly(), c in poly()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (x, y) = (&a * &c, &b * &c);
        let g = Poly::gcd(&x, &y);
        prop_assert!(x.rem(&g).is_zero());
        prop_assert!(y.rem(&g).is_zero());
        prop_assert!(g.rem(&c).is_zero());
    }

    #[test]
    fn interpolation_recovers(p in poly()) {
        let n = p.degree().unwrap_or(0) + 1;
        let xs: Vec<Rational> = (0..n as i64).map(int).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
        prop_assert_eq!(Poly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn rational_roots_are_found_exactly(roots in prop::collection::vec(strat::rational(), 1..5), c in 1i64..5, twice in any::<bool>()) {
        let roots = distinct_sorted(roots);
        let mut p = Poly::from_ints(&[c, 0, 1]);
        for r in &roots {
            p = &p * &Poly::linear_root(r);
            if twice {
                p = &p * &Poly::linear_root(r);
            }
        }
        let found = real_roots(&p);
        prop_assert_eq!(found.len(), roots.len());
        for (f, r) in found.iter().zip(&roots) {
            prop_assert_eq!(f.cmp_rational(r), Ordering::Equal);
        }
    }

    #[test]
    fn irrational_roots_match_floats(k in 2i64..30, s in strat::rational()) {
        prop_assume!((1..6).all(|m| m * m != k));
        // (x - s)² - k
        let p = Poly::new(vec![&s * &s - int(k), -(int(2) * &s), int(1)]);
        let found = real_roots(&p);
        prop_assert_eq!(found.len(), 2);
        let kf = (k as f64).sqrt();
        let sf = to_f64(&s);
        prop_assert!((found[0].to_f64() - (sf - kf)).abs() < 1e-9);
        prop_assert!((found[1].to_f64() - (sf + kf)).abs() < 1e-9);
        prop_assert!(found[0].as_rational().is_none());
    }

    #[test]
    fn alg_compare_is_an_order(a in 2i64..20, b in 2i64..20, s in strat::rational(), t in strat::rational()) {
        let root = |k: i64, shift: &Rational| {
            let p = Poly::new(vec![shift * shift - int(k), -(int(2) * shift), int(1)]);
            real_roots(&p).pop().unwrap()
        };
        let x = root(a, &s);
        let y = root(b, &t);
        let fx = to_f64(&s) + (a as f64).sqrt();
        let fy = to_f64(&t) + (b as f64).sqrt();
        let o = alg_compare(&x, &y);
        prop_assert_eq!(o, alg_compare(&y, &x).reverse());
        prop_assert_eq!(alg_compare(&x, &x), Ordering::Equal);
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(o, fx.partial_cmp(&fy).unwrap());
        } else {
            prop_assert_eq!(o, Ordering::Equal);
        }
        let r = RealAlgebraic::from_rational(&s);
        prop_assert_eq!(alg_compare(&x, &r), fx.partial_cmp(&to_f64(&s)).unwrap());
    }

    #[test]
    fn simplest_between_lies_strictly_inside(a in strat::rational(), b in strat::rational(), open_lo in any::<bool>(), open_hi in any::<bool>()) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let l = (!open_lo).then_some(&lo);
        let h = (!open_hi).then_some(&hi);
        let q = simplest_between(l, h);
        prop_assert!(l.map_or(true, |l| *l < q));
        prop_assert!(h.map_or(true, |h| q < *h));
    }

    #[test]
    fn roots_of_unity_sit_where_expected(m in 1u64..40, a in -50i64..50) {
        let p = root_of_unity_tangent(a, m);
        let want = (2.0 * std::f64::consts::PI * a as f64 / m as f64).rem_euclid(2.0 * std::f64::consts::PI);
        let got = p.theta_f64();
        let d = (got - want).abs();
        prop_assert!(d < 1e-9 || (d - 2.0 * std::f64::consts::PI).abs() < 1e-9);
        let c = two_cos_root_of_unity(a, m).to_f64();
        prop_assert!((c - 2.0 * want.cos()).abs() < 1e-9);
    }

    #[test]
    fn vanishing_at_roots_of_unity_matches_floats(p in laurent(), m in 1u64..13, a in 0i64..13) {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * a as f64 / m as f64);
        // A factor (t - ζ) makes some instances vanish.
        let z = LaurentPolynomial::from_terms([(1, GaussianRational::one())]);
        let root = root_of_unity_tangent(a, m);
        let exact_root = match &root {
            qsig::arith::CirclePoint::Tangent(u) => u.as_rational().map(|u| unit_circle_point(&u)),
            qsig::arith::CirclePoint::Pi => Some(GaussianRational::real(int(-1))),
        };
        let p = match exact_root {
            Some(w0) => &p * &(&z - &LaurentPolynomial::constant(w0)),
            None => p,
        };
        let exact = laurent_vanishes_at_root_of_unity(&p, a, m);
        let v = eval_f(&p, w).norm();
        if exact {
            prop_assert!(v < 1e-9);
        } else {
            prop_assert!(v > 1e-12);
        }
    }
}
