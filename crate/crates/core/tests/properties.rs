use proptest::prelude::*;
use richelot_core::{
    bracket, delta, discr, mobius_act, res, res1, int, rat, FactoredSextic, LinFactor, Mobius, Quad, Rational,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=60).prop_map(|(n, d)| rat(n, d))
}

fn quad() -> impl Strategy<Value = Quad<Rational>> {
    (rational(), rational(), rational()).prop_map(|(a, b, c)| Quad::new(a, b, c))
}

fn linear() -> impl Strategy<Value = LinFactor<Rational>> {
    (rational(), rational()).prop_filter_map("nonzero", |(a, b)| LinFactor::new(a, b).ok())
}

fn mobius() -> impl Strategy<Value = Mobius<Rational>> {
    (rational(), rational(), rational()).prop_filter_map("unimodular", |(a, b, c)| {
        if a == int(0) {
            return None;
        }
        let d = (int(1) + b.clone() * c.clone()) / a.clone();
        Mobius::new(a, b, c, d).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bracket_is_antisymmetric(p in quad(), q in quad()) {
        prop_assert_eq!(bracket(&p, &q), bracket(&q, &p).scale(&int(-1)));
        prop_assert!(bracket(&p, &p).is_zero());
    }

    #[test]
    fn bracket_satisfies_jacobi(p in quad(), q in quad(), r in quad()) {
        let s = bracket(&p, &bracket(&q, &r))
            .add(&bracket(&q, &bracket(&r, &p)))
            .add(&bracket(&r, &bracket(&p, &q)));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn discriminant_of_bracket(p in quad(), q in quad()) {
        prop_assert_eq!(discr(&bracket(&p, &q)), int(4) * res(&p, &q));
    }

    #[test]
    fn mobius_respects_bracket_and_delta(s in mobius(), p in quad(), q in quad(), r in quad()) {
        let act = |g: &Quad<Rational>| mobius_act(&s, g);
        prop_assert_eq!(bracket(&act(&p), &act(&q)), act(&bracket(&p, &q)));
        prop_assert_eq!(delta(&act(&p), &act(&q), &act(&r)), delta(&p, &q, &r));
    }

    #[test]
    fn res1_squares_to_discriminant(g in linear(), h in linear()) {
        let r = res1(&g, &h);
        prop_assert_eq!(r.clone() * r, discr(&g.mul(&h)));
    }

    #[test]
    fn hat_triple_identities(p in quad(), q in quad(), r in quad()) {
        let d = delta(&p, &q, &r);
        let (ph, qh, rh) = (bracket(&q, &r), bracket(&r, &p), bracket(&p, &q));
        let m2d = int(-2) * d.clone();
        prop_assert_eq!(bracket(&ph, &qh), r.scale(&m2d));
        prop_assert_eq!(bracket(&qh, &rh), p.scale(&m2d));
        prop_assert_eq!(bracket(&rh, &ph), q.scale(&m2d));
        prop_assert_eq!(delta(&ph, &qh, &rh), int(-2) * d.clone() * d.clone());
        prop_assert_eq!(res(&ph, &qh), d.clone() * d.clone() * discr(&r));
        prop_assert_eq!(res(&qh, &rh), d.clone() * d * discr(&p));
    }

    #[test]
    fn richelot_map_is_homogeneous_quadratic(
        p in quad(), q in quad(), r in quad(),
        a in prop::array::uniform4(-20i64..=20), k in 1i64..=9,
    ) {
        let Ok(fs) = FactoredSextic::new(p, q, r) else { return Ok(()) };
        let a = a.map(int);
        prop_assume!(a.iter().any(|x| *x != int(0)));
        let scaled = a.clone().map(|x| x * int(k));
        let lhs = fs.richelot_map(&scaled).unwrap();
        let rhs = fs.richelot_map(&a).unwrap().map(|x| x * int(k * k));
        prop_assert_eq!(lhs, rhs);
    }
}
