use proptest::prelude::*;

use qorbit_core::center::{s_from_sigma, sigma_from_s, ScalarRing};
use qorbit_core::scalar::{one_minus_q2inv, qint, rat, Coeff, Field, Monomial, ParamFraction, ParamPoly, RatFn, Specialization, Sym};
use qorbit_core::theta::{mu_symbols, nhat_symbols, theta, theta_t, Composition};

fn poly() -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((-3i32..=3, 0i32..=2, 0i32..=1, -4i64..=4), 0..5).prop_map(|terms| {
        ParamPoly::from_terms(terms.into_iter().map(|(qe, te, me, c)| {
            (
                Monomial::from_pairs([(Sym::Q, qe), (Sym::T, te), (Sym::Mu(1), me)]),
                rat(c, 1),
            )
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = ParamPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn qint_telescopes(m in -12i64..=12) {
        let lhs = &qint(m) * &one_minus_q2inv();
        let rhs = &ParamPoly::one() - &ParamPoly::q_pow(-2 * m as i32);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn fractions_cancel(a in poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let x = ParamFraction::new(&a * &c, &b * &c).unwrap();
        let y = ParamFraction::new(a, b).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn newton_round_trip(s in prop::collection::vec(-6i64..=6, 5)) {
        let spec = Specialization::symbolic();
        let ring = ScalarRing::<RatFn>::new(&spec);
        let mut s: Vec<RatFn> = s.into_iter().map(|x| RatFn::embed(&ParamPoly::int(x), &spec).unwrap()).collect();
        s[0] = RatFn::one();
        let sigma = sigma_from_s(&ring, &s, 4).unwrap();
        let back = s_from_sigma(&ring, &sigma, s[0].clone(), 4).unwrap();
        prop_assert_eq!(&back[1..], &s[1..]);
    }

    #[test]
    fn theta_is_symmetric_in_blocks(parts in prop::collection::vec(1usize..=3, 2..=3), m in 0usize..=4, rot in 0usize..3) {
        let comp = Composition::new(parts).unwrap();
        let k = comp.k();
        let nh = comp.nhats();
        let mu = mu_symbols(k);
        let mut perm: Vec<usize> = (0..k).collect();
        perm.rotate_left(rot % k);
        let nh2: Vec<_> = perm.iter().map(|&i| nh[i].clone()).collect();
        let mu2: Vec<_> = perm.iter().map(|&i| mu[i].clone()).collect();
        prop_assert_eq!(theta(&nh, &mu, m).unwrap(), theta(&nh2, &mu2, m).unwrap());
        prop_assert_eq!(theta_t(&nh, &mu, m).unwrap(), theta_t(&nh2, &mu2, m).unwrap());
    }

    #[test]
    fn theta_opaque_symmetric(m in 0usize..=3) {
        let nh = nhat_symbols(2);
        let mu = mu_symbols(2);
        let swap = |v: &[ParamPoly]| vec![v[1].clone(), v[0].clone()];
        prop_assert_eq!(theta(&nh, &mu, m).unwrap(), theta(&swap(&nh), &swap(&mu), m).unwrap());
    }
}
