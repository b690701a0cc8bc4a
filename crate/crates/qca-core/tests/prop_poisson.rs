mod common;

use common::*;
use proptest::prelude::*;
use qca_core::poisson::{check_poisson_map, classical_limit, poisson_bracket, semiclassical_bracket};
use qca_core::qtorus::QTorusElement;
use qca_core::ratfun::CommutativeRational;
use qca_core::scalars::{QScalar, TScalar};
use qca_core::seeds::Seed;

fn laurent(n: usize) -> impl Strategy<Value = CommutativeRational> {
    prop::collection::vec((exponent(n, 2), -3i128..=3, 0u32..=1), 1..=3).prop_map(move |ts| {
        ts.into_iter().fold(CommutativeRational::zero(n), |acc, (e, c, t)| {
            let coeff = CommutativeRational::from_tscalar(n, &TScalar::monomial(&[t], c));
            acc.add(&coeff.mul(&CommutativeRational::x_monomial(&e)))
        })
    })
}

fn seed_and_triple() -> impl Strategy<Value = (Seed, CommutativeRational, CommutativeRational, CommutativeRational)> {
    seed(1).prop_flat_map(|s| {
        let n = s.rank();
        (Just(s), laurent(n), laurent(n), laurent(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_axioms((s, f, g, h) in seed_and_triple()) {
        let br = |a: &CommutativeRational, b: &CommutativeRational| poisson_bracket(a, b, &s).unwrap();
        prop_assert_eq!(br(&f, &g), br(&g, &f).neg());
        prop_assert_eq!(br(&f, &g.mul(&h)), br(&f, &g).mul(&h).add(&g.mul(&br(&f, &h))));
        let jacobi = br(&f, &br(&g, &h)).add(&br(&g, &br(&h, &f))).add(&br(&h, &br(&f, &g)));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn t_coefficients_are_casimirs((s, f, g, _h) in seed_and_triple(), e in prop::collection::vec(0u32..=2, 1..=3), c in -3i128..=3) {
        let n = s.rank();
        let t = CommutativeRational::from_tscalar(n, &TScalar::monomial(&e, c));
        prop_assert!(poisson_bracket(&t, &f, &s).unwrap().is_zero());
        prop_assert_eq!(poisson_bracket(&t.mul(&f), &g, &s).unwrap(), t.mul(&poisson_bracket(&f, &g, &s).unwrap()));
    }

    #[test]
    fn routes_agree_on_monomials(s in seed(1), a in exponent(3, 3), b in exponent(3, 3)) {
        let n = s.rank();
        let alg = s.x_lattice();
        let (a, b) = (a[..n].to_vec(), b[..n].to_vec());
        let xa = QTorusElement::monomial(&alg, a.clone(), QScalar::one());
        let xb = QTorusElement::monomial(&alg, b.clone(), QScalar::one());
        let quantum = semiclassical_bracket(&xa, &xb).unwrap();
        let classical = poisson_bracket(&CommutativeRational::x_monomial(&a), &CommutativeRational::x_monomial(&b), &s).unwrap();
        prop_assert_eq!(&quantum, &classical);
        // 2{a,b}X^{a+b}
        let w = alg.omega(&a, &b) * rat(2);
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let want = CommutativeRational::from_ratio(n, *w.numer() as i128, *w.denom() as i128).unwrap().mul(&CommutativeRational::x_monomial(&sum));
        prop_assert_eq!(quantum, want);
    }

    #[test]
    fn routes_agree_on_products(
        (s, a, b) in seed(1).prop_flat_map(|s| { let alg = s.x_lattice(); (Just(s), element(alg.clone(), 3), element(alg, 3)) })
    ) {
        prop_assume!(classical_limit(&a).is_ok() && classical_limit(&b).is_ok());
        let quantum = semiclassical_bracket(&a, &b).unwrap();
        let classical = poisson_bracket(&classical_limit(&a).unwrap(), &classical_limit(&b).unwrap(), &s).unwrap();
        prop_assert_eq!(quantum, classical);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn family_mutation_is_a_poisson_map(
        (s, k, f, g) in seed(2).prop_flat_map(|s| { let n = s.rank(); (Just(s), 0..n, laurent(n), laurent(n)) })
    ) {
        let r = check_poisson_map(&s, k, &[(f, g)]).unwrap();
        for p in &r.pairs {
            prop_assert!(p.holds, "k={} pair {:?}: {} vs {}", k, p.names, p.pulled_back, p.bracket_of_pullbacks);
        }
    }
}

#[test]
fn poisson_map_on_rank_three_fixture_every_direction() {
    let s = rank3_frozen();
    for k in 0..2 {
        let r = check_poisson_map(&s, k, &[]).unwrap();
        assert_eq!(r.pairs.len(), 3);
        assert!(r.all_hold());
    }
}
