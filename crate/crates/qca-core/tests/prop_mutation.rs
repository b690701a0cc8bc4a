mod common;

use common::*;
use proptest::prelude::*;
use qca_core::duality::{check_intertwining, pstar_hom, synthesize_lambda};
use qca_core::mutation::{
    apply_mutation_sequence, mu_prime_images, mu_sharp_images, quantum_x_images, words_equal, FactoredWord, Mode,
};
use qca_core::scalars::QScalar;
use qca_core::seeds::{cluster_chamber, Seed};

const K: usize = 10;

fn sign_coherent(v: &[i64]) -> bool {
    v.iter().all(|x| *x >= 0) || v.iter().all(|x| *x <= 0)
}

fn path(n: usize, len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, 0..=len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn seed_mutation_is_involutive_on_data(s in seed(3), k in 0usize..3) {
        let k = k % s.rank();
        let back = s.mutate(k).unwrap().mutate(k).unwrap();
        prop_assert_eq!(back.epsilon(), s.epsilon());
        prop_assert_eq!(back.cvectors(), s.cvectors());
        prop_assert_eq!(back.epsilon_hat(), s.epsilon_hat());
    }

    #[test]
    fn reachable_exchange_matrices_are_integral(
        (fd, p) in prop_oneof![rank2_fixed(), rank3_fixed()].prop_flat_map(|fd| { let n = fd.rank(); (Just(fd), path(n, 8)) })
    ) {
        let mut s = Seed::initial(fd);
        for k in p {
            s = s.mutate(k).unwrap();
            let eps = s.epsilon();
            for (i, row) in eps.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    prop_assert!(x.is_integer(), "ε[{}][{}] = {} after {:?}", i, j, x, s.history());
                }
            }
        }
    }

    #[test]
    fn cvectors_are_nonzero_and_sign_coherent(
        (fd, p) in prop_oneof![rank2_fixed(), rank3_fixed()].prop_flat_map(|fd| { let n = fd.rank(); (Just(fd), path(n, 8)) })
    ) {
        let mut s = Seed::initial(fd);
        for k in p {
            s = s.mutate(k).unwrap();
            for c in s.cvectors() {
                prop_assert!(c.iter().any(|x| *x != 0));
                prop_assert!(sign_coherent(&c), "{:?} after {:?}", c, s.history());
            }
        }
    }

    #[test]
    fn chamber_duality(fd in rank2_fixed(), p in path(2, 8)) {
        let s = Seed::initial(fd).mutate_sequence(&p).unwrap();
        let ch = cluster_chamber(&s).unwrap();
        for c in &ch.dual_generators {
            for g in &ch.gvectors {
                prop_assert!(c[0] * g[0] + c[1] * g[1] >= 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn quantum_mutation_is_involutive(s in seed(2), k in 0usize..3, coeff in any::<bool>()) {
        let k = k % s.rank();
        let mode = if coeff { Mode::XQuantumCoeff } else { Mode::XQuantum };
        let rows = apply_mutation_sequence(&s, &[k, k], mode, None).unwrap();
        let start = rows[0].vars.quantum().unwrap();
        let end = rows[2].vars.quantum().unwrap();
        for i in 0..s.rank() {
            prop_assert!(words_equal(&end[i], &start[i], K).unwrap(), "X{} after μ{}μ{}", i + 1, k + 1, k + 1);
        }
    }

    #[test]
    fn quantum_mutation_commutes_with_star(s in seed(2), k in 0usize..3, coeff in any::<bool>()) {
        let k = k % s.rank();
        for w in quantum_x_images(&s, k, coeff).unwrap() {
            prop_assert!(words_equal(&w.star(), &w, K).unwrap(), "{}", w);
        }
    }

    #[test]
    fn sharp_after_prime_is_mutation(s in seed(2), k in 0usize..3, coeff in any::<bool>()) {
        let k = k % s.rank();
        let direct = quantum_x_images(&s, k, coeff).unwrap();
        let sharp = mu_sharp_images(&s, k, coeff).unwrap();
        let prime = mu_prime_images(&s, k, coeff).unwrap();
        for i in 0..s.rank() {
            let composed = prime[i].substitute(&sharp).unwrap();
            prop_assert!(words_equal(&composed, &direct[i], K).unwrap());
        }
    }

    #[test]
    fn specialization_square(s in seed(1), p in path(3, 2)) {
        let n = s.rank();
        let p: Vec<usize> = p.into_iter().map(|k| k % n).collect();
        let quantum = apply_mutation_sequence(&s, &p, Mode::XQuantumCoeff, None).unwrap();
        let family = apply_mutation_sequence(&s, &p, Mode::XFamily, None).unwrap();
        let plain = apply_mutation_sequence(&s, &p, Mode::XQuantum, None).unwrap();
        let classical = apply_mutation_sequence(&s, &p, Mode::XClassical, None).unwrap();
        let last = p.len();
        for i in 0..n {
            let q = &quantum[last].vars.quantum().unwrap()[i];
            let f = &family[last].vars.commutative().unwrap()[i];
            let c = &classical[last].vars.commutative().unwrap()[i];
            prop_assert_eq!(&q.to_commutative().unwrap(), f);
            prop_assert_eq!(&f.at_t_one(), c);
            prop_assert_eq!(&q.at_t_one().to_commutative().unwrap(), c);
            prop_assert!(words_equal(&q.at_t_one(), &plain[last].vars.quantum().unwrap()[i], K).unwrap());
        }
    }

    #[test]
    fn pstar_respects_products_and_star(fd in rank2_fixed(), n1 in exponent(2, 3), n2 in exponent(2, 3)) {
        let s = Seed::initial(fd);
        let lam = synthesize_lambda(&s).unwrap();
        let alg = s.x_lattice();
        let x1 = FactoredWord::monomial(&alg, QScalar::one(), n1.clone());
        let x2 = FactoredWord::monomial(&alg, QScalar::one(), n2.clone());
        let prod = pstar_hom(&x1.mul(&x2), &s, &lam).unwrap();
        let images = pstar_hom(&x1, &s, &lam).unwrap().mul(&pstar_hom(&x2, &s, &lam).unwrap());
        prop_assert!(words_equal(&prod, &images, 4).unwrap());
        let mixed = x1.mul(&x2).scale(&QScalar::q_int(1));
        let a = pstar_hom(&mixed, &s, &lam).unwrap();
        prop_assert!(words_equal(&a.star(), &pstar_hom(&mixed.star(), &s, &lam).unwrap(), 4).unwrap());
    }

    #[test]
    fn pstar_intertwines_mutation(fd in rank2_fixed(), p in path(2, 1), k in 0usize..2, coeff in any::<bool>()) {
        let s = Seed::initial(fd);
        let lam0 = synthesize_lambda(&s).unwrap();
        let mut lam = lam0;
        let mut cur = s.clone();
        for &j in &p {
            lam = qca_core::mutation::mutate_lambda(&lam, &cur, j).unwrap();
            cur = cur.mutate(j).unwrap();
        }
        for v in check_intertwining(&cur, &lam, k, 8, coeff).unwrap() {
            prop_assert!(v.holds, "k={} i={}: {} vs {}", v.k, v.i, v.lhs, v.rhs);
        }
    }
}

#[test]
fn intertwining_on_fixtures() {
    let s = a23();
    let lam = synthesize_lambda(&s).unwrap();
    let r3 = rank3_frozen();
    let l3 = rank3_frozen_lambda();
    for (seed, lam, ks) in [(&s, &lam, vec![0, 1]), (&r3, &l3, vec![0, 1])] {
        for k in ks {
            for coeff in [true, false] {
                for v in check_intertwining(seed, lam, k, 8, coeff).unwrap() {
                    assert!(v.holds, "k={} i={}: {} vs {}", v.k, v.i, v.lhs, v.rhs);
                }
            }
        }
    }
}
