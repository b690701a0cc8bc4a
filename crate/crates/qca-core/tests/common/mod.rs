#![allow(dead_code)]

use proptest::prelude::*;
use qca_core::qtorus::{QTorusElement, SkewLattice};
use qca_core::scalars::QScalar;
use qca_core::seeds::{FixedData, Seed};
use qca_core::Rational;
use std::sync::Arc;

pub fn rat(x: i64) -> Rational {
    Rational::from_integer(x)
}

/// Σ c_a q^{a/2} t^{e} with small support.
pub fn qscalar() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-4i64..=4, -3i128..=3, 0u32..=1), 1..4).prop_map(|terms| {
        terms.into_iter().fold(QScalar::zero(), |acc, (a, c, t)| {
            acc.add(&QScalar::q_term(Rational::new(a, 2), c).mul(&QScalar::t_monomial(&[t])))
        })
    })
}

/// A nonzero scalar: one term plus a constant shift so the value is invertible.
pub fn nonzero_qscalar() -> impl Strategy<Value = QScalar> {
    (qscalar(), 1i128..=3).prop_map(|(s, c)| {
        let shifted = s.add(&QScalar::q_term(rat(7), c));
        if shifted.is_zero() {
            QScalar::one()
        } else {
            shifted
        }
    })
}

pub fn exponent(rank: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, rank)
}

pub fn element(alg: Arc<SkewLattice>, terms: usize) -> impl Strategy<Value = QTorusElement> {
    let r = alg.rank();
    prop::collection::vec((exponent(r, 2), qscalar()), 1..=terms).prop_map(move |ts| {
        ts.into_iter()
            .fold(QTorusElement::zero(&alg), |acc, (n, c)| acc.add(&QTorusElement::monomial(&alg, n, c)).unwrap())
    })
}

/// Rank-2 data with d_i ∈ {1,2,3} and ε_12 ≠ 0.
pub fn rank2_fixed() -> impl Strategy<Value = FixedData> {
    (1i64..=3, 1i64..=3, prop::sample::select(vec![-2i64, -1, 1, 2])).prop_filter_map("gcd(d) = 1", |(d1, d2, m)| {
        let g = num_integer::gcd(d1, d2);
        FixedData::rank2(Rational::new(m, g), [d1, d2]).ok()
    })
}

/// Rank-3 skew-symmetric data (d = 1) with entries in [-2, 2], all unfrozen.
pub fn rank3_fixed() -> impl Strategy<Value = FixedData> {
    (-2i64..=2, -2i64..=2, -2i64..=2).prop_map(|(a, b, c)| {
        let f = vec![vec![rat(0), rat(a), rat(b)], vec![rat(-a), rat(0), rat(c)], vec![rat(-b), rat(-c), rat(0)]];
        FixedData::new(f, vec![1, 1, 1], &[0, 1, 2]).unwrap()
    })
}

/// A seed reached by a mutation sequence of length ≤ depth from random data of rank 2 or 3.
pub fn seed(depth: usize) -> impl Strategy<Value = Seed> {
    let fixed = prop_oneof![rank2_fixed(), rank3_fixed()];
    (fixed, prop::collection::vec(0usize..3, 0..=depth)).prop_map(|(fd, path)| {
        let n = fd.rank();
        let path: Vec<usize> = path.into_iter().map(|k| k % n).collect();
        Seed::initial(fd).mutate_sequence(&path).unwrap()
    })
}

/// The 𝒜(2,3) seed: {e1,e2} = -1, d = (2,3).
pub fn a23() -> Seed {
    Seed::initial(FixedData::rank2(rat(-1), [2, 3]).unwrap())
}

/// Rank 3 with e3 frozen and ε = ((0,1,1),(-1,0,-1),(-1,1,0)); Λ below is compatible with D′ = (1,1).
pub fn rank3_frozen() -> Seed {
    let f = vec![vec![rat(0), rat(1), rat(1)], vec![rat(-1), rat(0), rat(-1)], vec![rat(-1), rat(1), rat(0)]];
    Seed::initial(FixedData::new(f, vec![1, 1, 1], &[0, 1]).unwrap())
}

pub fn rank3_frozen_lambda() -> Vec<Vec<Rational>> {
    vec![vec![rat(0), rat(-1), rat(0)], vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(0), rat(0)]]
}
