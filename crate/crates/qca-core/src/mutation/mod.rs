//! Mutation formulas for cluster variables, classical and quantum.
//!
//! Every `mutate_*` function takes the current images of the seed-s
//! generators (expressed in some fixed chart) and returns the images of the
//! seed-μ_k(s) generators in the same chart.

mod series;
mod word;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

pub use series::{expand_word, words_equal, words_equal_in, Cone, Series};
pub(crate) use series::{invert, rank_of};
pub use word::{Atom, FactoredWord};

use crate::qtorus::SkewLattice;
use crate::ratfun::CommutativeRational;
use crate::scalars::{QScalar, TScalar};
use crate::seeds::Seed;
use crate::{Error, Rational, Result};

fn check_k(seed: &Seed, k: usize) -> Result<()> {
    if k < seed.rank() && seed.fixed().is_unfrozen(k) {
        Ok(())
    } else {
        Err(Error::FrozenDirection(k))
    }
}

fn sgn(x: i64) -> i64 {
    x.signum()
}

fn scaled(v: &[i64], s: i64) -> Vec<i64> {
    v.iter().map(|x| x * s).collect()
}

fn positive_part(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| (*x).max(0)).collect()
}

/// t^v for an integer vector v, negative entries allowed.
pub fn t_power(v: &[i64]) -> QScalar {
    let neg: Vec<i64> = v.iter().map(|x| -x).collect();
    QScalar::t_pos(v).div(&QScalar::t_pos(&neg)).expect("t-monomials are nonzero")
}

fn t_rational(nx: usize, v: &[i64]) -> CommutativeRational {
    let pos: Vec<u32> = v.iter().map(|x| (*x).max(0) as u32).collect();
    let neg: Vec<u32> = v.iter().map(|x| (-*x).max(0) as u32).collect();
    CommutativeRational::from_tfraction(nx, &TScalar::monomial(&pos, 1), &TScalar::monomial(&neg, 1))
        .expect("t-monomials are nonzero")
}

fn substitute_all(formulas: &[CommutativeRational], vars: &[CommutativeRational]) -> Result<Vec<CommutativeRational>> {
    formulas.iter().map(|f| f.substitute(vars)).collect()
}

fn family_images(seed: &Seed, k: usize, coefficients: bool) -> Result<Vec<CommutativeRational>> {
    check_k(seed, k)?;
    let n = seed.rank();
    let c = if coefficients { seed.cvector(k) } else { vec![0; n] };
    let xk = CommutativeRational::x(n, k);
    (0..n)
        .map(|i| {
            let xi = CommutativeRational::x(n, i);
            if i == k {
                return xk.inv();
            }
            let e = seed.eps(i, k);
            if e == 0 {
                return Ok(xi);
            }
            let s = sgn(e);
            let base = t_rational(n, &positive_part(&scaled(&c, s)))
                .add(&t_rational(n, &positive_part(&scaled(&c, -s))).mul(&xk.pow(-s)?));
            Ok(xi.mul(&base.pow(-e)?))
        })
        .collect()
}

/// X_k ↦ X_k⁻¹, X_i ↦ X_i(1 + X_k^{-sgn ε_ik})^{-ε_ik}.
pub fn mutate_x_classical(vars: &[CommutativeRational], seed: &Seed, k: usize) -> Result<Vec<CommutativeRational>> {
    substitute_all(&family_images(seed, k, false)?, vars)
}

/// X_i ↦ X_i(t^{[σc_k]_+} + t^{[-σc_k]_+} X_k^{-σ})^{-ε_ik}, σ = sgn ε_ik.
pub fn mutate_x_family(vars: &[CommutativeRational], seed: &Seed, k: usize) -> Result<Vec<CommutativeRational>> {
    substitute_all(&family_images(seed, k, true)?, vars)
}

fn a_images(seed: &Seed, k: usize, coefficients: bool) -> Result<Vec<CommutativeRational>> {
    check_k(seed, k)?;
    let n = seed.rank();
    let c = if coefficients { seed.cvector(k) } else { vec![0; n] };
    let mut plus = vec![0; n];
    let mut minus = vec![0; n];
    for j in 0..n {
        let e = seed.eps(k, j);
        if e > 0 {
            plus[j] = e;
        } else {
            minus[j] = -e;
        }
    }
    let ak_inv = CommutativeRational::x(n, k).inv()?;
    let sum = t_rational(n, &positive_part(&c))
        .mul(&CommutativeRational::x_monomial(&plus))
        .add(&t_rational(n, &positive_part(&scaled(&c, -1))).mul(&CommutativeRational::x_monomial(&minus)));
    Ok((0..n).map(|i| if i == k { ak_inv.mul(&sum) } else { CommutativeRational::x(n, i) }).collect())
}

/// A_k ↦ A_k⁻¹(t^{[c_k]_+}∏_{ε_kj>0}A_j^{ε_kj} + t^{[-c_k]_+}∏_{ε_kj<0}A_j^{-ε_kj}),
/// without t when `coefficients` is false.
pub fn mutate_a_classical(
    vars: &[CommutativeRational],
    seed: &Seed,
    k: usize,
    coefficients: bool,
) -> Result<Vec<CommutativeRational>> {
    substitute_all(&a_images(seed, k, coefficients)?, vars)
}

/// Images of the μ_k(s) generators as words in the seed-s quantum torus.
pub fn quantum_x_images(seed: &Seed, k: usize, with_coefficients: bool) -> Result<Vec<FactoredWord>> {
    check_k(seed, k)?;
    let n = seed.rank();
    let alg = seed.x_lattice();
    let c = if with_coefficients { seed.cvector(k) } else { vec![0; n] };
    let dk = seed.fixed().d()[k];
    Ok((0..n)
        .map(|i| {
            let xi = FactoredWord::generator(&alg, i);
            if i == k {
                return xi.inv();
            }
            let e = seed.eps(i, k);
            let s = sgn(e);
            let mut w = xi;
            for l in 1..=e.abs() {
                w = w.mul(&FactoredWord::binomial(
                    &alg,
                    QScalar::t_pos(&scaled(&c, s)),
                    QScalar::t_pos(&scaled(&c, -s)).mul(&QScalar::q_pow(Rational::new(2 * l - 1, dk))),
                    scaled(&alg.unit(k), -s),
                    -s,
                ));
            }
            w
        })
        .collect())
}

/// Quantum 𝒳-mutation, with principal coefficients when requested.
pub fn mutate_x_quantum(
    vars: &[FactoredWord],
    seed: &Seed,
    k: usize,
    with_coefficients: bool,
) -> Result<Vec<FactoredWord>> {
    let images = quantum_x_images(seed, k, with_coefficients)?;
    compose(&images, vars)
}

fn compose(images: &[FactoredWord], vars: &[FactoredWord]) -> Result<Vec<FactoredWord>> {
    let target = vars.first().map(|w| w.algebra().clone()).ok_or_else(|| Error::InvalidData("no variables".into()))?;
    images.iter().map(|w| w.substitute_with(&target, vars, &|c| c.clone())).collect()
}

/// Images of the μ_k(s) generators under the monomial map μ′.
pub fn mu_prime_images(seed: &Seed, k: usize, with_coefficients: bool) -> Result<Vec<FactoredWord>> {
    check_k(seed, k)?;
    let n = seed.rank();
    let alg = seed.x_lattice();
    let c = if with_coefficients { seed.cvector(k) } else { vec![0; n] };
    let neg_c_pos: Vec<i64> = c.iter().map(|x| (-*x).max(0)).collect();
    let eh = seed.epsilon_hat();
    Ok((0..n)
        .map(|i| {
            if i == k {
                return FactoredWord::generator(&alg, k).inv();
            }
            let e = seed.eps(i, k);
            let ep = e.max(0);
            let t = t_power(&scaled(&neg_c_pos, -e));
            let q = QScalar::q_pow(-eh[i][k] * Rational::from_integer(ep));
            FactoredWord::scalar(&alg, t.mul(&q))
                .mul(&FactoredWord::generator(&alg, i))
                .mul(&FactoredWord::generator(&alg, k).pow(ep))
        })
        .collect())
}

/// Images of the seed-s generators under the automorphism μ♯ (conjugation
/// by the quantum dilogarithm of t^{c_k} X_k).
pub fn mu_sharp_images(seed: &Seed, k: usize, with_coefficients: bool) -> Result<Vec<FactoredWord>> {
    check_k(seed, k)?;
    let n = seed.rank();
    let alg = seed.x_lattice();
    let c = if with_coefficients { seed.cvector(k) } else { vec![0; n] };
    let tau = t_power(&c);
    let dk = seed.fixed().d()[k];
    Ok((0..n)
        .map(|i| {
            let xi = FactoredWord::generator(&alg, i);
            if i == k {
                return xi;
            }
            let e = seed.eps(i, k);
            let mut w = xi;
            for l in 1..=e.abs() {
                let (qe, p) = if e <= 0 { (2 * l - 1, 1) } else { (1 - 2 * l, -1) };
                w = w.mul(&FactoredWord::binomial(
                    &alg,
                    QScalar::one(),
                    tau.mul(&QScalar::q_pow(Rational::new(qe, dk))),
                    alg.unit(k),
                    p,
                ));
            }
            w
        })
        .collect())
}

/// μ′ applied to a word in the μ_k(s) torus, giving a word in the s torus.
pub fn mu_prime(x: &FactoredWord, seed: &Seed, k: usize, with_coefficients: bool) -> Result<FactoredWord> {
    let images = mu_prime_images(seed, k, with_coefficients)?;
    x.substitute_with(&seed.x_lattice(), &images, &|c| c.clone())
}

/// μ♯ applied to a word in the s torus.
pub fn mu_sharp(x: &FactoredWord, seed: &Seed, k: usize, with_coefficients: bool) -> Result<FactoredWord> {
    let images = mu_sharp_images(seed, k, with_coefficients)?;
    x.substitute(&images)
}

/// The quantum 𝒜-torus of a chart: A^m A^{m'} = v^{-Λ(m,m')} A^{m+m'} with
/// v = q_BZ^{-1/2}.
pub fn a_lattice(lambda: &[Vec<Rational>]) -> Result<Arc<SkewLattice>> {
    let neg = lambda.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let labels = (1..=lambda.len()).map(|i| format!("A{i}")).collect();
    SkewLattice::new(neg, labels, "v")
}

/// Λ for the seed μ_k(s), given Λ for s.
pub fn mutate_lambda(lambda: &[Vec<Rational>], seed: &Seed, k: usize) -> Result<Vec<Vec<Rational>>> {
    check_k(seed, k)?;
    let n = seed.rank();
    let mut m = vec![0i64; n];
    m[k] = -1;
    for j in 0..n {
        m[j] += seed.eps(k, j).max(0);
    }
    let mut out = lambda.to_vec();
    for j in 0..n {
        if j == k {
            continue;
        }
        let v: Rational = (0..n).map(|a| Rational::from_integer(m[a]) * lambda[a][j]).sum();
        out[k][j] = v;
        out[j][k] = -v;
    }
    out[k][k] = Rational::zero();
    Ok(out)
}

/// Images of the μ_k(s) quantum 𝒜-variables in the seed-s 𝒜-torus.
pub fn quantum_a_images(
    seed: &Seed,
    lambda: &[Vec<Rational>],
    k: usize,
    with_coefficients: bool,
) -> Result<Vec<FactoredWord>> {
    check_k(seed, k)?;
    crate::duality::check_compatible_pair(lambda, seed)?;
    let n = seed.rank();
    let alg = a_lattice(lambda)?;
    let c = if with_coefficients { seed.cvector(k) } else { vec![0; n] };
    let mut plus = vec![0i64; n];
    let mut minus = vec![0i64; n];
    plus[k] = -1;
    minus[k] = -1;
    for j in 0..n {
        let e = seed.eps(k, j);
        if e > 0 {
            plus[j] += e;
        } else {
            minus[j] -= e;
        }
    }
    let ak = FactoredWord::sum(
        &alg,
        vec![
            FactoredWord::monomial(&alg, QScalar::t_pos(&c), plus),
            FactoredWord::monomial(&alg, QScalar::t_pos(&scaled(&c, -1)), minus),
        ],
    );
    Ok((0..n).map(|i| if i == k { ak.clone() } else { FactoredWord::generator(&alg, i) }).collect())
}

/// Berenstein–Zelevinsky quantum 𝒜-mutation with principal coefficients.
pub fn mutate_a_quantum(
    vars: &[FactoredWord],
    seed: &Seed,
    lambda: &[Vec<Rational>],
    k: usize,
) -> Result<Vec<FactoredWord>> {
    compose(&quantum_a_images(seed, lambda, k, true)?, vars)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    XClassical,
    XFamily,
    XQuantum,
    XQuantumCoeff,
    AClassical,
    APrin,
    AQuantum,
}

impl Mode {
    pub const ALL: [Mode; 7] = [
        Mode::XClassical,
        Mode::XFamily,
        Mode::XQuantum,
        Mode::XQuantumCoeff,
        Mode::AClassical,
        Mode::APrin,
        Mode::AQuantum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::XClassical => "x-classical",
            Mode::XFamily => "x-family",
            Mode::XQuantum => "x-quantum",
            Mode::XQuantumCoeff => "x-quantum-coeff",
            Mode::AClassical => "a-classical",
            Mode::APrin => "a-prin",
            Mode::AQuantum => "a-quantum",
        }
    }

    pub fn is_quantum(self) -> bool {
        matches!(self, Mode::XQuantum | Mode::XQuantumCoeff | Mode::AQuantum)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL.iter().copied().find(|m| m.name() == s).ok_or_else(|| Error::Parse(format!("unknown mode {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vars {
    Commutative(Vec<CommutativeRational>),
    Quantum(Vec<FactoredWord>),
}

impl Vars {
    pub fn render(&self, labels: &[String]) -> Vec<String> {
        match self {
            Vars::Commutative(v) => v.iter().map(|x| x.render(labels)).collect(),
            Vars::Quantum(v) => v.iter().map(|x| x.render()).collect(),
        }
    }

    pub fn quantum(&self) -> Option<&[FactoredWord]> {
        match self {
            Vars::Quantum(v) => Some(v),
            _ => None,
        }
    }

    pub fn commutative(&self) -> Option<&[CommutativeRational]> {
        match self {
            Vars::Commutative(v) => Some(v),
            _ => None,
        }
    }
}

/// One step of a mutation sequence.
#[derive(Clone, Debug)]
pub struct Row {
    pub step: usize,
    pub direction: Option<usize>,
    pub seed: Seed,
    pub vars: Vars,
    pub labels: Vec<String>,
}

impl Row {
    pub fn rendered(&self) -> Vec<String> {
        self.vars.render(&self.labels)
    }
}

/// Runs a mutation sequence from `seed`, recording the variables of each
/// seed in terms of the initial chart. `lambda` is required for a-quantum.
pub fn apply_mutation_sequence(
    seed: &Seed,
    sequence: &[usize],
    mode: Mode,
    lambda: Option<&[Vec<Rational>]>,
) -> Result<Vec<Row>> {
    let n = seed.rank();
    let a_side = matches!(mode, Mode::AClassical | Mode::APrin | Mode::AQuantum);
    let labels: Vec<String> =
        if a_side { (1..=n).map(|i| format!("A{i}")).collect() } else { seed.fixed().labels().to_vec() };
    let mut lam: Option<Vec<Vec<Rational>>> = None;
    let mut vars = match mode {
        Mode::XQuantum | Mode::XQuantumCoeff => {
            let alg = seed.x_lattice();
            Vars::Quantum((0..n).map(|i| FactoredWord::generator(&alg, i)).collect())
        }
        Mode::AQuantum => {
            let l = lambda
                .map(|l| l.to_vec())
                .ok_or_else(|| Error::NoCompatiblePair("a-quantum mode needs a compatible Λ".into()))?;
            crate::duality::check_compatible_pair(&l, seed)?;
            let alg = a_lattice(&l)?;
            lam = Some(l);
            Vars::Quantum((0..n).map(|i| FactoredWord::generator(&alg, i)).collect())
        }
        _ => Vars::Commutative((0..n).map(|i| CommutativeRational::x(n, i)).collect()),
    };
    let mut current = seed.clone();
    let mut rows =
        vec![Row { step: 0, direction: None, seed: current.clone(), vars: vars.clone(), labels: labels.clone() }];
    for (step, &k) in sequence.iter().enumerate() {
        vars = match (&vars, mode) {
            (Vars::Commutative(v), Mode::XClassical) => Vars::Commutative(mutate_x_classical(v, &current, k)?),
            (Vars::Commutative(v), Mode::XFamily) => Vars::Commutative(mutate_x_family(v, &current, k)?),
            (Vars::Commutative(v), Mode::AClassical) => Vars::Commutative(mutate_a_classical(v, &current, k, false)?),
            (Vars::Commutative(v), Mode::APrin) => Vars::Commutative(mutate_a_classical(v, &current, k, true)?),
            (Vars::Quantum(v), Mode::XQuantum) => Vars::Quantum(mutate_x_quantum(v, &current, k, false)?),
            (Vars::Quantum(v), Mode::XQuantumCoeff) => Vars::Quantum(mutate_x_quantum(v, &current, k, true)?),
            (Vars::Quantum(v), Mode::AQuantum) => {
                let l = lam.take().expect("Λ is set in a-quantum mode");
                let out = mutate_a_quantum(v, &current, &l, k)?;
                lam = Some(mutate_lambda(&l, &current, k)?);
                Vars::Quantum(out)
            }
            _ => return Err(Error::Internal("mode and variable kind disagree".into())),
        };
        current = current.mutate(k)?;
        rows.push(Row {
            step: step + 1,
            direction: Some(k),
            seed: current.clone(),
            vars: vars.clone(),
            labels: labels.clone(),
        });
    }
    Ok(rows)
}
