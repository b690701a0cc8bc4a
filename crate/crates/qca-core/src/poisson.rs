//! Semi-classical limits of quantum commutators and the bivector bracket on
//! commutative charts.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::mutation::mutate_x_family;
use crate::qtorus::QTorusElement;
use crate::ratfun::CommutativeRational;
use crate::seeds::Seed;
use crate::{Error, Rational, Result};

/// The q = 1 image of a quantum torus element; coefficients must be regular at q = 1.
pub fn classical_limit(e: &QTorusElement) -> Result<CommutativeRational> {
    let nx = e.algebra().rank();
    let mut out = CommutativeRational::zero(nx);
    for (n, c) in e.terms() {
        let (num, den) = c.at_q_one_parts()?;
        let coeff = CommutativeRational::from_tfraction(nx, &num, &den)?;
        out = out.add(&coeff.mul(&CommutativeRational::x_monomial(n)));
    }
    Ok(out)
}

/// lim_{q→1} (ab − ba)/(q − 1).
pub fn semiclassical_bracket(a: &QTorusElement, b: &QTorusElement) -> Result<CommutativeRational> {
    let comm = a.mul(b)?.sub(&b.mul(a)?)?;
    let divided = comm.terms().iter().try_fold(QTorusElement::zero(a.algebra()), |acc, (n, c)| {
        let t = QTorusElement::monomial(a.algebra(), n.clone(), c.divide_exact_qminus1()?);
        acc.add(&t)
    })?;
    classical_limit(&divided)
}

fn rational_scalar(nx: usize, r: Rational) -> Result<CommutativeRational> {
    CommutativeRational::from_ratio(nx, *r.numer() as i128, *r.denom() as i128)
}

/// Σ_{i,j} {e_i,e_j} X_i X_j (∂_i f ∂_j g − ∂_j f ∂_i g) with the form of `seed`.
pub fn poisson_bracket(f: &CommutativeRational, g: &CommutativeRational, seed: &Seed) -> Result<CommutativeRational> {
    let n = seed.rank();
    if f.nvars() != n || g.nvars() != n {
        return Err(Error::InvalidData("bracket arguments live on a chart of another rank".into()));
    }
    let form = seed.epsilon_hat();
    let df: Vec<_> = (0..n).map(|i| f.derivative(i)).collect();
    let dg: Vec<_> = (0..n).map(|i| g.derivative(i)).collect();
    let mut out = CommutativeRational::zero(n);
    for i in 0..n {
        for j in 0..n {
            if form[i][j].is_zero() {
                continue;
            }
            let wedge = df[i].mul(&dg[j]).sub(&df[j].mul(&dg[i]));
            if wedge.is_zero() {
                continue;
            }
            let xij = CommutativeRational::x(n, i).mul(&CommutativeRational::x(n, j));
            out = out.add(&rational_scalar(n, form[i][j])?.mul(&xij).mul(&wedge));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    /// Labels of the pair as given (generators are "X1'", "X2'", ...).
    pub names: (String, String),
    pub holds: bool,
    /// μ*{f, g} computed on the mutated chart and pulled back.
    pub pulled_back: String,
    /// {μ*f, μ*g} on the original chart.
    pub bracket_of_pullbacks: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonReport {
    pub k: usize,
    pub pairs: Vec<PairCheck>,
}

impl PoissonReport {
    pub fn all_hold(&self) -> bool {
        self.pairs.iter().all(|p| p.holds)
    }
}

/// Checks μ*{f,g}_{μ_k(s)} = {μ*f, μ*g}_s for the family mutation, on every
/// ordered generator pair i < j of μ_k(s) and on `extra` (functions of the
/// μ_k(s) chart).
pub fn check_poisson_map(
    seed: &Seed,
    k: usize,
    extra: &[(CommutativeRational, CommutativeRational)],
) -> Result<PoissonReport> {
    let n = seed.rank();
    let next = seed.mutate(k)?;
    let gens: Vec<_> = (0..n).map(|i| CommutativeRational::x(n, i)).collect();
    let pull = mutate_x_family(&gens, seed, k)?;
    let labels: Vec<String> = seed.fixed().labels().iter().map(|l| alloc::format!("{l}'")).collect();
    let mut cases: Vec<((String, String), CommutativeRational, CommutativeRational)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            cases.push(((labels[i].clone(), labels[j].clone()), gens[i].clone(), gens[j].clone()));
        }
    }
    for (f, g) in extra {
        cases.push(((f.render(&labels), g.render(&labels)), f.clone(), g.clone()));
    }
    let mut pairs = Vec::new();
    for (names, f, g) in cases {
        let lhs = poisson_bracket(&f, &g, &next)?.substitute(&pull)?;
        let rhs = poisson_bracket(&f.substitute(&pull)?, &g.substitute(&pull)?, seed)?;
        let plain: Vec<String> = seed.fixed().labels().to_vec();
        pairs.push(PairCheck {
            names,
            holds: lhs == rhs,
            pulled_back: lhs.render(&plain),
            bracket_of_pullbacks: rhs.render(&plain),
        });
    }
    Ok(PoissonReport { k, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::SkewLattice;
    use crate::scalars::QScalar;
    use crate::seeds::FixedData;
    use alloc::vec;

    fn rat(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    fn a2fig() -> Seed {
        Seed::initial(FixedData::rank2(rat(1), [1, 1]).unwrap())
    }

    fn x(n: usize, i: usize) -> CommutativeRational {
        CommutativeRational::x(n, i)
    }

    #[test]
    fn monomial_bracket_is_twice_the_form() {
        let alg = a2fig().x_lattice();
        let b = semiclassical_bracket(&QTorusElement::generator(&alg, 0), &QTorusElement::generator(&alg, 1)).unwrap();
        assert_eq!(b, x(2, 0).mul(&x(2, 1)).scale(2));
        let g = QTorusElement::generator(&alg, 0);
        assert!(semiclassical_bracket(&g, &g).unwrap().is_zero());
    }

    #[test]
    fn fractional_form_survives_the_limit() {
        let alg = SkewLattice::new(
            vec![vec![rat(0), Rational::new(1, 3)], vec![Rational::new(-1, 3), rat(0)]],
            vec!["X1".into(), "X2".into()],
            "q",
        )
        .unwrap();
        let b = semiclassical_bracket(&QTorusElement::generator(&alg, 0), &QTorusElement::generator(&alg, 1)).unwrap();
        let want = CommutativeRational::from_ratio(2, 2, 3).unwrap().mul(&x(2, 0).mul(&x(2, 1)));
        assert_eq!(b, want);
    }

    #[test]
    fn bivector_on_coordinates() {
        let s = a2fig();
        assert_eq!(poisson_bracket(&x(2, 0), &x(2, 1), &s).unwrap(), x(2, 0).mul(&x(2, 1)).scale(2));
        let f = x(2, 0).add(&CommutativeRational::one(2)).div(&x(2, 1)).unwrap();
        assert!(poisson_bracket(&f, &CommutativeRational::one(2), &s).unwrap().is_zero());
        assert!(poisson_bracket(&f, &f, &s).unwrap().is_zero());
    }

    #[test]
    fn quotient_rule() {
        let s = a2fig();
        let f = x(2, 0).mul(&x(2, 1)).add(&x(2, 0));
        let g = x(2, 1).add(&CommutativeRational::one(2));
        let lhs = poisson_bracket(&f, &g.inv().unwrap(), &s).unwrap();
        let rhs = poisson_bracket(&f, &g, &s).unwrap().div(&g.mul(&g)).unwrap().neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn routes_agree_on_a_product() {
        let s = a2fig();
        let alg = s.x_lattice();
        let one = QTorusElement::one(&alg);
        let a = QTorusElement::generator(&alg, 0)
            .mul(&one.add(&QTorusElement::monomial(&alg, vec![0, 1], QScalar::q_int(1))).unwrap())
            .unwrap();
        let b = QTorusElement::monomial(&alg, vec![-1, 2], QScalar::one()).add(&one).unwrap();
        let quantum = semiclassical_bracket(&a, &b).unwrap();
        let classical = poisson_bracket(&classical_limit(&a).unwrap(), &classical_limit(&b).unwrap(), &s).unwrap();
        assert_eq!(quantum, classical);
    }

    #[test]
    fn a2_mutation_is_poisson() {
        let s = a2fig();
        let r = check_poisson_map(&s, 1, &[]).unwrap();
        assert_eq!(r.pairs.len(), 1);
        assert!(r.all_hold(), "{:?}", r);
    }

    #[test]
    fn disconnected_pair_brackets_to_zero() {
        // ε with e3 orthogonal to e1 and e2 ⟂ e3
        let fd = FixedData::new(
            vec![vec![rat(0), rat(1), rat(0)], vec![rat(-1), rat(0), rat(0)], vec![rat(0), rat(0), rat(0)]],
            vec![1, 1, 1],
            &[0, 1, 2],
        )
        .unwrap();
        let s = Seed::initial(fd);
        let r = check_poisson_map(&s, 0, &[]).unwrap();
        assert!(r.all_hold());
        assert!(poisson_bracket(&x(3, 0), &x(3, 2), &s).unwrap().is_zero());
        let p = &r.pairs.iter().find(|p| p.names.0 == "X1'" && p.names.1 == "X3'").unwrap();
        assert_eq!(p.pulled_back, "0");
    }
}
