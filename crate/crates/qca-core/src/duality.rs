//! p* lattice maps, compatible pairs and the quantum p* homomorphism.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::mutation::{
    a_lattice, invert, mutate_lambda, quantum_a_images, quantum_x_images, rank_of, words_equal, FactoredWord,
};
use crate::seeds::Seed;
use crate::{Error, Rational, Result};

/// Rows are p*(e_{i;s}) in the dual basis f_{j;s}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PStarMap {
    matrix: Vec<Vec<Rational>>,
    unfrozen: Vec<usize>,
}

/// p*(n) = {n, ·}: p*(e_i) = Σ_j ε_ij f_j.
pub fn p1_star(seed: &Seed) -> PStarMap {
    PStarMap { matrix: seed.epsilon(), unfrozen: seed.fixed().unfrozen() }
}

impl PStarMap {
    pub fn from_matrix(matrix: Vec<Vec<Rational>>, unfrozen: Vec<usize>) -> Self {
        PStarMap { matrix, unfrozen }
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn image(&self, n: &[i64]) -> Vec<Rational> {
        let r = self.matrix.first().map(|r| r.len()).unwrap_or(0);
        let mut out = vec![Rational::zero(); r];
        for (i, ni) in n.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += self.matrix[i][j] * Rational::from_integer(*ni);
            }
        }
        out
    }

    pub fn integral_image(&self, n: &[i64]) -> Result<Vec<i64>> {
        self.image(n)
            .into_iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.to_integer())
                } else {
                    Err(Error::NotIntegral(format!("p*({n:?}) has a fractional coordinate {x}")))
                }
            })
            .collect()
    }

    /// Images of the unfrozen basis vectors, which must be independent.
    pub fn check_injective(&self) -> Result<()> {
        let rows: Vec<Vec<i64>> =
            self.unfrozen.iter().map(|i| self.integral_image(&unit(self.matrix.len(), *i))).collect::<Result<_>>()?;
        if rank_of(&rows) < rows.len() {
            return Err(Error::Injectivity(format!("images {rows:?} are dependent")));
        }
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Checks Σ_l ε_kl Λ_lj = D′_k δ_kj for unfrozen k and returns D′.
pub fn check_compatible_pair(lambda: &[Vec<Rational>], seed: &Seed) -> Result<Vec<i64>> {
    let n = seed.rank();
    if lambda.len() != n || lambda.iter().any(|r| r.len() != n) {
        return Err(Error::NoCompatiblePair("Λ has the wrong size".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if lambda[i][j] != -lambda[j][i] {
                return Err(Error::NoCompatiblePair(format!("Λ is not skew at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    let eps = seed.epsilon();
    let mut dprime = Vec::new();
    for k in seed.fixed().unfrozen() {
        for j in 0..n {
            let v: Rational = (0..n).map(|l| eps[k][l] * lambda[l][j]).sum();
            let ok = if j == k { v.is_positive() && v.is_integer() } else { v.is_zero() };
            if !ok {
                return Err(Error::NoCompatiblePair(format!(
                    "(B̃ᵀΛ)[{}][{}] = {} breaks the required shape",
                    k + 1,
                    j + 1,
                    v
                )));
            }
            if j == k {
                dprime.push(v.to_integer());
            }
        }
    }
    Ok(dprime)
}

/// Matrix form: B̃ᵀΛ = (D′ 0) with B̃ of size |I|×|I_uf|; also checks that
/// D′B is skew-symmetric.
pub fn check_compatible_matrices(lambda: &[Vec<i64>], btilde: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = lambda.len();
    let m = btilde.first().map(|r| r.len()).unwrap_or(0);
    if btilde.len() != n || m > n {
        return Err(Error::NoCompatiblePair("B̃ has the wrong shape".into()));
    }
    let mut d = Vec::new();
    for k in 0..m {
        for j in 0..n {
            let v: i64 = (0..n).map(|l| btilde[l][k] * lambda[l][j]).sum();
            let ok = if j == k { v > 0 } else { v == 0 };
            if !ok {
                return Err(Error::NoCompatiblePair(format!(
                    "(B̃ᵀΛ)[{}][{}] = {v} breaks the required shape",
                    k + 1,
                    j + 1
                )));
            }
            if j == k {
                d.push(v);
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            if d[i] * btilde[i][j] != -(d[j] * btilde[j][i]) {
                return Err(Error::NoCompatiblePair("D′B is not skew-symmetric".into()));
            }
        }
    }
    Ok(d)
}

/// Λ = ε⁻¹·diag(lcm/d_k) when every direction is unfrozen and ε is invertible.
pub fn synthesize_lambda(seed: &Seed) -> Result<Vec<Vec<Rational>>> {
    let n = seed.rank();
    if seed.fixed().unfrozen().len() != n {
        return Err(Error::NoCompatiblePair("frozen directions present; supply Λ explicitly".into()));
    }
    let inv = invert(&seed.epsilon()).ok_or_else(|| Error::NoCompatiblePair("ε is singular".into()))?;
    let l = seed.fixed().lcm_unfrozen();
    let d = seed.fixed().d();
    let lambda: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| inv[i][j] * Rational::from_integer(l / d[j])).collect()).collect();
    check_compatible_pair(&lambda, seed)?;
    Ok(lambda)
}

/// The exponent r with q ↦ v^r, from D′_k d_k = r for every unfrozen k.
pub fn q_scaling(lambda: &[Vec<Rational>], seed: &Seed) -> Result<i64> {
    let dp = check_compatible_pair(lambda, seed)?;
    let d = seed.fixed().d();
    let uf = seed.fixed().unfrozen();
    let r = dp.first().zip(uf.first()).map(|(a, k)| a * d[*k]).unwrap_or(1);
    for (a, k) in dp.iter().zip(&uf) {
        if a * d[*k] != r {
            return Err(Error::NoCompatiblePair(format!("D′d is not constant: D′_{} d_{} ≠ {r}", k + 1, k + 1)));
        }
    }
    Ok(r)
}

/// X^n ↦ A^{p*(n)} with q ↦ v^r on coefficients.
pub fn pstar_hom(x: &FactoredWord, seed: &Seed, lambda: &[Vec<Rational>]) -> Result<FactoredWord> {
    let r = q_scaling(lambda, seed)?;
    let p = p1_star(seed);
    let alg = a_lattice(lambda)?;
    let n = seed.rank();
    let eh = seed.epsilon_hat();
    let mut images = Vec::new();
    for i in 0..n {
        let m = p.integral_image(&unit(n, i))?;
        images.push(FactoredWord::monomial(&alg, crate::scalars::QScalar::one(), m));
    }
    // homomorphism check on generators
    for i in 0..n {
        for j in 0..n {
            let lhs = alg.omega(&p.integral_image(&unit(n, i))?, &p.integral_image(&unit(n, j))?);
            if lhs != eh[i][j] * Rational::from_integer(r) {
                return Err(Error::NoCompatiblePair(format!(
                    "p* does not respect the forms on ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let scale = Rational::from_integer(r);
    x.substitute_with(&alg, &images, &|c| c.substitute_q_power(scale))
}

/// One verdict per generator X_{i;μ_k(s)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwiningVerdict {
    pub k: usize,
    pub i: usize,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

/// Compares p*∘μ^q with μ^q∘p* on the generators of μ_k(s), with principal
/// coefficients or with t = 1.
pub fn check_intertwining(
    seed: &Seed,
    lambda: &[Vec<Rational>],
    k: usize,
    order: usize,
    with_coefficients: bool,
) -> Result<Vec<IntertwiningVerdict>> {
    let n = seed.rank();
    let next = seed.mutate(k)?;
    let lambda_next = mutate_lambda(lambda, seed, k)?;
    let x_images = quantum_x_images(seed, k, with_coefficients)?;
    let a_images = quantum_a_images(seed, lambda, k, with_coefficients)?;
    let a_alg = a_lattice(lambda)?;
    let mut out = Vec::new();
    for i in 0..n {
        let lhs = pstar_hom(&x_images[i], seed, lambda)?;
        let xi_next = FactoredWord::generator(&next.x_lattice(), i);
        let in_next = pstar_hom(&xi_next, &next, &lambda_next)?;
        let rhs = in_next.substitute_with(&a_alg, &a_images, &|c| c.clone())?;
        let holds = words_equal(&lhs, &rhs, order)?;
        out.push(IntertwiningVerdict { k, i, holds, lhs: lhs.render(), rhs: rhs.render() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::FixedData;

    fn a23() -> Seed {
        Seed::initial(FixedData::rank2(Rational::from_integer(-1), [2, 3]).unwrap())
    }

    #[test]
    fn pstar_of_a23() {
        let p = p1_star(&a23());
        assert_eq!(p.integral_image(&[1, 0]).unwrap(), vec![0, -3]);
        assert_eq!(p.integral_image(&[0, 1]).unwrap(), vec![2, 0]);
        assert!(p.check_injective().is_ok());
    }

    #[test]
    fn compatible_pair_of_a23() {
        assert_eq!(
            check_compatible_matrices(&[vec![0, 1], vec![-1, 0]], &[vec![0, 2], vec![-3, 0]]).unwrap(),
            vec![3, 2]
        );
        assert!(check_compatible_matrices(&[vec![0, 0], vec![0, 0]], &[vec![0, 2], vec![-3, 0]]).is_err());
        let lam = synthesize_lambda(&a23()).unwrap();
        let one = Rational::from_integer(1);
        assert_eq!(lam, vec![vec![Rational::zero(), one], vec![-one, Rational::zero()]]);
        assert_eq!(q_scaling(&lam, &a23()).unwrap(), 6);
    }

    #[test]
    fn intertwining_a23() {
        let s = a23();
        let lam = synthesize_lambda(&s).unwrap();
        for k in 0..2 {
            for v in check_intertwining(&s, &lam, k, 8, true).unwrap() {
                assert!(v.holds, "k={} i={}: {} vs {}", v.k, v.i, v.lhs, v.rhs);
            }
        }
    }
}
