//! Fixed data, seeds, seed mutation and c-vectors.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::qtorus::SkewLattice;
use crate::{Error, Rational, Result};

/// The skew form {e_i, e_j}, the multipliers d_i and the unfrozen directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedData {
    skew: Vec<Vec<Rational>>,
    d: Vec<i64>,
    unfrozen: Vec<bool>,
    labels: Vec<String>,
}

impl FixedData {
    pub fn new(skew: Vec<Vec<Rational>>, d: Vec<i64>, unfrozen: &[usize]) -> Result<Self> {
        let n = skew.len();
        if d.len() != n || skew.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidData("skew form and multipliers have inconsistent sizes".into()));
        }
        if d.iter().any(|x| *x <= 0) {
            return Err(Error::InvalidData("multipliers d_i must be positive".into()));
        }
        let mut mask = vec![false; n];
        for &i in unfrozen {
            if i >= n {
                return Err(Error::InvalidData(format!("unfrozen index {} out of range", i + 1)));
            }
            mask[i] = true;
        }
        for i in 0..n {
            for j in 0..n {
                if skew[i][j] != -skew[j][i] {
                    return Err(Error::InvalidData(format!("form not skew at ({}, {})", i + 1, j + 1)));
                }
                if (mask[i] || mask[j]) && !(skew[i][j] * Rational::from_integer(d[j])).is_integer() {
                    return Err(Error::Integrality { i, j });
                }
            }
        }
        if d.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
            return Err(Error::GcdNotOne);
        }
        let labels = (1..=n).map(|i| format!("X{i}")).collect();
        Ok(FixedData { skew, d, unfrozen: mask, labels })
    }

    /// Rank-2 data with {e_1,e_2} = b and both directions unfrozen.
    pub fn rank2(b: Rational, d: [i64; 2]) -> Result<Self> {
        Self::new(vec![vec![Rational::zero(), b], vec![-b, Rational::zero()]], d.to_vec(), &[0, 1])
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.rank() {
            self.labels = labels;
        }
        self
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn skew(&self) -> &[Vec<Rational>] {
        &self.skew
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_unfrozen(&self, i: usize) -> bool {
        self.unfrozen.get(i).copied().unwrap_or(false)
    }

    pub fn unfrozen(&self) -> Vec<usize> {
        (0..self.rank()).filter(|i| self.unfrozen[*i]).collect()
    }

    pub fn lcm_d(&self) -> i64 {
        self.d.iter().fold(1i64, |l, x| l.lcm(x))
    }

    /// lcm of the unfrozen multipliers.
    pub fn lcm_unfrozen(&self) -> i64 {
        self.unfrozen().iter().fold(1i64, |l, i| l.lcm(&self.d[*i]))
    }

    /// A common denominator for every q-exponent of a session with this data:
    /// 2·lcm(d)·lcm of the skew-form denominators.
    pub fn session_denominator(&self) -> i64 {
        let den = self.skew.iter().flatten().fold(1i64, |l, x| l.lcm(x.denom()));
        2 * self.lcm_d() * den
    }

    /// ε_ij = {e_i, e_j} d_j in the initial basis.
    pub fn epsilon(&self) -> Vec<Vec<Rational>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.skew[i][j] * Rational::from_integer(self.d[j])).collect()).collect()
    }

    /// Langlands dual data: form divided by lcm(d), d∨_j = lcm(d)/d_j.
    pub fn langlands_dual(&self) -> Self {
        let l = self.lcm_d();
        let skew = self.skew.iter().map(|r| r.iter().map(|x| x / Rational::from_integer(l)).collect()).collect();
        let d = self.d.iter().map(|x| l / x).collect();
        FixedData { skew, d, unfrozen: self.unfrozen.clone(), labels: self.labels.clone() }
    }
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(x)
}

fn pos(x: Rational) -> Rational {
    if x.is_positive() {
        x
    } else {
        Rational::zero()
    }
}

/// A seed reached from the initial one by a sequence of mutations.
///
/// The basis of the principal extension N ⊕ M∘ is carried along: the first
/// |I| vectors are the seed basis e_{i;s} (with zero M∘ part), the last |I|
/// start as (0, f_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    fixed: Arc<FixedData>,
    ext_basis: Vec<Vec<Rational>>,
    history: Vec<usize>,
}

impl Seed {
    pub fn initial(fixed: FixedData) -> Self {
        Self::initial_shared(Arc::new(fixed))
    }

    pub fn initial_shared(fixed: Arc<FixedData>) -> Self {
        let n = fixed.rank();
        let ext_basis = (0..2 * n)
            .map(|i| (0..2 * n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Seed { fixed, ext_basis, history: Vec::new() }
    }

    pub fn fixed(&self) -> &Arc<FixedData> {
        &self.fixed
    }

    pub fn rank(&self) -> usize {
        self.fixed.rank()
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// {·,·}_prin on coordinate vectors of N ⊕ M∘ in the initial basis
    /// (e_i, f_j), with ⟨e_i, f_j⟩ = δ_ij / d_j.
    fn prin_form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let n = self.rank();
        let mut s = Rational::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[j].is_zero() {
                    s += a[i] * b[j] * self.fixed.skew[i][j];
                }
            }
        }
        for i in 0..n {
            let di = rat(self.fixed.d[i]);
            s += (a[i] * b[n + i] - b[i] * a[n + i]) / di;
        }
        s
    }

    fn ext_d(&self, i: usize) -> Rational {
        rat(self.fixed.d[i % self.rank()])
    }

    fn ext_epsilon(&self, i: usize, j: usize) -> Rational {
        self.prin_form(&self.ext_basis[i], &self.ext_basis[j]) * self.ext_d(j)
    }

    /// Current basis e_{i;s} in initial coordinates.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        self.ext_basis[..n].iter().map(|r| r[..n].iter().map(|x| x.to_integer()).collect()).collect()
    }

    /// {e_{i;s}, e_{j;s}}.
    pub fn epsilon_hat(&self) -> Vec<Vec<Rational>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.prin_form(&self.ext_basis[i], &self.ext_basis[j])).collect()).collect()
    }

    /// ε_ij = {e_{i;s}, e_{j;s}} d_j.
    pub fn epsilon(&self) -> Vec<Vec<Rational>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.ext_epsilon(i, j)).collect()).collect()
    }

    /// ε_ik as an integer; valid when i or k is unfrozen.
    pub fn eps(&self, i: usize, k: usize) -> i64 {
        self.ext_epsilon(i, k).to_integer()
    }

    /// Row k of the c-vector matrix: ({ẽ_k, ẽ_{(2,j)}} d_j)_j.
    pub fn cvector(&self, k: usize) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|j| self.ext_epsilon(k, n + j).to_integer()).collect()
    }

    /// Rows c_{k;s} for the unfrozen k.
    pub fn cvectors(&self) -> Vec<Vec<i64>> {
        self.fixed.unfrozen().into_iter().map(|k| self.cvector(k)).collect()
    }

    /// The quantum torus of this chart: form {e_{i;s}, e_{j;s}}.
    pub fn x_lattice(&self) -> Arc<SkewLattice> {
        SkewLattice::new(self.epsilon_hat(), self.fixed.labels.clone(), "q").expect("skew form")
    }

    pub fn mutate(&self, k: usize) -> Result<Seed> {
        if k >= self.rank() || !self.fixed.is_unfrozen(k) {
            return Err(Error::FrozenDirection(k));
        }
        let m = self.ext_basis.len();
        let ek = self.ext_basis[k].clone();
        let mut next = self.ext_basis.clone();
        for i in 0..m {
            if i == k {
                next[i] = ek.iter().map(|x| -x).collect();
            } else {
                let c = pos(self.ext_epsilon(i, k));
                if !c.is_zero() {
                    next[i] = self.ext_basis[i].iter().zip(&ek).map(|(a, b)| a + c * b).collect();
                }
            }
        }
        let mut history = self.history.clone();
        history.push(k);
        let s = Seed { fixed: self.fixed.clone(), ext_basis: next, history };
        for i in 0..s.rank() {
            for j in 0..s.rank() {
                if (self.fixed.is_unfrozen(i) || self.fixed.is_unfrozen(j)) && !s.ext_epsilon(i, j).is_integer() {
                    return Err(Error::Integrality { i, j });
                }
            }
        }
        Ok(s)
    }

    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in ks {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Same cluster data up to reordering of the directions.
    pub fn same_cluster(&self, o: &Seed) -> bool {
        let key = |s: &Seed| {
            let b = s.basis();
            let mut rows: Vec<(Vec<i64>, Vec<i64>)> = (0..s.rank()).map(|i| (b[i].clone(), s.cvector(i))).collect();
            rows.sort();
            rows
        };
        self.fixed == o.fixed && key(self) == key(o)
    }
}

/// A rank-2 chamber: g-vectors spanning 𝒢 and the c-vectors spanning 𝒢∨.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub gvectors: Vec<Vec<i64>>,
    pub dual_generators: Vec<Vec<i64>>,
}

fn primitive(v: [i64; 2]) -> Vec<i64> {
    let g = v[0].gcd(&v[1]);
    if g == 0 {
        return v.to_vec();
    }
    vec![v[0] / g, v[1] / g]
}

/// Generators of the dual cone of a two-dimensional cone.
pub fn dual_cone_2d(c1: &[i64], c2: &[i64]) -> Result<Vec<Vec<i64>>> {
    if c1.len() != 2 || c2.len() != 2 {
        return Err(Error::Unsupported("dual cones are computed in rank 2 only".into()));
    }
    if c1[0] * c2[1] - c1[1] * c2[0] == 0 {
        return Err(Error::InvalidData("cone generators are collinear".into()));
    }
    let perp = |c: &[i64], other: &[i64]| {
        let g = [-c[1], c[0]];
        if g[0] * other[0] + g[1] * other[1] > 0 {
            primitive(g)
        } else {
            primitive([-g[0], -g[1]])
        }
    };
    Ok(vec![perp(c2, c1), perp(c1, c2)])
}

pub fn cluster_chamber(s: &Seed) -> Result<Chamber> {
    if s.rank() != 2 || s.fixed.unfrozen().len() != 2 {
        return Err(Error::Unsupported("chambers are computed for rank-2 seeds only".into()));
    }
    let c = s.cvectors();
    let gvectors = dual_cone_2d(&c[0], &c[1])?;
    Ok(Chamber { gvectors, dual_generators: c })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> FixedData {
        FixedData::rank2(rat(-1), [1, 1]).unwrap()
    }

    fn r(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|x| rat(*x)).collect()).collect()
    }

    #[test]
    fn validation() {
        let fd = FixedData::rank2(rat(-1), [2, 3]).unwrap();
        assert_eq!(fd.epsilon(), r(&[&[0, -3], &[2, 0]]));
        assert_eq!(FixedData::rank2(rat(-1), [2, 2]), Err(Error::GcdNotOne));
        assert_eq!(FixedData::rank2(Rational::new(1, 2), [1, 1]), Err(Error::Integrality { i: 0, j: 1 }));
    }

    /// Extended-matrix mutation of [B; C], used as an independent oracle.
    fn fz_mutate(b: &mut [Vec<i64>], c: &mut [Vec<i64>], k: usize) {
        let n = b.len();
        let ck = c[k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let e = b[i][k];
            for j in 0..c[i].len() {
                c[i][j] += (e.abs() * ck[j] + e * ck[j].abs()) / 2;
            }
        }
        c[k] = ck.iter().map(|x| -x).collect();
        let old = b.to_vec();
        for i in 0..n {
            for j in 0..n {
                b[i][j] = if i == k || j == k {
                    -old[i][j]
                } else {
                    old[i][j] + (old[i][k].abs() * old[k][j] + old[i][k] * old[k][j].abs()) / 2
                };
            }
        }
    }

    #[test]
    fn table_cvectors() {
        let s0 = Seed::initial(a2());
        let mut b = vec![vec![0, -1], vec![1, 0]];
        let mut c = vec![vec![1, 0], vec![0, 1]];
        let mut s = s0.clone();
        for k in [1, 0, 1, 0, 1] {
            s = s.mutate(k).unwrap();
            fz_mutate(&mut b, &mut c, k);
            assert_eq!(s.cvectors(), c);
        }
        assert_eq!(s.cvectors(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(s0.mutate(1).unwrap().cvectors(), vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(s0.mutate(1).unwrap().epsilon(), r(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn cvectors_follow_extended_matrix_mutation() {
        let fd = FixedData::new(r(&[&[0, 1, -1], &[-1, 0, 2], &[1, -2, 0]]), vec![1, 1, 1], &[0, 1, 2]).unwrap();
        let mut s = Seed::initial(fd);
        let mut b: Vec<Vec<i64>> = s.epsilon().iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
        let mut c = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        for k in [0, 1, 2, 0, 2, 1, 0] {
            s = s.mutate(k).unwrap();
            fz_mutate(&mut b, &mut c, k);
            assert_eq!(s.cvectors(), c);
            assert_eq!(s.epsilon(), r(&b.iter().map(|x| x.as_slice()).collect::<Vec<_>>()));
        }
    }

    #[test]
    fn involution() {
        let fd = FixedData::new(r(&[&[0, 1, -1], &[-1, 0, 2], &[1, -2, 0]]), vec![1, 1, 1], &[0, 1]).unwrap();
        let s = Seed::initial(fd);
        for k in 0..2 {
            let t = s.mutate(k).unwrap().mutate(k).unwrap();
            assert_eq!(t.epsilon(), s.epsilon());
            assert_eq!(t.cvectors(), s.cvectors());
            // the basis comes back only up to e_i ↦ e_i + ε_ik e_k
            let (b0, b2) = (s.basis(), t.basis());
            for i in 0..3 {
                let shift = if i == k { 0 } else { s.eps(i, k) };
                let want: Vec<i64> = (0..3).map(|j| b0[i][j] + shift * b0[k][j]).collect();
                assert_eq!(b2[i], want);
            }
        }
        assert!(matches!(s.mutate(2), Err(Error::FrozenDirection(2))));
    }

    #[test]
    fn langlands() {
        let fd = FixedData::rank2(rat(-1), [2, 3]).unwrap();
        let dual = fd.langlands_dual();
        assert_eq!(dual.d(), &[3, 2]);
        assert_eq!(dual.skew()[0][1], Rational::new(-1, 6));
        assert_eq!(a2().langlands_dual(), a2());
    }

    #[test]
    fn chambers() {
        let s = Seed::initial(a2());
        assert_eq!(cluster_chamber(&s).unwrap().gvectors, vec![vec![1, 0], vec![0, 1]]);
        let s1 = s.mutate(1).unwrap();
        assert_eq!(cluster_chamber(&s1).unwrap().gvectors, vec![vec![1, 0], vec![0, -1]]);
        assert!(dual_cone_2d(&[1, 1], &[2, 2]).is_err());
    }
}
