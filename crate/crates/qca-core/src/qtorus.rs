//! Quantum tori X^n X^{n'} = q^{ω(n,n')} X^{n+n'} and quantum dilogarithms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::mutation::{Cone, FactoredWord, Series};
use crate::scalars::{QExponent, QScalar};
use crate::{Error, Rational, Result};

/// A lattice ℤ^r with the skew form giving the q-exponent of the product rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewLattice {
    skew: Vec<Vec<Rational>>,
    labels: Vec<String>,
    var: String,
}

impl SkewLattice {
    pub fn new(skew: Vec<Vec<Rational>>, labels: Vec<String>, var: &str) -> Result<Arc<Self>> {
        let r = skew.len();
        if skew.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidData("skew form must be square".into()));
        }
        for i in 0..r {
            for j in 0..r {
                if skew[i][j] != -skew[j][i] {
                    return Err(Error::InvalidData(format!("skew form not antisymmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        let labels = if labels.len() == r { labels } else { (1..=r).map(|i| format!("X{i}")).collect() };
        Ok(Arc::new(SkewLattice { skew, labels, var: var.to_string() }))
    }

    /// Integer form helper.
    pub fn from_ints(skew: &[&[i64]], prefix: &str, var: &str) -> Result<Arc<Self>> {
        let m = skew.iter().map(|r| r.iter().map(|x| Rational::from_integer(*x)).collect()).collect();
        let labels = (1..=skew.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(m, labels, var)
    }

    pub fn commutative(rank: usize, prefix: &str) -> Arc<Self> {
        let labels = (1..=rank).map(|i| format!("{prefix}{i}")).collect();
        Arc::new(SkewLattice { skew: vec![vec![Rational::zero(); rank]; rank], labels, var: "q".into() })
    }

    pub fn rank(&self) -> usize {
        self.skew.len()
    }

    pub fn skew(&self) -> &[Vec<Rational>] {
        &self.skew
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn omega(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if *ai == 0 {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if *bj != 0 {
                    s += self.skew[i][j] * Rational::from_integer(ai * bj);
                }
            }
        }
        s
    }

    /// The scalar c with X^n = c · X_1^{n_1} ⋯ X_r^{n_r}.
    pub fn normal_order_exponent(&self, n: &[i64]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..n.len() {
            for j in (i + 1)..n.len() {
                s += self.skew[i][j] * Rational::from_integer(n[i] * n[j]);
            }
        }
        -s
    }

    /// Generic-q centrality of X^n: ω(e_i, n) = 0 for every generator.
    pub fn is_central(&self, n: &[i64]) -> bool {
        (0..self.rank()).all(|i| {
            let mut e = vec![0; self.rank()];
            e[i] = 1;
            self.omega(&e, n).is_zero()
        })
    }

    pub fn unit(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        e
    }
}

pub(crate) fn same_algebra(a: &Arc<SkewLattice>, b: &Arc<SkewLattice>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Finite sum Σ c_n X^n with normal-ordered monomials X^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QTorusElement {
    alg: Arc<SkewLattice>,
    terms: BTreeMap<Vec<i64>, QScalar>,
}

impl QTorusElement {
    pub fn zero(alg: &Arc<SkewLattice>) -> Self {
        QTorusElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(alg: &Arc<SkewLattice>, n: Vec<i64>, c: QScalar) -> Self {
        let mut e = Self::zero(alg);
        if !c.is_zero() {
            e.terms.insert(n, c);
        }
        e
    }

    pub fn one(alg: &Arc<SkewLattice>) -> Self {
        Self::monomial(alg, vec![0; alg.rank()], QScalar::one())
    }

    pub fn generator(alg: &Arc<SkewLattice>, i: usize) -> Self {
        Self::monomial(alg, alg.unit(i), QScalar::one())
    }

    pub fn algebra(&self) -> &Arc<SkewLattice> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, QScalar> {
        &self.terms
    }

    pub fn coefficient(&self, n: &[i64]) -> QScalar {
        self.terms.get(n).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, n: Vec<i64>, c: QScalar) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(n) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if same_algebra(&self.alg, &o.alg) {
            Ok(())
        } else {
            Err(Error::MismatchedAlgebra)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = self.clone();
        for (n, c) in &o.terms {
            r.add_term(n.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QTorusElement { alg: self.alg.clone(), terms: self.terms.iter().map(|(n, c)| (n.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, k: &QScalar) -> Self {
        let mut r = Self::zero(&self.alg);
        for (n, c) in &self.terms {
            r.add_term(n.clone(), c.mul(k));
        }
        r
    }

    /// The product in the quantum torus.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut r = Self::zero(&self.alg);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let n: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let w = self.alg.omega(a, b);
                r.add_term(n, ca.mul(cb).mul(&QScalar::q_pow(w)));
            }
        }
        Ok(r)
    }

    /// The *-antiautomorphism: bar on coefficients, monomials fixed.
    pub fn star(&self) -> Self {
        QTorusElement { alg: self.alg.clone(), terms: self.terms.iter().map(|(n, c)| (n.clone(), c.bar())).collect() }
    }

    pub fn map_coefficients(&self, f: impl Fn(&QScalar) -> QScalar) -> Self {
        let mut r = Self::zero(&self.alg);
        for (n, c) in &self.terms {
            r.add_term(n.clone(), f(c));
        }
        r
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (n, c) in &self.terms {
            let c = c.mul(&QScalar::q_pow(self.alg.normal_order_exponent(n)));
            parts.push(render_term(&c, n, &self.alg));
        }
        join_terms(&parts)
    }
}

pub(crate) fn render_generators(n: &[i64], alg: &SkewLattice) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, e) in n.iter().enumerate() {
        match *e {
            0 => {}
            1 => parts.push(alg.labels[i].clone()),
            _ => parts.push(format!("{}^{}", alg.labels[i], e)),
        }
    }
    parts.join("*")
}

pub(crate) fn render_term(c: &QScalar, n: &[i64], alg: &SkewLattice) -> String {
    let mono = render_generators(n, alg);
    let cs = c.render(alg.var());
    if mono.is_empty() {
        return cs;
    }
    if c.is_one() {
        return mono;
    }
    if c.neg().is_one() {
        return format!("-{mono}");
    }
    if c.is_compound() {
        format!("({cs})*{mono}")
    } else {
        format!("{cs}*{mono}")
    }
}

pub(crate) fn join_terms(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

impl fmt::Display for QTorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// ∏_{ℓ=1}^{|u|} (1 + q_k^{sgn(u)(2ℓ-1)} X^{base})^{sgn(u)}: the action of the
/// dilogarithm Ψ_{q_k}(X^{base}) by conjugation on a monomial whose pairing
/// value is u.
pub fn dilog_conjugation_factors(alg: &Arc<SkewLattice>, u: i64, base: &[i64], qk: QExponent) -> FactoredWord {
    let sign = if u < 0 { -1 } else { 1 };
    let mut w = FactoredWord::one(alg);
    for l in 1..=u.abs() {
        let e = qk * Rational::from_integer(sign * (2 * l - 1));
        w = w.mul(&FactoredWord::binomial(alg, QScalar::one(), QScalar::q_pow(e), base.to_vec(), sign));
    }
    w
}

/// Coefficients c_0..c_K of Ψ_q(x) = ∏_{ℓ≥1}(1+q^{2ℓ-1}x)^{-1} = Σ c_j x^j with
/// q = q^{qk}; c_j = (-q)^j / ∏_{i=1}^{j}(1 - q^{2i}).
pub fn dilog_coefficients(qk: QExponent, order: usize) -> Vec<QScalar> {
    let mut out = vec![QScalar::one()];
    let mut c = QScalar::one();
    for j in 1..=order {
        let num = QScalar::q_pow(qk).neg();
        let den = QScalar::one().sub(&QScalar::q_pow(qk * Rational::from_integer(2 * j as i64)));
        c = c.mul(&num).div(&den).expect("1 - q^{2j} is nonzero");
        out.push(c.clone());
    }
    out
}

/// Coefficients of -Li_2(-x; q) = Σ_ℓ (-1)^{ℓ+1} x^ℓ / (ℓ (q^ℓ - q^{-ℓ})), index 0 is 0.
pub fn dilog_log_coefficients(qk: QExponent, order: usize) -> Vec<QScalar> {
    let mut out = vec![QScalar::zero()];
    for l in 1..=order {
        let a = qk * Rational::from_integer(l as i64);
        let den = QScalar::q_pow(a).sub(&QScalar::q_pow(-a)).scale_int(l as i128);
        let sign = if l % 2 == 1 { 1 } else { -1 };
        out.push(QScalar::from_int(sign).div(&den).expect("nonzero"));
    }
    out
}

/// Ψ_{q_k}(X^{x}) truncated at order K in powers of X^{x}.
pub fn dilog_series(alg: &Arc<SkewLattice>, x: &[i64], qk: QExponent, order: usize) -> Result<Series> {
    let cone = Cone::from_generators(alg.rank(), &[x.to_vec()])?;
    Ok(Series::from_powers(alg, &cone, x, &dilog_coefficients(qk, order), order))
}

/// exp(-Li_2(-X^{x}; q_k)) truncated at order K, computed from the log form.
pub fn dilog_series_from_log(alg: &Arc<SkewLattice>, x: &[i64], qk: QExponent, order: usize) -> Result<Series> {
    let cone = Cone::from_generators(alg.rank(), &[x.to_vec()])?;
    let logs = crate::powerseries::UniSeries::from_coeffs(dilog_log_coefficients(qk, order), order);
    let e = logs.exp()?;
    Ok(Series::from_powers(alg, &cone, x, &e.c, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<SkewLattice> {
        SkewLattice::from_ints(&[&[0, 1], &[-1, 0]], "X", "q").unwrap()
    }

    #[test]
    fn defining_relation() {
        let alg = a2();
        let x1 = QTorusElement::generator(&alg, 0);
        let x2 = QTorusElement::generator(&alg, 1);
        let p = x1.mul(&x2).unwrap();
        assert_eq!(p, QTorusElement::monomial(&alg, vec![1, 1], QScalar::q_int(1)));
        let p = x2.mul(&x1).unwrap();
        assert_eq!(p, QTorusElement::monomial(&alg, vec![1, 1], QScalar::q_int(-1)));
    }

    #[test]
    fn a_torus_of_a23() {
        // Λ = ((0,1),(-1,0)); form in v = q_BZ^{-1/2} is -Λ
        let alg = SkewLattice::from_ints(&[&[0, -1], &[1, 0]], "A", "v").unwrap();
        let a1 = QTorusElement::generator(&alg, 0);
        let a2 = QTorusElement::generator(&alg, 1);
        let lhs = a2.mul(&a1).unwrap();
        let rhs = a1.mul(&a2).unwrap().scale(&QScalar::q_int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_antiautomorphism() {
        let alg = a2();
        let x1 = QTorusElement::generator(&alg, 0);
        let x2 = QTorusElement::generator(&alg, 1);
        let m = QTorusElement::monomial(&alg, vec![1, 1], QScalar::q_int(1));
        assert_eq!(m.star(), QTorusElement::monomial(&alg, vec![1, 1], QScalar::q_int(-1)));
        assert_eq!(x1.mul(&x2).unwrap().star(), x2.mul(&x1).unwrap());
    }

    #[test]
    fn centrality() {
        let alg = a2();
        assert!(!alg.is_central(&[1, 1]));
        assert!(alg.is_central(&[0, 0]));
        let alg3 = SkewLattice::from_ints(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]], "X", "q").unwrap();
        assert!(alg3.is_central(&[0, 0, 1]));
    }

    #[test]
    fn first_dilog_coefficient() {
        let c = dilog_coefficients(Rational::from_integer(1), 3);
        let expect = QScalar::one().div(&QScalar::q_int(1).sub(&QScalar::q_int(-1))).unwrap();
        assert_eq!(c[1], expect);
        // oracle: -Σ_{ℓ≥1} q^{2ℓ-1} = -q/(1-q^2)
        let geometric = QScalar::q_int(1).neg().div(&QScalar::one().sub(&QScalar::q_int(2))).unwrap();
        assert_eq!(c[1], geometric);
        assert_eq!(dilog_coefficients(Rational::from_integer(1), 0), vec![QScalar::one()]);
    }

    #[test]
    fn rendering_folds_normal_ordering() {
        let alg = a2();
        let m = QTorusElement::monomial(&alg, vec![1, 1], QScalar::one());
        assert_eq!(m.render(), "q^{-1}*X1*X2");
    }
}
