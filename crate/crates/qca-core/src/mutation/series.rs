//! Truncated expansions of words in a completion of the quantum torus.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::word::{Atom, FactoredWord};
use crate::qtorus::{same_algebra, QTorusElement, SkewLattice};
use crate::scalars::QScalar;
use crate::{Error, Rational, Result};

/// A grading d(n) = Σ w_i n_i; expansions are taken in the direction of
/// increasing d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    weights: Vec<Rational>,
    generators: Vec<Vec<i64>>,
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(x)
}

/// Inverse of a square rational matrix.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|r| !a[*r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl Cone {
    pub fn from_weights(weights: Vec<Rational>) -> Self {
        Cone { weights, generators: Vec::new() }
    }

    /// The standard orthant grading d(n) = Σ n_i.
    pub fn standard(rank: usize) -> Self {
        Cone { weights: vec![Rational::one(); rank], generators: (0..rank).map(|i| unit(rank, i)).collect() }
    }

    /// A grading with no coincidences among small exponent vectors.
    pub fn generic(rank: usize) -> Self {
        let w = (0..rank).map(|i| Rational::new(1000 + 137 * i as i64 + (i * i) as i64 * 29, 1000)).collect();
        Self::from_weights(w)
    }

    /// Grading equal to the sum of coordinates with respect to independent
    /// generators, extended by standard basis vectors to a full basis.
    pub fn from_generators(rank: usize, gens: &[Vec<i64>]) -> Result<Self> {
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for g in gens {
            if g.len() != rank {
                return Err(Error::InvalidData("cone generator has wrong length".into()));
            }
            basis.push(g.clone());
        }
        if rank_of(&basis) < basis.len() {
            return Err(Error::InvalidData("cone generators are not independent".into()));
        }
        for i in 0..rank {
            if basis.len() == rank {
                break;
            }
            let mut trial = basis.clone();
            trial.push(unit(rank, i));
            if rank_of(&trial) == trial.len() {
                basis = trial;
            }
        }
        // rows of G are basis vectors; w solves G w = 1
        let g: Vec<Vec<Rational>> = basis.iter().map(|r| r.iter().map(|x| rat(*x)).collect()).collect();
        let gi = invert(&g).ok_or_else(|| Error::Internal("singular cone basis".into()))?;
        let weights = (0..rank).map(|i| (0..rank).map(|j| gi[i][j]).sum()).collect();
        Ok(Cone { weights, generators: gens.to_vec() })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn degree(&self, n: &[i64]) -> Rational {
        n.iter().zip(&self.weights).map(|(a, w)| rat(*a) * w).sum()
    }

    /// A nearby grading used to break ties.
    pub fn perturbed(&self, attempt: usize) -> Self {
        let w = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, x)| x + Rational::new(((i + 1) * (2 * attempt + 1)) as i64, 173 + 10 * attempt as i64))
            .collect();
        Cone { weights: w, generators: self.generators.clone() }
    }
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; rank];
    e[i] = 1;
    e
}

pub(crate) fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|x| rat(*x)).collect()).collect();
    let cols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..a.len()).find(|r| !a[*r][c].is_zero()) {
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let f = a[r][c] / a[rank][c];
                    let pivot = a[rank].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot) {
                        *x -= f * y;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Σ c_n X^n known exactly for d(n) ≤ order (all degrees when order is None).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    alg: Arc<SkewLattice>,
    cone: Cone,
    terms: BTreeMap<Vec<i64>, QScalar>,
    order: Option<Rational>,
}

impl Series {
    pub fn exact(alg: &Arc<SkewLattice>, cone: &Cone, terms: BTreeMap<Vec<i64>, QScalar>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Series { alg: alg.clone(), cone: cone.clone(), terms, order: None }
    }

    pub fn from_element(e: &QTorusElement, cone: &Cone) -> Self {
        Self::exact(e.algebra(), cone, e.terms().clone())
    }

    pub fn monomial(alg: &Arc<SkewLattice>, cone: &Cone, n: Vec<i64>, c: QScalar) -> Self {
        let mut t = BTreeMap::new();
        t.insert(n, c);
        Self::exact(alg, cone, t)
    }

    pub fn one(alg: &Arc<SkewLattice>, cone: &Cone) -> Self {
        Self::monomial(alg, cone, vec![0; alg.rank()], QScalar::one())
    }

    /// Σ_{j ≤ order} c_j X^{j x}, known up to degree order·d(x).
    pub fn from_powers(alg: &Arc<SkewLattice>, cone: &Cone, x: &[i64], coeffs: &[QScalar], order: usize) -> Self {
        let mut t = BTreeMap::new();
        for (j, c) in coeffs.iter().enumerate().take(order + 1) {
            if !c.is_zero() {
                t.insert(x.iter().map(|a| a * j as i64).collect(), c.clone());
            }
        }
        let d = cone.degree(x);
        let mut s = Self::exact(alg, cone, t);
        s.order = Some(d * rat(order as i64));
        s
    }

    pub fn algebra(&self) -> &Arc<SkewLattice> {
        &self.alg
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, QScalar> {
        &self.terms
    }

    pub fn order(&self) -> Option<Rational> {
        self.order
    }

    pub fn coefficient(&self, n: &[i64]) -> QScalar {
        self.terms.get(n).cloned().unwrap_or_else(QScalar::zero)
    }

    pub fn degree(&self, n: &[i64]) -> Rational {
        self.cone.degree(n)
    }

    pub fn valuation(&self) -> Option<Rational> {
        self.terms.keys().map(|n| self.degree(n)).min()
    }

    /// Known degrees above the valuation; None when exact or zero.
    pub fn relative_order(&self) -> Option<Rational> {
        match (self.order, self.valuation()) {
            (Some(o), Some(v)) => Some(o - v),
            _ => None,
        }
    }

    pub fn to_element(&self) -> QTorusElement {
        let mut e = QTorusElement::zero(&self.alg);
        for (n, c) in &self.terms {
            e.add_term(n.clone(), c.clone());
        }
        e
    }

    pub fn truncate(&self, order: Rational) -> Self {
        let order = match self.order {
            Some(o) if o < order => o,
            _ => order,
        };
        let terms =
            self.terms.iter().filter(|(n, _)| self.degree(n) <= order).map(|(n, c)| (n.clone(), c.clone())).collect();
        Series { alg: self.alg.clone(), cone: self.cone.clone(), terms, order: Some(order) }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if same_algebra(&self.alg, &o.alg) {
            Ok(())
        } else {
            Err(Error::MismatchedAlgebra)
        }
    }

    fn add_term(terms: &mut BTreeMap<Vec<i64>, QScalar>, n: Vec<i64>, c: QScalar) {
        use alloc::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match terms.entry(n) {
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

    fn min_order(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
        match (a, b) {
            (Some(x), Some(y)) => Some(if x < y { x } else { y }),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let order = Self::min_order(self.order, o.order);
        let mut terms = BTreeMap::new();
        for (n, c) in self.terms.iter().chain(o.terms.iter()) {
            if order.map_or(true, |b| self.degree(n) <= b) {
                Self::add_term(&mut terms, n.clone(), c.clone());
            }
        }
        Ok(Series { alg: self.alg.clone(), cone: self.cone.clone(), terms, order })
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        for c in r.terms.values_mut() {
            *c = c.neg();
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &QScalar) -> Self {
        let mut r = self.clone();
        r.terms = BTreeMap::new();
        for (n, c) in &self.terms {
            Self::add_term(&mut r.terms, n.clone(), c.mul(k));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let va = self.valuation();
        let vb = o.valuation();
        let order = match (va, vb) {
            (Some(va), Some(vb)) => Self::min_order(self.order.map(|p| p + vb), o.order.map(|p| p + va)),
            _ => Self::min_order(self.order, o.order),
        };
        let mut terms = BTreeMap::new();
        let db: Vec<(Rational, &Vec<i64>, &QScalar)> = o.terms.iter().map(|(n, c)| (o.degree(n), n, c)).collect();
        for (a, ca) in &self.terms {
            let da = self.degree(a);
            for (dbn, b, cb) in &db {
                if let Some(bound) = order {
                    if da + dbn > bound {
                        continue;
                    }
                }
                let n: Vec<i64> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                let w = self.alg.omega(a, b);
                Self::add_term(&mut terms, n, ca.mul(cb).mul(&QScalar::q_pow(w)));
            }
        }
        Ok(Series { alg: self.alg.clone(), cone: self.cone.clone(), terms, order })
    }

    /// The unique term of minimal degree.
    pub fn leading(&self) -> Result<(Vec<i64>, QScalar)> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let lead: Vec<_> = self.terms.iter().filter(|(n, _)| self.degree(n) == v).collect();
        if lead.len() != 1 {
            return Err(Error::NonGeneric(format!("{} terms share the minimal degree {}", lead.len(), v)));
        }
        Ok((lead[0].0.clone(), lead[0].1.clone()))
    }

    /// Inverse with `rel` degrees of relative precision (at most the input's).
    pub fn inv(&self, rel: Rational) -> Result<Self> {
        let (m, c) = self.leading()?;
        let v = self.degree(&m);
        let rel = match self.relative_order() {
            Some(r) if r < rel => r,
            _ => rel,
        };
        let lead_inv = Series::monomial(&self.alg, &self.cone, m.iter().map(|x| -x).collect(), c.inv()?);
        // self = L (1 + g)  ⇒  self⁻¹ = (1 + g)⁻¹ L⁻¹
        let normalized = lead_inv.mul(self)?.truncate(rel);
        let g = normalized.sub(&Series::one(&self.alg, &self.cone))?;
        let mut sum = Series::one(&self.alg, &self.cone).truncate(rel);
        let mut p = sum.clone();
        let minus_g = g.neg();
        loop {
            p = p.mul(&minus_g)?.truncate(rel);
            if p.terms.is_empty() {
                break;
            }
            sum = sum.add(&p)?;
        }
        let mut r = sum.mul(&lead_inv)?;
        r.order = Some(rel - v);
        Ok(r)
    }

    pub fn pow(&self, e: i64, rel: Rational) -> Result<Self> {
        let base = if e < 0 { self.inv(rel)? } else { self.clone() };
        let mut r = Series::one(&self.alg, &self.cone);
        for _ in 0..e.abs() {
            r = r.mul(&base)?;
        }
        Ok(r)
    }

    /// True when every known coefficient agrees with 1 and some positive
    /// degree is known.
    pub fn is_one(&self) -> bool {
        let zero = vec![0; self.alg.rank()];
        let known = self.order.map_or(true, |o| o.is_positive());
        known && self.terms.len() == 1 && self.terms.get(&zero).map_or(false, |c| c.is_one())
    }
}

const MAX_RETRIES: usize = 8;

/// Expands a word with `k` degrees of relative precision.
pub fn expand_word(w: &FactoredWord, cone: &Cone, k: usize) -> Result<Series> {
    expand_rel(w, cone, rat(k as i64))
}

fn expand_rel(w: &FactoredWord, cone: &Cone, k: Rational) -> Result<Series> {
    let alg = w.algebra();
    let mut r = Series::one(alg, cone);
    for a in w.atoms() {
        let s = match a {
            Atom::Monomial { coeff, exp } => Series::monomial(alg, cone, exp.clone(), coeff.clone()),
            Atom::Factor { terms, power } => {
                let base = expand_sum(terms, cone, k)?;
                base.pow(*power, k).map_err(|e| match e {
                    Error::NonGeneric(m) | Error::NotExpandable(m) => {
                        Error::NotExpandable(format!("{}: {m}", w.render()))
                    }
                    e => e,
                })?
            }
        };
        r = r.mul(&s)?;
    }
    Ok(r)
}

fn expand_sum(terms: &[FactoredWord], cone: &Cone, k: Rational) -> Result<Series> {
    let mut k_try = k;
    for _ in 0..MAX_RETRIES {
        let mut s: Option<Series> = None;
        for t in terms {
            let e = expand_rel(t, cone, k_try)?;
            s = Some(match s {
                None => e,
                Some(acc) => acc.add(&e)?,
            });
        }
        let s = s.ok_or_else(|| Error::NotExpandable("empty sum".into()))?;
        match s.relative_order() {
            None if !s.terms.is_empty() => return Ok(s),
            Some(r) if r >= k => return Ok(s),
            Some(r) => k_try += k - r + Rational::one(),
            None => k_try += k,
        }
    }
    Err(Error::NotExpandable("cancellation did not settle".into()))
}

/// Decides w1 = w2 to `k` degrees of relative precision in a generic grading.
pub fn words_equal(w1: &FactoredWord, w2: &FactoredWord, k: usize) -> Result<bool> {
    let rank = w1.algebra().rank();
    words_equal_in(w1, w2, &Cone::generic(rank), k)
}

/// As [`words_equal`] in the given grading; ties are broken by perturbation.
pub fn words_equal_in(w1: &FactoredWord, w2: &FactoredWord, cone: &Cone, k: usize) -> Result<bool> {
    if !same_algebra(w1.algebra(), w2.algebra()) {
        return Err(Error::MismatchedAlgebra);
    }
    let q = w1.mul(&w2.inv());
    let mut last = None;
    for attempt in 0..MAX_RETRIES {
        let c = if attempt == 0 { cone.clone() } else { cone.perturbed(attempt) };
        match expand_word(&q, &c, k) {
            Ok(s) => return Ok(s.is_one()),
            Err(e @ Error::NotExpandable(_)) | Err(e @ Error::NonGeneric(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Internal("no grading tried".into())))
}
