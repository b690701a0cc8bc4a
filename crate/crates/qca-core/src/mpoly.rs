//! Sparse multivariate polynomials over ℤ with a recursive gcd.
//!
//! Exponent vectors are trimmed of trailing zeros so polynomials in different
//! numbers of variables interoperate. Negative exponents are allowed for
//! Laurent arithmetic; gcd and exact division shift to polynomials first.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::{max, min};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Exp = Vec<i32>;
pub(crate) type Int = BigInt;

pub(crate) fn trim(mut e: Exp) -> Exp {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

pub(crate) fn exp_get(e: &[i32], i: usize) -> i32 {
    e.get(i).copied().unwrap_or(0)
}

pub(crate) fn exp_add(a: &[i32], b: &[i32]) -> Exp {
    let n = max(a.len(), b.len());
    trim((0..n).map(|i| exp_get(a, i) + exp_get(b, i)).collect())
}

pub(crate) fn exp_sub(a: &[i32], b: &[i32]) -> Exp {
    let n = max(a.len(), b.len());
    trim((0..n).map(|i| exp_get(a, i) - exp_get(b, i)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub(crate) struct MPoly {
    pub(crate) terms: BTreeMap<Exp, Int>,
}

impl MPoly {
    pub(crate) fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub(crate) fn one() -> Self {
        Self::constant(1)
    }

    pub(crate) fn constant(c: impl Into<Int>) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub(crate) fn monomial(e: Exp, c: impl Into<Int>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(e), c);
        }
        MPoly { terms }
    }

    pub(crate) fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn as_constant(&self) -> Option<Int> {
        match self.terms.len() {
            0 => Some(Int::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub(crate) fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).is_some_and(|c| c.is_one())
    }

    pub(crate) fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exp, c: Int) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub(crate) fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub(crate) fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub(crate) fn scale(&self, k: &Int) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut r = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                r.add_term(exp_add(ea, eb), ca * cb);
            }
        }
        r
    }

    pub(crate) fn shift(&self, e: &[i32]) -> Self {
        MPoly { terms: self.terms.iter().map(|(k, c)| (exp_add(k, e), c.clone())).collect() }
    }

    pub(crate) fn map_exps(&self, f: impl Fn(&[i32]) -> Exp) -> Self {
        let mut r = MPoly::zero();
        for (e, c) in &self.terms {
            r.add_term(trim(f(e)), c.clone());
        }
        r
    }

    /// Componentwise minimum exponent over all terms (zero polynomial: empty).
    pub(crate) fn min_exp(&self) -> Exp {
        let n = self.nvars();
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            let full: Vec<i32> = (0..n).map(|i| exp_get(e, i)).collect();
            m = Some(match m {
                None => full,
                Some(cur) => cur.iter().zip(full.iter()).map(|(a, b)| min(*a, *b)).collect(),
            });
        }
        trim(m.unwrap_or_default())
    }

    pub(crate) fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| exp_get(e, v)).max().unwrap_or(0)
    }

    pub(crate) fn leading(&self) -> Option<(&Exp, &Int)> {
        self.terms.iter().next_back()
    }

    /// Positive gcd of the integer coefficients.
    pub(crate) fn int_content(&self) -> Int {
        let mut g = Int::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub(crate) fn normalize_sign(self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// Exact division for polynomials with nonnegative exponents.
    pub(crate) fn div_exact(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        if let Some(c) = b.as_constant() {
            let mut r = MPoly::zero();
            for (e, a) in &self.terms {
                if !(a % &c).is_zero() {
                    return None;
                }
                r.terms.insert(e.clone(), a / &c);
            }
            return Some(r);
        }
        let (lb_e, lb_c) = b.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut q = MPoly::zero();
        let mut r = self.clone();
        while let Some((er, cr)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let e = exp_sub(&er, &lb_e);
            if e.iter().any(|x| *x < 0) || !(&cr % &lb_c).is_zero() {
                return None;
            }
            let t = MPoly::monomial(e, cr / &lb_c);
            r = r.sub(&t.mul(b));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Evaluates variable `v` at 1.
    pub(crate) fn eval_var_one(&self, v: usize) -> Self {
        self.map_exps(|e| {
            let mut e = e.to_vec();
            if v < e.len() {
                e[v] = 0;
            }
            e
        })
    }

    /// Coefficients in variable `v`: degree -> polynomial free of `v`.
    fn coeffs_in(&self, v: usize) -> BTreeMap<i32, MPoly> {
        let mut out: BTreeMap<i32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = exp_get(e, v);
            let mut e2 = e.clone();
            if v < e2.len() {
                e2[v] = 0;
            }
            out.entry(d).or_default().add_term(trim(e2), c.clone());
        }
        out
    }

    fn lc_in(&self, v: usize) -> (i32, MPoly) {
        let cs = self.coeffs_in(v);
        let (d, c) = cs.into_iter().next_back().unwrap_or((0, MPoly::zero()));
        (d, c)
    }
}

fn var_power(v: usize, d: i32) -> Exp {
    let mut e = vec![0; v + 1];
    e[v] = d;
    trim(e)
}

/// gcd of two polynomials with nonnegative exponents, leading coefficient positive.
pub(crate) fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    let ma = a.min_exp();
    let mb = b.min_exp();
    let n = max(ma.len(), mb.len());
    let m: Exp = trim((0..n).map(|i| min(exp_get(&ma, i), exp_get(&mb, i))).collect());
    let a1 = a.shift(&exp_sub(&[], &ma));
    let b1 = b.shift(&exp_sub(&[], &mb));
    gcd_shifted(&a1, &b1).shift(&m).normalize_sign()
}

fn gcd_shifted(a: &MPoly, b: &MPoly) -> MPoly {
    if let (Some(x), Some(y)) = (a.as_constant(), b.as_constant()) {
        return MPoly::constant(x.gcd(&y));
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MPoly::constant(a.int_content().gcd(&b.int_content()));
    }
    if a == b {
        return a.clone();
    }
    let n = max(a.nvars(), b.nvars());
    // the variable of least degree keeps the remainder sequence short
    let v = (0..n)
        .filter(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .min_by_key(|&v| max(a.degree_in(v), b.degree_in(v)))
        .expect("non-constant polynomial has a variable");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = prs(pa, pb, v);
    c.mul(&g)
}

fn content_in(a: &MPoly, v: usize) -> MPoly {
    let mut g = MPoly::zero();
    for c in a.coeffs_in(v).into_values() {
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_in(a: &MPoly, v: usize) -> MPoly {
    if a.is_zero() {
        return MPoly::zero();
    }
    let c = content_in(a, v);
    a.div_exact(&c).expect("content divides")
}

fn prem(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let (dg, lg) = g.lc_in(v);
    let mut r = f.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = r.lc_in(v);
        if dr < dg {
            return r;
        }
        let t = lr.shift(&var_power(v, dr - dg)).mul(g);
        r = lg.mul(&r).sub(&t);
    }
}

/// Primitive PRS gcd of two polynomials that are primitive in `v`.
fn prs(mut f: MPoly, mut g: MPoly, v: usize) -> MPoly {
    if f.degree_in(v) < g.degree_in(v) {
        core::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.is_zero() {
            return primitive_in(&f, v).normalize_sign();
        }
        if g.degree_in(v) == 0 {
            return MPoly::one();
        }
        let r = prem(&f, &g, v);
        f = g;
        g = primitive_in(&r, v);
    }
}

/// Reduces num/den to lowest terms. The first `laurent` variables may carry
/// negative exponents in the numerator; the remaining ones are polynomial.
/// The denominator is divisible by no Laurent variable and has positive
/// leading coefficient.
pub(crate) fn normalize_fraction(num: &MPoly, den: &MPoly, laurent: usize) -> (MPoly, MPoly) {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return (MPoly::zero(), MPoly::one());
    }
    let mn = num.min_exp();
    let md = den.min_exp();
    let n1 = num.shift(&exp_sub(&[], &mn));
    let d1 = den.shift(&exp_sub(&[], &md));
    let (n2, d2) = if d1.as_constant().is_some() {
        let c = d1.as_constant().unwrap();
        let g = n1.int_content().gcd(&c);
        (n1.div_exact(&MPoly::constant(g.clone())).unwrap(), MPoly::constant(c / g))
    } else {
        let g = gcd_shifted(&n1, &d1);
        (n1.div_exact(&g).expect("gcd divides"), d1.div_exact(&g).expect("gcd divides"))
    };
    let e = exp_sub(&mn, &md);
    let mut up = Vec::with_capacity(e.len());
    let mut down = Vec::with_capacity(e.len());
    for (i, x) in e.iter().enumerate() {
        if i < laurent || *x >= 0 {
            up.push(*x);
            down.push(0);
        } else {
            up.push(0);
            down.push(-*x);
        }
    }
    let num = n2.shift(&trim(up));
    let den = d2.shift(&trim(down));
    match den.leading() {
        Some((_, c)) if c.is_negative() => (num.neg(), den.neg()),
        _ => (num, den),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[i32], i128)]) -> MPoly {
        let mut r = MPoly::zero();
        for (e, c) in terms {
            r.add_term(trim(e.to_vec()), Int::from(*c));
        }
        r
    }

    #[test]
    fn gcd_of_products() {
        // (x+y)(x-1) and (x+y)(y+2)
        let a = p(&[(&[1], 1), (&[0, 1], 1)]);
        let b = p(&[(&[1], 1), (&[], -1)]);
        let c = p(&[(&[0, 1], 1), (&[], 2)]);
        let g = gcd(&a.mul(&b), &a.mul(&c));
        assert_eq!(g, a);
    }

    #[test]
    fn gcd_with_integer_content() {
        let a = p(&[(&[1], 6), (&[], 6)]);
        let b = p(&[(&[2], 4), (&[], -4)]);
        assert_eq!(gcd(&a, &b), p(&[(&[1], 2), (&[], 2)]));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = p(&[(&[2], 1), (&[], -1)]);
        let b = p(&[(&[1], 1), (&[], -1)]);
        assert_eq!(a.div_exact(&b), Some(p(&[(&[1], 1), (&[], 1)])));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn fraction_normal_form() {
        // (x^3 - 1) / (x - 1) = x^2 + x + 1
        let num = p(&[(&[3], 1), (&[], -1)]);
        let den = p(&[(&[1], 1), (&[], -1)]);
        let (n, d) = normalize_fraction(&num, &den, 1);
        assert_eq!(n, p(&[(&[2], 1), (&[1], 1), (&[], 1)]));
        assert!(d.is_one());
        // x^-1 / (2 t) with t polynomial: stays x^-1 / (2t)
        let (n, d) = normalize_fraction(&p(&[(&[-1], 1)]), &p(&[(&[0, 1], 2)]), 1);
        assert_eq!(n, p(&[(&[-1], 1)]));
        assert_eq!(d, p(&[(&[0, 1], 2)]));
    }
}
