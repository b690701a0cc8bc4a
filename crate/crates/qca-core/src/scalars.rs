//! The base ring: fractions of Laurent polynomials in q^{1/D} whose
//! coefficients are integer polynomials in t_1, …, t_r.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lex::{tokenize, Tok};
use crate::mpoly::{exp_get, normalize_fraction, trim, MPoly};
use crate::{Error, Rational, Result};

/// A q-exponent, an exact rational.
pub type QExponent = Rational;

/// Integer polynomial in the coefficient variables t_1, …, t_r.
///
/// Internally variable 0 is reserved for q (always exponent 0 here) and
/// variable i is t_i, so a TScalar is also a QScalar numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TScalar {
    pub(crate) poly: MPoly,
}

impl TScalar {
    pub fn zero() -> Self {
        TScalar { poly: MPoly::zero() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        TScalar { poly: MPoly::constant(c) }
    }

    /// ∏ t_{j+1}^{e_j}.
    pub fn monomial(exps: &[u32], c: i128) -> Self {
        let mut e = vec![0i32];
        e.extend(exps.iter().map(|x| *x as i32));
        TScalar { poly: MPoly::monomial(e, c) }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        self.poly.as_constant()
    }

    /// Terms as (t-exponent vector, coefficient), sorted lexicographically.
    pub fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        let mut v: Vec<(Vec<u32>, BigInt)> =
            self.poly.terms.iter().map(|(e, c)| (e.iter().skip(1).map(|x| *x as u32).collect(), c.clone())).collect();
        v.sort();
        v
    }

    pub fn add(&self, o: &Self) -> Self {
        TScalar { poly: self.poly.add(&o.poly) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        TScalar { poly: self.poly.mul(&o.poly) }
    }

    pub fn neg(&self) -> Self {
        TScalar { poly: self.poly.neg() }
    }

    /// Sets every t_i to 1.
    pub fn at_t_one(&self) -> BigInt {
        self.poly.terms.values().sum()
    }

    pub fn to_qscalar(&self) -> QScalar {
        QScalar::make(self.poly.clone(), MPoly::one(), 1)
    }
}

impl fmt::Display for TScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_qscalar().render("q"))
    }
}

/// Exact element of Frac(ℤ[q^{±1/D}, t]) in canonical reduced form.
///
/// Variable 0 of `num`/`den` is q in units of 1/`qden`; variable i ≥ 1 is t_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: MPoly,
    den: MPoly,
    qden: i64,
}

fn scale_q(p: &MPoly, factor: i64) -> MPoly {
    if factor == 1 {
        return p.clone();
    }
    p.map_exps(|e| {
        let mut e = e.to_vec();
        if !e.is_empty() {
            e[0] *= factor as i32;
        }
        e
    })
}

impl QScalar {
    fn make(num: MPoly, den: MPoly, qden: i64) -> Self {
        let (num, den) = if den.is_one() { (num, den) } else { normalize_fraction(&num, &den, 1) };
        let mut g = qden;
        for e in num.terms.keys().chain(den.terms.keys()) {
            g = g.gcd(&(exp_get(e, 0) as i64));
            if g == 1 {
                break;
            }
        }
        if g > 1 {
            let shrink = |p: &MPoly| {
                p.map_exps(|e| {
                    let mut e = e.to_vec();
                    if !e.is_empty() {
                        e[0] /= g as i32;
                    }
                    e
                })
            };
            QScalar { num: shrink(&num), den: shrink(&den), qden: qden / g }
        } else {
            QScalar { num, den, qden }
        }
    }

    pub fn zero() -> Self {
        QScalar { num: MPoly::zero(), den: MPoly::one(), qden: 1 }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i128) -> Self {
        QScalar { num: MPoly::constant(c), den: MPoly::one(), qden: 1 }
    }

    pub fn from_ratio(n: i128, d: i128) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(MPoly::constant(n), MPoly::constant(d), 1))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::make(MPoly::constant(*r.numer() as i128), MPoly::constant(*r.denom() as i128), 1)
    }

    /// q^a.
    pub fn q_pow(a: QExponent) -> Self {
        Self::q_term(a, 1)
    }

    /// c·q^a.
    pub fn q_term(a: QExponent, c: i128) -> Self {
        let qden = *a.denom();
        Self::make(MPoly::monomial(vec![*a.numer() as i32], c), MPoly::one(), qden)
    }

    /// q^n for an integer n.
    pub fn q_int(n: i64) -> Self {
        Self::q_pow(Rational::from_integer(n))
    }

    /// ∏ t_{j+1}^{e_j}.
    pub fn t_monomial(exps: &[u32]) -> Self {
        TScalar::monomial(exps, 1).to_qscalar()
    }

    /// t^{[v]_+}: only the positive parts of `v` are used.
    pub fn t_pos(v: &[i64]) -> Self {
        let e: Vec<u32> = v.iter().map(|x| (*x).max(0) as u32).collect();
        Self::t_monomial(&e)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    fn aligned(&self, o: &Self) -> (i64, [MPoly; 4]) {
        let l = self.qden.lcm(&o.qden);
        let fa = l / self.qden;
        let fb = l / o.qden;
        (l, [scale_q(&self.num, fa), scale_q(&self.den, fa), scale_q(&o.num, fb), scale_q(&o.den, fb)])
    }

    pub fn add(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let (l, [an, ad, bn, bd]) = self.aligned(o);
        if ad == bd {
            Self::make(an.add(&bn), ad, l)
        } else {
            Self::make(an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd), l)
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QScalar { num: self.num.neg(), den: self.den.clone(), qden: self.qden }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return o.clone();
        }
        let (l, [an, ad, bn, bd]) = self.aligned(o);
        Self::make(an.mul(&bn), ad.mul(&bd), l)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(self.den.clone(), self.num.clone(), self.qden))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut r = Self::one();
        for _ in 0..n.unsigned_abs() {
            r = r.mul(&base);
        }
        Ok(r)
    }

    pub fn scale_int(&self, k: i128) -> Self {
        self.mul(&Self::from_int(k))
    }

    /// The bar involution q ↦ q^{-1}.
    pub fn bar(&self) -> Self {
        let flip = |p: &MPoly| {
            p.map_exps(|e| {
                let mut e = e.to_vec();
                if !e.is_empty() {
                    e[0] = -e[0];
                }
                e
            })
        };
        let (n, d) = (flip(&self.num), flip(&self.den));
        let m = d.min_exp();
        let s: Vec<i32> = trim(vec![-exp_get(&m, 0)]);
        Self::make(n.shift(&s), d.shift(&s), self.qden)
    }

    /// Substitutes q ↦ q^r for a positive or negative rational r.
    pub fn substitute_q_power(&self, r: Rational) -> Self {
        let l = self.qden * *r.denom();
        let k = *r.numer();
        let map = |p: &MPoly| {
            p.map_exps(|e| {
                let mut e = e.to_vec();
                if !e.is_empty() {
                    e[0] *= k as i32;
                }
                e
            })
        };
        let (n, d) = (map(&self.num), map(&self.den));
        let m = d.min_exp();
        let s: Vec<i32> = trim(vec![-exp_get(&m, 0)]);
        Self::make(n.shift(&s), d.shift(&s), l)
    }

    /// Sets every t_i to 1.
    pub fn at_t_one(&self) -> Self {
        let drop_t = |p: &MPoly| p.map_exps(|e| trim(vec![exp_get(e, 0)]));
        let d = drop_t(&self.den);
        if d.is_zero() {
            // cannot happen for valid denominators with positive content,
            // but keep the behaviour explicit
            return Self::zero();
        }
        Self::make(drop_t(&self.num), d, self.qden)
    }

    fn qminus1(&self) -> MPoly {
        MPoly::monomial(vec![self.qden as i32], 1).sub(&MPoly::one())
    }

    /// Numerator and denominator at q = 1, as t-polynomials.
    pub fn at_q_one_parts(&self) -> Result<(TScalar, TScalar)> {
        let d1 = self.den.eval_var_one(0);
        if d1.is_zero() {
            let x1 = MPoly::var(0).sub(&MPoly::one());
            let mut d = self.den.clone();
            let mut order = 0;
            while let Some(q) = d.div_exact(&x1) {
                d = q;
                order += 1;
            }
            return Err(Error::Pole { order });
        }
        Ok((TScalar { poly: self.num.eval_var_one(0) }, TScalar { poly: d1 }))
    }

    /// Exact value at q = 1 (and q^{1/D} = 1).
    pub fn limit_q1(&self) -> Result<TScalar> {
        let (n, d) = self.at_q_one_parts()?;
        n.poly
            .div_exact(&d.poly)
            .map(|poly| TScalar { poly })
            .ok_or_else(|| Error::NotIntegral(format!("{} / {}", n, d)))
    }

    /// a / (q - 1), defined when a vanishes at q = 1.
    pub fn divide_exact_qminus1(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (n, _) = self.at_q_one_parts().map_err(|_| Error::NotDivisibleByQMinusOne)?;
        if !n.is_zero() {
            return Err(Error::NotDivisibleByQMinusOne);
        }
        Ok(Self::make(self.num.clone(), self.den.mul(&self.qminus1()), self.qden))
    }

    fn terms_of(&self, p: &MPoly) -> BTreeMap<QExponent, TScalar> {
        let mut out: BTreeMap<QExponent, TScalar> = BTreeMap::new();
        for (e, c) in &p.terms {
            let a = Rational::new(exp_get(e, 0) as i64, self.qden);
            let mut te = e.clone();
            if !te.is_empty() {
                te[0] = 0;
            }
            let t = TScalar { poly: MPoly::monomial(te, c.clone()) };
            let entry = out.entry(a).or_default();
            *entry = entry.add(&t);
        }
        out
    }

    /// Numerator as a map q-exponent → t-coefficient.
    pub fn numerator_terms(&self) -> BTreeMap<QExponent, TScalar> {
        self.terms_of(&self.num)
    }

    /// Denominator as a map q-exponent → t-coefficient.
    pub fn denominator_terms(&self) -> BTreeMap<QExponent, TScalar> {
        self.terms_of(&self.den)
    }

    /// Laurent coefficients when the denominator is 1.
    pub fn laurent_terms(&self) -> Option<BTreeMap<QExponent, TScalar>> {
        self.is_laurent().then(|| self.numerator_terms())
    }

    /// Largest absolute q-exponent appearing (used for sanity bounds).
    pub fn q_span(&self) -> Rational {
        self.num
            .terms
            .keys()
            .chain(self.den.terms.keys())
            .map(|e| Rational::new((exp_get(e, 0) as i64).abs(), self.qden))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            render_poly(&self.numerator_terms(), var)
        } else {
            let n = render_poly(&self.numerator_terms(), var);
            let d = render_poly(&self.denominator_terms(), var);
            let wrap = |s: String, many: bool| if many { format!("({s})") } else { s };
            format!("{}/{}", wrap(n, self.num.terms.len() > 1), wrap(d, self.den.terms.len() > 1))
        }
    }

    /// True when the rendered form needs parentheses inside a product.
    pub fn is_compound(&self) -> bool {
        self.num.terms.len() > 1 || !self.den.is_one()
    }

    pub fn is_negative_unit_like(&self) -> bool {
        self.num.terms.len() == 1 && self.den.is_one() && self.num.terms.values().all(|c| c.is_negative())
    }
}

fn render_rational_exp(a: Rational) -> String {
    if a.is_integer() {
        a.to_integer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn render_monomial(texps: &[u32], a: Rational, var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, e) in texps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{}", i + 1, e)),
        }
    }
    if !a.is_zero() {
        if a.is_one() {
            parts.push(var.to_string());
        } else {
            let s = render_rational_exp(a);
            if a.is_integer() && a.is_positive() {
                parts.push(format!("{var}^{s}"));
            } else {
                parts.push(format!("{var}^{{{s}}}"));
            }
        }
    }
    parts.join("*")
}

fn render_poly(terms: &BTreeMap<QExponent, TScalar>, var: &str) -> String {
    let mut flat: Vec<(Rational, Vec<u32>, BigInt)> = Vec::new();
    for (a, t) in terms {
        for (te, c) in t.terms() {
            flat.push((*a, te, c));
        }
    }
    flat.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
    if flat.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (a, te, c)) in flat.iter().enumerate() {
        let mono = render_monomial(te, *a, var);
        let abs = c.abs();
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            mono
        } else {
            format!("{abs}*{mono}")
        };
        if idx == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        QScalar::add(self, o)
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        QScalar::sub(self, o)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        QScalar::mul(self, o)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::neg(self)
    }
}

/// q-number style helper: (q^a - q^{-a}).
pub fn q_antisym(a: QExponent) -> QScalar {
    QScalar::q_pow(a).sub(&QScalar::q_pow(-a))
}

impl core::str::FromStr for QScalar {
    type Err = Error;

    /// Parses the rendered form back, e.g. "(t1 + q^{-1/2})/(1 - q^2)".
    fn from_str(src: &str) -> Result<Self> {
        let mut p = ScalarParser { toks: tokenize(&src.replace('\u{2212}', "-"))?, pos: 0 };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("unexpected trailing input in {src:?}")));
        }
        Ok(v)
    }
}

struct ScalarParser {
    toks: Vec<Tok>,
    pos: usize,
}

impl ScalarParser {
    fn eat(&mut self, c: char) -> bool {
        if self.toks.get(self.pos) == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn num(&mut self) -> Result<i64> {
        match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(*n)
            }
            other => Err(Error::Parse(format!("expected a number, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<QScalar> {
        let mut neg = self.eat('-');
        let mut acc = QScalar::zero();
        loop {
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QScalar> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                acc = acc.div(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        let braced = self.eat('{');
        let neg = self.eat('-');
        let mut r = Rational::from_integer(self.num()?);
        if braced {
            if self.eat('/') {
                let d = self.num()?;
                if d == 0 {
                    return Err(Error::Parse("zero exponent denominator".into()));
                }
                r /= Rational::from_integer(d);
            }
            if !self.eat('}') {
                return Err(Error::Parse("expected '}'".into()));
            }
        }
        Ok(if neg { -r } else { r })
    }

    fn power(&mut self) -> Result<QScalar> {
        let (base, is_q) = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if is_q {
            Ok(QScalar::q_pow(e))
        } else if e.is_integer() {
            base.pow(e.to_integer())
        } else {
            Err(Error::Parse("fractional powers are only allowed on q".into()))
        }
    }

    fn primary(&mut self) -> Result<(QScalar, bool)> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok((QScalar::from_int(n as i128), false))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected ')'".into()));
                }
                Ok((v, false))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id == "q" || id == "v" {
                    return Ok((QScalar::q_int(1), true));
                }
                match id.strip_prefix('t').and_then(|r| r.parse::<usize>().ok()) {
                    Some(j) if j >= 1 => {
                        let mut e = vec![0u32; j];
                        e[j - 1] = 1;
                        Ok((QScalar::t_monomial(&e), false))
                    }
                    _ => Err(Error::Parse(format!("unknown symbol {id:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> QScalar {
        QScalar::q_int(n)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn polynomial_identities() {
        let a = q(1).sub(&q(-1));
        let b = q(1).add(&q(-1));
        assert_eq!(a.mul(&b), q(2).sub(&q(-2)));
        assert_eq!(QScalar::q_pow(r(1, 2)).inv().unwrap(), QScalar::q_pow(r(-1, 2)));
        let num = q(3).sub(&QScalar::one());
        let den = q(1).sub(&QScalar::one());
        assert_eq!(num.mul(&den.inv().unwrap()), q(2).add(&q(1)).add(&QScalar::one()));
    }

    #[test]
    fn zero_division_is_an_error() {
        assert_eq!(QScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(QScalar::q_pow(r(3, 2)).bar(), QScalar::q_pow(r(-3, 2)));
        let t1 = QScalar::t_monomial(&[1]);
        let s = QScalar::one().add(&t1.mul(&q(2)));
        assert_eq!(s.bar(), QScalar::one().add(&t1.mul(&q(-2))));
        let frac = QScalar::one().div(&q(1).sub(&q(-1))).unwrap();
        assert_eq!(frac.bar(), frac.neg());
    }

    #[test]
    fn limits_at_one() {
        assert_eq!(q(2).add(&q(-2)).limit_q1().unwrap(), TScalar::constant(2));
        let x = q(2).sub(&q(-2)).div(&q(1).sub(&q(-1))).unwrap();
        assert_eq!(x.limit_q1().unwrap(), TScalar::constant(2));
        let p = QScalar::one().div(&q(1).sub(&QScalar::one())).unwrap();
        assert_eq!(p.limit_q1(), Err(Error::Pole { order: 1 }));
        let p2 = p.mul(&p);
        assert_eq!(p2.limit_q1(), Err(Error::Pole { order: 2 }));
    }

    #[test]
    fn division_by_q_minus_one() {
        let a = q(2).sub(&q(-2));
        let d = a.divide_exact_qminus1().unwrap();
        // (q^2 - q^-2)/(q - 1) = q + 1 + q^-1 + q^-2
        let expect = q(1).add(&QScalar::one()).add(&q(-1)).add(&q(-2));
        assert_eq!(d, expect);
        assert_eq!(d.mul(&q(1).sub(&QScalar::one())), a);
        let one = q(1).sub(&QScalar::one()).divide_exact_qminus1().unwrap();
        assert!(one.is_one());
        assert_eq!(q(1).add(&QScalar::one()).divide_exact_qminus1(), Err(Error::NotDivisibleByQMinusOne));
    }

    #[test]
    fn fractional_exponents_reduce() {
        let h = QScalar::q_pow(r(1, 2));
        assert_eq!(h.mul(&h), q(1));
        assert_eq!(h.render("q"), "q^{1/2}");
        let third = QScalar::q_pow(r(1, 3));
        let s = h.add(&third);
        assert_eq!(s.sub(&h), third);
    }

    #[test]
    fn rendering() {
        let t1 = QScalar::t_monomial(&[1]);
        let s = QScalar::one().add(&t1.mul(&q(-2)));
        assert_eq!(s.render("q"), "t1*q^{-2} + 1");
        let t = QScalar::t_monomial(&[2, 1]);
        assert_eq!(t.render("q"), "t1^2*t2");
        assert_eq!(q(1).sub(&q(-1)).neg().render("v"), "v^{-1} - v");
    }

    #[test]
    fn canonical_forms_agree() {
        let a = q(1).sub(&q(-1));
        let x = QScalar::one().div(&a).unwrap();
        let y = q(1).div(&q(2).sub(&QScalar::one())).unwrap();
        assert_eq!(x, y);
        let t1 = QScalar::t_monomial(&[1]);
        let z = t1.add(&q(1)).div(&t1.mul(&q(1)).add(&q(2))).unwrap();
        assert_eq!(z, QScalar::one().div(&q(1)).unwrap());
    }

    #[test]
    fn parse_round_trips_rendering() {
        let v = QScalar::q_pow(Rational::new(-1, 2))
            .add(&QScalar::t_monomial(&[2, 1]))
            .div(&QScalar::one().sub(&QScalar::q_int(2)))
            .unwrap();
        for x in [v, QScalar::zero(), QScalar::from_int(-7), QScalar::q_int(6).sub(&QScalar::q_int(-6))] {
            assert_eq!(x.to_string().parse::<QScalar>().unwrap(), x, "{x}");
        }
        assert!("q^{1/2".parse::<QScalar>().is_err());
        assert!("X1".parse::<QScalar>().is_err());
    }
}
