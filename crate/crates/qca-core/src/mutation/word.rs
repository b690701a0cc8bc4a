//! Skew-field elements as ordered products of monomials and inverted sums.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lex::{tokenize, Tok};
use crate::qtorus::{join_terms, render_term, same_algebra, QTorusElement, SkewLattice};
use crate::ratfun::CommutativeRational;
use crate::scalars::QScalar;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// c·X^n with X^n normal ordered.
    Monomial { coeff: QScalar, exp: Vec<i64> },
    /// (Σ terms)^power.
    Factor { terms: Vec<FactoredWord>, power: i64 },
}

/// An ordered product of atoms in a quantum torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredWord {
    alg: Arc<SkewLattice>,
    atoms: Vec<Atom>,
}

impl FactoredWord {
    pub fn one(alg: &Arc<SkewLattice>) -> Self {
        FactoredWord { alg: alg.clone(), atoms: Vec::new() }
    }

    pub fn scalar(alg: &Arc<SkewLattice>, c: QScalar) -> Self {
        Self::monomial(alg, c, vec![0; alg.rank()])
    }

    pub fn monomial(alg: &Arc<SkewLattice>, coeff: QScalar, exp: Vec<i64>) -> Self {
        let mut w = Self::one(alg);
        w.push(Atom::Monomial { coeff, exp });
        w
    }

    pub fn generator(alg: &Arc<SkewLattice>, i: usize) -> Self {
        Self::monomial(alg, QScalar::one(), alg.unit(i))
    }

    /// (u + w·X^m)^power.
    pub fn binomial(alg: &Arc<SkewLattice>, u: QScalar, w: QScalar, m: Vec<i64>, power: i64) -> Self {
        let terms = vec![Self::scalar(alg, u), Self::monomial(alg, w, m)];
        Self::factor(alg, terms, power)
    }

    /// (Σ terms)^power.
    pub fn factor(alg: &Arc<SkewLattice>, terms: Vec<FactoredWord>, power: i64) -> Self {
        let mut w = Self::one(alg);
        if terms.len() == 1 {
            return terms.into_iter().next().expect("one term").pow(power);
        }
        w.push(Atom::Factor { terms, power });
        w
    }

    pub fn sum(alg: &Arc<SkewLattice>, terms: Vec<FactoredWord>) -> Self {
        Self::factor(alg, terms, 1)
    }

    pub fn from_element(e: &QTorusElement) -> Self {
        let terms: Vec<_> = e.terms().iter().map(|(n, c)| Self::monomial(e.algebra(), c.clone(), n.clone())).collect();
        if terms.is_empty() {
            return Self::scalar(e.algebra(), QScalar::zero());
        }
        Self::sum(e.algebra(), terms)
    }

    pub fn algebra(&self) -> &Arc<SkewLattice> {
        &self.alg
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    fn is_trivial(a: &Atom) -> bool {
        match a {
            Atom::Monomial { coeff, exp } => coeff.is_one() && exp.iter().all(|x| *x == 0),
            Atom::Factor { power, .. } => *power == 0,
        }
    }

    fn push(&mut self, a: Atom) {
        if Self::is_trivial(&a) {
            return;
        }
        if let (Some(Atom::Monomial { coeff: c1, exp: n1 }), Atom::Monomial { coeff: c2, exp: n2 }) =
            (self.atoms.last(), &a)
        {
            let w = self.alg.omega(n1, n2);
            let exp: Vec<i64> = n1.iter().zip(n2).map(|(x, y)| x + y).collect();
            let coeff = c1.mul(c2).mul(&QScalar::q_pow(w));
            self.atoms.pop();
            self.push(Atom::Monomial { coeff, exp });
            return;
        }
        self.atoms.push(a);
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert!(same_algebra(&self.alg, &o.alg));
        let mut r = self.clone();
        for a in &o.atoms {
            r.push(a.clone());
        }
        r
    }

    pub fn inv(&self) -> Self {
        let mut r = Self::one(&self.alg);
        for a in self.atoms.iter().rev() {
            r.push(match a {
                Atom::Monomial { coeff, exp } => Atom::Monomial {
                    coeff: coeff.inv().unwrap_or_else(|_| QScalar::zero()),
                    exp: exp.iter().map(|x| -x).collect(),
                },
                Atom::Factor { terms, power } => Atom::Factor { terms: terms.clone(), power: -power },
            });
        }
        r
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        if self.atoms.len() == 1 {
            match &self.atoms[0] {
                Atom::Factor { terms, power } => {
                    let mut r = Self::one(&self.alg);
                    r.push(Atom::Factor { terms: terms.clone(), power: power * e });
                    return r;
                }
                Atom::Monomial { coeff, exp } => {
                    if let Ok(c) = coeff.pow(e) {
                        return Self::monomial(&self.alg, c, exp.iter().map(|x| x * e).collect());
                    }
                }
            }
        }
        let mut r = Self::one(&self.alg);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        Self::scalar(&self.alg, c.clone()).mul(self)
    }

    /// The *-antiautomorphism.
    pub fn star(&self) -> Self {
        let mut r = Self::one(&self.alg);
        for a in self.atoms.iter().rev() {
            r.push(match a {
                Atom::Monomial { coeff, exp } => Atom::Monomial { coeff: coeff.bar(), exp: exp.clone() },
                Atom::Factor { terms, power } => {
                    Atom::Factor { terms: terms.iter().map(|t| t.star()).collect(), power: *power }
                }
            });
        }
        r
    }

    pub fn map_coefficients(&self, f: &dyn Fn(&QScalar) -> QScalar) -> Self {
        let mut r = Self::one(&self.alg);
        for a in &self.atoms {
            r.push(match a {
                Atom::Monomial { coeff, exp } => Atom::Monomial { coeff: f(coeff), exp: exp.clone() },
                Atom::Factor { terms, power } => {
                    Atom::Factor { terms: terms.iter().map(|t| t.map_coefficients(f)).collect(), power: *power }
                }
            });
        }
        r
    }

    pub fn at_t_one(&self) -> Self {
        self.map_coefficients(&|c| c.at_t_one())
    }

    /// Applies the homomorphism X_i ↦ images[i] with scalars mapped by `coeff`.
    pub fn substitute_with(
        &self,
        target: &Arc<SkewLattice>,
        images: &[FactoredWord],
        coeff: &dyn Fn(&QScalar) -> QScalar,
    ) -> Result<Self> {
        if images.len() != self.alg.rank() {
            return Err(Error::InvalidData("substitution arity mismatch".into()));
        }
        let mut r = Self::one(target);
        for a in &self.atoms {
            match a {
                Atom::Monomial { coeff: c, exp } => {
                    let nord = QScalar::q_pow(self.alg.normal_order_exponent(exp));
                    r = r.mul(&Self::scalar(target, coeff(&c.mul(&nord))));
                    for (i, e) in exp.iter().enumerate() {
                        if *e != 0 {
                            r = r.mul(&images[i].pow(*e));
                        }
                    }
                }
                Atom::Factor { terms, power } => {
                    let ts =
                        terms.iter().map(|t| t.substitute_with(target, images, coeff)).collect::<Result<Vec<_>>>()?;
                    r = r.mul(&Self::factor(target, ts, *power));
                }
            }
        }
        Ok(r)
    }

    pub fn substitute(&self, images: &[FactoredWord]) -> Result<Self> {
        let target = images.first().map(|w| w.alg.clone()).unwrap_or_else(|| self.alg.clone());
        self.substitute_with(&target, images, &|c| c.clone())
    }

    /// The q = 1 image as a commutative rational function.
    pub fn to_commutative(&self) -> Result<CommutativeRational> {
        let nx = self.alg.rank();
        let mut r = CommutativeRational::one(nx);
        for a in &self.atoms {
            match a {
                Atom::Monomial { coeff, exp } => {
                    let (n, d) = coeff.at_q_one_parts()?;
                    let c = CommutativeRational::from_tfraction(nx, &n, &d)?;
                    r = r.mul(&c).mul(&CommutativeRational::x_monomial(exp));
                }
                Atom::Factor { terms, power } => {
                    let mut s = CommutativeRational::zero(nx);
                    for t in terms {
                        s = s.add(&t.to_commutative()?);
                    }
                    r = r.mul(&s.pow(*power)?);
                }
            }
        }
        Ok(r)
    }

    pub fn render(&self) -> String {
        if self.atoms.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut sign = false;
        for (idx, a) in self.atoms.iter().enumerate() {
            match a {
                Atom::Monomial { coeff, exp } => {
                    let c = coeff.mul(&QScalar::q_pow(self.alg.normal_order_exponent(exp)));
                    let mut s = render_term(&c, exp, &self.alg);
                    if idx > 0 && s.starts_with('-') {
                        sign = !sign;
                        s.remove(0);
                    }
                    if idx > 0 && s == "1" {
                        continue;
                    }
                    parts.push(s);
                }
                Atom::Factor { terms, power } => {
                    let inner: Vec<String> = terms.iter().map(|t| t.render()).collect();
                    let body = format!("({})", join_terms(&inner));
                    parts.push(match power {
                        1 => body,
                        p => format!("{body}^{p}"),
                    });
                }
            }
        }
        let s = parts.join("*");
        if sign {
            format!("-{s}")
        } else {
            s
        }
    }

    /// Parses an expression such as `(1+t2*q*X2)^{-1}*X1^{-1}`.
    pub fn parse(alg: &Arc<SkewLattice>, src: &str) -> Result<Self> {
        let cleaned = src
            .replace('\u{2212}', "-")
            .replace('\u{207b}', "^-")
            .replace('\u{00b9}', "1")
            .replace('\u{00b2}', "2")
            .replace('\u{00b3}', "3")
            .replace("^-1", "^{-1}")
            .replace("^-2", "^{-2}")
            .replace("^-3", "^{-3}");
        let toks = tokenize(&cleaned)?;
        let mut p = Parser { alg: alg.clone(), toks, pos: 0 };
        let w = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("unexpected trailing input in {src:?}")));
        }
        Ok(w)
    }
}

impl fmt::Display for FactoredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

struct Parser {
    alg: Arc<SkewLattice>,
    toks: Vec<Tok>,
    pos: usize,
}

enum Base {
    Word(FactoredWord),
    QVar,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<FactoredWord> {
        let mut terms = Vec::new();
        let mut neg = self.eat('-');
        loop {
            let mut t = self.term()?;
            if neg {
                t = t.scale(&QScalar::from_int(-1));
            }
            terms.push(t);
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(FactoredWord::sum(&self.alg, terms))
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<FactoredWord> {
        let mut w = self.power()?;
        loop {
            if self.eat('*') {
                w = w.mul(&self.power()?);
            } else if self.eat('/') {
                w = w.mul(&self.power()?.inv());
            } else if self.starts_primary() {
                w = w.mul(&self.power()?);
            } else {
                return Ok(w);
            }
        }
    }

    fn exponent(&mut self) -> Result<Rational> {
        let braced = self.eat('{') || self.eat('(');
        let neg = self.eat('-');
        let n = match self.peek() {
            Some(Tok::Num(n)) => *n,
            _ => return Err(Error::Parse("expected exponent".into())),
        };
        self.pos += 1;
        let mut r = Rational::from_integer(n);
        if braced && self.eat('/') {
            match self.peek() {
                Some(Tok::Num(d)) if *d != 0 => r /= Rational::from_integer(*d),
                _ => return Err(Error::Parse("expected exponent denominator".into())),
            }
            self.pos += 1;
        }
        if braced && !self.eat('}') {
            self.expect(')')?;
        }
        Ok(if neg { -r } else { r })
    }

    fn power(&mut self) -> Result<FactoredWord> {
        let base = self.primary()?;
        let e = if self.eat('^') { Some(self.exponent()?) } else { None };
        match base {
            Base::QVar => Ok(FactoredWord::scalar(&self.alg, QScalar::q_pow(e.unwrap_or(Rational::from_integer(1))))),
            Base::Word(w) => match e {
                None => Ok(w),
                Some(r) if r.is_integer() => Ok(w.pow(r.to_integer())),
                Some(_) => Err(Error::Parse("fractional powers are only allowed on q".into())),
            },
        }
    }

    fn primary(&mut self) -> Result<Base> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Base::Word(FactoredWord::scalar(&self.alg, QScalar::from_int(n as i128))))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(')')?;
                Ok(Base::Word(w))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                if id == self.alg.var() || id == "q" {
                    return Ok(Base::QVar);
                }
                if let Some(i) = self.alg.labels().iter().position(|l| *l == id) {
                    return Ok(Base::Word(FactoredWord::generator(&self.alg, i)));
                }
                if let Some(rest) = id.strip_prefix('t') {
                    if let Ok(j) = rest.parse::<usize>() {
                        if j >= 1 {
                            let mut e = vec![0u32; j];
                            e[j - 1] = 1;
                            return Ok(Base::Word(FactoredWord::scalar(&self.alg, QScalar::t_monomial(&e))));
                        }
                    }
                }
                Err(Error::Parse(format!("unknown symbol {id:?}")))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
