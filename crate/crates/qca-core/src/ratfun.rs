//! Commutative rational functions in cluster variables X_1..X_n over ℤ[t].
//!
//! Variable j < n of the underlying polynomials is X_{j+1} (Laurent);
//! variable n + i is t_i. Equality is structural on the reduced form.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::mpoly::{exp_get, normalize_fraction, trim, MPoly};
use crate::scalars::TScalar;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutativeRational {
    nx: usize,
    num: MPoly,
    den: MPoly,
}

impl CommutativeRational {
    fn make(nx: usize, num: MPoly, den: MPoly) -> Self {
        let (num, den) = normalize_fraction(&num, &den, nx);
        CommutativeRational { nx, num, den }
    }

    pub fn zero(nx: usize) -> Self {
        CommutativeRational { nx, num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one(nx: usize) -> Self {
        Self::constant(nx, 1)
    }

    pub fn constant(nx: usize, c: i128) -> Self {
        CommutativeRational { nx, num: MPoly::constant(c), den: MPoly::one() }
    }

    pub fn from_ratio(nx: usize, n: i128, d: i128) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(nx, MPoly::constant(n), MPoly::constant(d)))
    }

    fn shift_t(nx: usize, t: &TScalar) -> MPoly {
        t.poly.map_exps(|e| {
            let mut v = vec![0; nx];
            v.extend_from_slice(e);
            v
        })
    }

    pub fn from_tscalar(nx: usize, t: &TScalar) -> Self {
        CommutativeRational { nx, num: Self::shift_t(nx, t), den: MPoly::one() }
    }

    pub fn from_tfraction(nx: usize, n: &TScalar, d: &TScalar) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(nx, Self::shift_t(nx, n), Self::shift_t(nx, d)))
    }

    /// The monomial X^n.
    pub fn x_monomial(n: &[i64]) -> Self {
        let e: Vec<i32> = n.iter().map(|x| *x as i32).collect();
        CommutativeRational { nx: n.len(), num: MPoly::monomial(trim(e), 1), den: MPoly::one() }
    }

    /// The generator X_{i+1}.
    pub fn x(nx: usize, i: usize) -> Self {
        let mut n = vec![0; nx];
        n[i] = 1;
        Self::x_monomial(&n)
    }

    pub fn nvars(&self) -> usize {
        self.nx
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is a single monomial (Laurent polynomial).
    pub fn has_monomial_denominator(&self) -> bool {
        self.den.terms.len() == 1
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::make(self.nx, self.num.add(&o.num), self.den.clone());
        }
        Self::make(self.nx, self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CommutativeRational { nx: self.nx, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nx);
        }
        if self.den.is_one() && o.den.is_one() {
            return CommutativeRational { nx: self.nx, num: self.num.mul(&o.num), den: MPoly::one() };
        }
        Self::make(self.nx, self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(self.nx, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        let mut r = Self::one(self.nx);
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&b);
        }
        Ok(r)
    }

    pub fn scale(&self, k: i128) -> Self {
        self.mul(&Self::constant(self.nx, k))
    }

    fn poly_derivative(p: &MPoly, i: usize) -> MPoly {
        let mut r = MPoly::zero();
        for (e, c) in &p.terms {
            let d = exp_get(e, i);
            if d != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r = r.add(&MPoly::monomial(e2, c * BigInt::from(d)));
            }
        }
        r
    }

    /// ∂/∂X_{i+1}.
    pub fn derivative(&self, i: usize) -> Self {
        let dn = Self::poly_derivative(&self.num, i);
        let dd = Self::poly_derivative(&self.den, i);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        if num.is_zero() {
            return Self::zero(self.nx);
        }
        Self::make(self.nx, num, self.den.mul(&self.den))
    }

    fn eval_poly(&self, p: &MPoly, images: &[CommutativeRational]) -> Result<Self> {
        let nx2 = images.first().map(|x| x.nx).unwrap_or(self.nx);
        let mut acc = Self::zero(nx2);
        for (e, c) in &p.terms {
            let mut t_part: Vec<i32> = vec![0; nx2];
            t_part.extend(e.iter().skip(self.nx).copied());
            let mut term =
                CommutativeRational { nx: nx2, num: MPoly::monomial(trim(t_part), c.clone()), den: MPoly::one() };
            for j in 0..self.nx {
                let d = exp_get(e, j);
                if d != 0 {
                    term = term.mul(&images[j].pow(d as i64)?);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Substitutes X_{j+1} ↦ images[j]; t-variables are kept.
    pub fn substitute(&self, images: &[CommutativeRational]) -> Result<Self> {
        if images.len() != self.nx {
            return Err(Error::InvalidData("substitution arity mismatch".into()));
        }
        let n = self.eval_poly(&self.num, images)?;
        let d = self.eval_poly(&self.den, images)?;
        n.div(&d)
    }

    /// Sets every t_i to 1.
    pub fn at_t_one(&self) -> Self {
        let nx = self.nx;
        let drop = |p: &MPoly| p.map_exps(|e| e.iter().take(nx).copied().collect());
        Self::make(nx, drop(&self.num), drop(&self.den))
    }

    /// Renders with negative X-powers moved to the denominator.
    pub fn render(&self, labels: &[String]) -> String {
        let m = self.num.min_exp();
        let lift: Vec<i32> = (0..self.nx).map(|j| (-exp_get(&m, j)).max(0)).collect();
        let lift = trim(lift);
        let (num, den) = (self.num.shift(&lift), self.den.shift(&lift));
        let n = render_poly(&num, self.nx, labels);
        if den.is_one() {
            return n;
        }
        let d = render_poly(&den, self.nx, labels);
        let wrap = |s: String, many: bool| if many { format!("({s})") } else { s };
        format!("{}/{}", wrap(n, num.terms.len() > 1), wrap(d, den.terms.len() > 1))
    }
}

fn render_poly(p: &MPoly, nx: usize, labels: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut terms: Vec<(&Vec<i32>, &BigInt)> = p.terms.iter().collect();
    terms.reverse();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let mut parts: Vec<String> = Vec::new();
        for (i, x) in e.iter().enumerate().skip(nx + 1) {
            match *x {
                0 => {}
                1 => parts.push(format!("t{}", i - nx)),
                _ => parts.push(format!("t{}^{}", i - nx, x)),
            }
        }
        for j in 0..nx {
            let x = exp_get(e, j);
            let name = labels.get(j).cloned().unwrap_or_else(|| format!("X{}", j + 1));
            match x {
                0 => {}
                1 => parts.push(name),
                _ => parts.push(format!("{name}^{x}")),
            }
        }
        let mono = parts.join("*");
        let abs = c.abs();
        let body = if mono.is_empty() {
            format!("{abs}")
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

impl fmt::Display for CommutativeRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one_row_two_entry() {
        // X2' = X2^{-1}(1 + X1 + X1 X2)
        let x1 = CommutativeRational::x(2, 0);
        let x2 = CommutativeRational::x(2, 1);
        let one = CommutativeRational::one(2);
        let a = x2.inv().unwrap().mul(&one.add(&x1).add(&x1.mul(&x2)));
        assert_eq!(a.render(&[]), "(X1*X2 + X1 + 1)/X2");
        let b = one.add(&x1.mul(&one.add(&x2))).div(&x2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn derivative_quotient_rule() {
        let x1 = CommutativeRational::x(2, 0);
        let x2 = CommutativeRational::x(2, 1);
        let f = x1.div(&CommutativeRational::one(2).add(&x2)).unwrap();
        let df = f.derivative(1);
        let expect = x1.neg().div(&CommutativeRational::one(2).add(&x2).pow(2).unwrap()).unwrap();
        assert_eq!(df, expect);
    }
}
