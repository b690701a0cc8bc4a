//! Truncated power series in one commuting variable over QScalar.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalars::QScalar;
use crate::{Error, Result};

/// Coefficients c_0..=c_N of Σ c_j z^j modulo z^{N+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UniSeries {
    pub(crate) c: Vec<QScalar>,
}

impl UniSeries {
    pub(crate) fn zero(n: usize) -> Self {
        UniSeries { c: vec![QScalar::zero(); n + 1] }
    }

    pub(crate) fn one(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.c[0] = QScalar::one();
        s
    }

    pub(crate) fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub(crate) fn from_coeffs(mut c: Vec<QScalar>, n: usize) -> Self {
        c.resize(n + 1, QScalar::zero());
        UniSeries { c }
    }

    pub(crate) fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut r = Self::zero(n);
        for i in 0..=n {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !o.c[j].is_zero() {
                    r.c[i + j] = r.c[i + j].add(&self.c[i].mul(&o.c[j]));
                }
            }
        }
        r
    }

    pub(crate) fn inv(&self) -> Result<Self> {
        let n = self.order();
        let c0 = self.c[0].inv()?;
        let mut r = Self::zero(n);
        r.c[0] = c0.clone();
        for k in 1..=n {
            let mut s = QScalar::zero();
            for j in 1..=k {
                if !self.c[j].is_zero() {
                    s = s.add(&self.c[j].mul(&r.c[k - j]));
                }
            }
            r.c[k] = s.mul(&c0).neg();
        }
        Ok(r)
    }

    pub(crate) fn exp(&self) -> Result<Self> {
        if !self.c[0].is_zero() {
            return Err(Error::Internal("exp of a series with nonzero constant term".into()));
        }
        let n = self.order();
        let mut e = Self::zero(n);
        e.c[0] = QScalar::one();
        for m in 1..=n {
            let mut s = QScalar::zero();
            for k in 1..=m {
                if !self.c[k].is_zero() {
                    s = s.add(&self.c[k].mul(&e.c[m - k]).scale_int(k as i128));
                }
            }
            e.c[m] = s.mul(&QScalar::from_ratio(1, m as i128)?);
        }
        Ok(e)
    }

    #[cfg(test)]
    pub(crate) fn log(&self) -> Result<Self> {
        if !self.c[0].is_one() {
            return Err(Error::Internal("log of a series with constant term ≠ 1".into()));
        }
        let n = self.order();
        let mut l = Self::zero(n);
        for m in 1..=n {
            let mut s = QScalar::zero();
            for k in 1..m {
                if !l.c[k].is_zero() && !self.c[m - k].is_zero() {
                    s = s.add(&l.c[k].mul(&self.c[m - k]).scale_int(k as i128));
                }
            }
            l.c[m] = self.c[m].sub(&s.mul(&QScalar::from_ratio(1, m as i128)?));
        }
        Ok(l)
    }

    pub(crate) fn pow_int(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut r = Self::one(self.order());
        for _ in 0..e.unsigned_abs() {
            r = r.mul(&base);
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_log_round_trip() {
        let f = UniSeries::from_coeffs(vec![QScalar::one(), QScalar::q_int(1), QScalar::from_int(3)], 5);
        let l = f.log().unwrap();
        assert_eq!(l.exp().unwrap(), f);
        let g = f.pow_int(-2).unwrap().mul(&f.pow_int(2).unwrap());
        assert_eq!(g, UniSeries::one(5));
    }
}
