//! Broken lines and theta functions on rank-2 𝒜-side scattering diagrams.
//!
//! A segment decorated by c·A^m travels with velocity -m. Crossing a wall
//! the decoration is replaced by one term of the wall's action on c·A^m,
//! with the same sign rule as the path-ordered product.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::qtorus::QTorusElement;
use crate::scalars::QScalar;
use crate::scatter::{ScatteringDiagram, Side};
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub coefficient: QScalar,
    pub exponent: Vec<i64>,
    /// None for the initial segment, which comes in from infinity.
    pub start: Option<Vec<Rational>>,
    pub end: Vec<Rational>,
    /// Wall at which this segment begins (the bend that produced it).
    pub bend_wall: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrokenLine {
    pub initial_exponent: Vec<i64>,
    pub endpoint: Vec<Rational>,
    pub segments: Vec<Segment>,
}

impl BrokenLine {
    pub fn final_exponent(&self) -> &[i64] {
        &self.segments.last().expect("a broken line has a segment").exponent
    }

    pub fn final_coefficient(&self) -> &QScalar {
        &self.segments.last().expect("a broken line has a segment").coefficient
    }

    /// Walls bent at, in travel order.
    pub fn bends(&self) -> Vec<usize> {
        self.segments.iter().filter_map(|s| s.bend_wall).collect()
    }
}

struct Bend {
    point: Vec<Rational>,
    wall: usize,
    /// Exponent after the bend.
    exponent: Vec<i64>,
    factor: QScalar,
}

struct Search<'a> {
    dg: &'a ScatteringDiagram,
    m0: Vec<i64>,
    q: Vec<Rational>,
    k: usize,
    out: Vec<BrokenLine>,
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(x)
}

/// Intersection of P + t·dir (t > 0) with the support of a wall, as (t, point).
fn hit(p: &[Rational], dir: &[i64], ray: &[i64], line: bool) -> Result<Option<(Rational, Vec<Rational>)>> {
    let (m0, m1) = (rat(dir[0]), rat(dir[1]));
    let (r0, r1) = (rat(ray[0]), rat(ray[1]));
    let det = r0 * m1 - m0 * r1;
    if det.is_zero() {
        return Ok(None);
    }
    let t = (p[0] * r1 - r0 * p[1]) / det;
    let s = (m1 * p[0] - m0 * p[1]) / det;
    if !t.is_positive() {
        return Ok(None);
    }
    if s.is_zero() {
        return Err(Error::NonGeneric("a broken line passes through the origin".into()));
    }
    if !line && s.is_negative() {
        return Ok(None);
    }
    Ok(Some((t, vec![p[0] + t * m0, p[1] + t * m1])))
}

impl Search<'_> {
    fn dfs(&mut self, p: &[Rational], m: &[i64], kappa: &[i64], later: &mut Vec<Bend>) -> Result<()> {
        if kappa.iter().all(|x| *x == 0) {
            self.record(later);
            return Ok(());
        }
        if m.iter().all(|x| *x == 0) {
            return Ok(());
        }
        let dg = self.dg;
        for (wi, w) in dg.walls().iter().enumerate() {
            let Some((_, x)) = hit(p, m, &w.ray, w.line)? else { continue };
            let w0 = dg.pstar_of(&w.normal);
            let dn = dg.degree_of(&w.normal);
            let mut j = 1i64;
            loop {
                let rest: Vec<i64> = kappa.iter().zip(&w.normal).map(|(a, b)| a - j * b).collect();
                if rest.iter().any(|x| *x < 0) || j * dn > self.k as i64 {
                    break;
                }
                let prev: Vec<i64> = m.iter().zip(&w0).map(|(a, b)| a - j * b).collect();
                let pair = dg.pairing(&w.normal, &prev.iter().map(|x| rat(*x)).collect::<Vec<_>>());
                let sigma = if pair.is_positive() {
                    1
                } else if pair.is_negative() {
                    -1
                } else {
                    0
                };
                if sigma != 0 {
                    let g = dg.wall_series(w, &prev, sigma, j as usize)?;
                    let cj = &g.c[j as usize];
                    if !cj.is_zero() {
                        let wj: Vec<i64> = w0.iter().map(|x| x * j).collect();
                        let factor = cj.mul(&QScalar::q_pow(dg.torus().omega(&wj, &prev)));
                        later.push(Bend { point: x.clone(), wall: wi, exponent: m.to_vec(), factor });
                        self.dfs(&x, &prev, &rest, later)?;
                        later.pop();
                    }
                }
                j += 1;
            }
        }
        Ok(())
    }

    fn record(&mut self, later: &[Bend]) {
        // `later` holds bends from the endpoint backwards
        let mut segments = Vec::new();
        let mut coeff = QScalar::one();
        let mut start: Option<Vec<Rational>> = None;
        let mut exponent = self.m0.clone();
        let mut bend_wall = None;
        for b in later.iter().rev() {
            segments.push(Segment {
                coefficient: coeff.clone(),
                exponent: exponent.clone(),
                start: start.clone(),
                end: b.point.clone(),
                bend_wall,
            });
            coeff = coeff.mul(&b.factor);
            exponent = b.exponent.clone();
            start = Some(b.point.clone());
            bend_wall = Some(b.wall);
        }
        segments.push(Segment { coefficient: coeff, exponent, start, end: self.q.clone(), bend_wall });
        self.out.push(BrokenLine { initial_exponent: self.m0.clone(), endpoint: self.q.clone(), segments });
    }
}

fn check_basepoint(dg: &ScatteringDiagram, q: &[Rational]) -> Result<()> {
    if q.len() != 2 {
        return Err(Error::InvalidData("the basepoint must have two coordinates".into()));
    }
    for w in dg.walls() {
        for r in w.rays() {
            let cross = rat(r[0]) * q[1] - rat(r[1]) * q[0];
            let dot = rat(r[0]) * q[0] + rat(r[1]) * q[1];
            if cross.is_zero() && !dot.is_negative() {
                return Err(Error::NonGeneric(format!("basepoint {q:?} lies on a wall")));
            }
        }
    }
    Ok(())
}

/// All κ ∈ N⁺ ∪ {0} with deg κ ≤ max_degree, supported on unfrozen directions.
fn budgets(dg: &ScatteringDiagram, max_degree: i64) -> Vec<Vec<i64>> {
    let w = dg.degree_weights();
    let mut out = Vec::new();
    let mut a = 0;
    while a * w[0] <= max_degree {
        let mut b = 0;
        while a * w[0] + b * w[1] <= max_degree {
            out.push(vec![a, b]);
            b += 1;
        }
        a += 1;
    }
    out
}

fn solve_pstar(dg: &ScatteringDiagram, rel: &[i64]) -> Option<Vec<i64>> {
    let p = dg.pstar();
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    if det == 0 {
        return None;
    }
    let a = rel[0] * p[1][1] - rel[1] * p[1][0];
    let b = p[0][0] * rel[1] - p[0][1] * rel[0];
    (a % det == 0 && b % det == 0).then(|| vec![a / det, b / det])
}

/// Broken lines with initial exponent m₀ ending at Q, bending only at wall
/// terms of degree ≤ K and with total bend degree ≤ max_degree. With
/// `filter`, only lines whose final exponent equals it.
pub fn enumerate_broken_lines(
    m0: &[i64],
    q: &[Rational],
    dg: &ScatteringDiagram,
    k: usize,
    max_degree: usize,
    filter: Option<&[i64]>,
) -> Result<Vec<BrokenLine>> {
    if dg.side() != Side::A {
        return Err(Error::Unsupported("broken lines are defined on the 𝒜 side".into()));
    }
    check_basepoint(dg, q)?;
    let kappas = match filter {
        Some(f) => {
            let rel: Vec<i64> = f.iter().zip(m0).map(|(a, b)| a - b).collect();
            match solve_pstar(dg, &rel) {
                Some(kp) if kp.iter().all(|x| *x >= 0) => vec![kp],
                _ => Vec::new(),
            }
        }
        None => budgets(dg, max_degree as i64),
    };
    let mut search = Search { dg, m0: m0.to_vec(), q: q.to_vec(), k, out: Vec::new() };
    for kappa in kappas {
        let fin: Vec<i64> = m0.iter().zip(dg.pstar_of(&kappa)).map(|(a, b)| a + b).collect();
        let mut later = Vec::new();
        search.dfs(q, &fin, &kappa, &mut later)?;
    }
    let mut out = search.out;
    out.sort_by(|a, b| a.bends().cmp(&b.bends()).then_with(|| a.final_exponent().cmp(b.final_exponent())));
    Ok(out)
}

/// θ_{m₀} at Q: the sum of final decorations c·A^m (normal-ordered monomials).
pub fn theta_function(
    m0: &[i64],
    q: &[Rational],
    dg: &ScatteringDiagram,
    k: usize,
    max_degree: usize,
) -> Result<QTorusElement> {
    let mut out = QTorusElement::zero(dg.torus());
    for l in enumerate_broken_lines(m0, q, dg, k, max_degree, None)? {
        let term = QTorusElement::monomial(dg.torus(), l.final_exponent().to_vec(), l.final_coefficient().clone());
        out = out.add(&term)?;
    }
    Ok(out)
}

/// T(m) = m for m₁ ≥ 0 and m + (0, c·m₁) otherwise, on 𝒜(b, c).
pub fn greedy_t(m: [i64; 2], _b: i64, c: i64) -> [i64; 2] {
    if m[0] >= 0 {
        m
    } else {
        [m[0], m[1] + c * m[0]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scatter::{complete_to_order, initial_diagram};
    use crate::seeds::{FixedData, Seed};

    fn a23(quantum: bool, k: usize) -> ScatteringDiagram {
        let s = Seed::initial(FixedData::rank2(rat(-1), [2, 3]).unwrap());
        complete_to_order(&initial_diagram(&s, Side::A, quantum, None, k).unwrap(), k).unwrap()
    }

    fn third() -> Vec<Rational> {
        vec![Rational::new(1, 3), Rational::new(1, 3)]
    }

    #[test]
    fn figure_three_line() {
        let dg = a23(true, 2);
        let lines = enumerate_broken_lines(&[-3, 5], &third(), &dg, 2, 4, Some(&[1, -1])).unwrap();
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        let want = QScalar::q_int(-2).sub(&QScalar::one()).add(&QScalar::q_int(2));
        assert_eq!(l.final_coefficient(), &want);
        let exps: Vec<Vec<i64>> = l.segments.iter().map(|s| s.exponent.clone()).collect();
        assert_eq!(exps, vec![vec![-3, 5], vec![-1, 2], vec![-1, -1], vec![1, -1]]);
        assert_eq!(l.segments[3].start, Some(vec![Rational::new(2, 3), rat(0)]));
        assert_eq!(l.segments[2].start, Some(vec![rat(0), Rational::new(-2, 3)]));
        assert_eq!(l.bends(), vec![2, 0, 1]);
        assert_eq!(want.bar(), want);
    }

    #[test]
    fn straight_lines_only_at_order_zero() {
        let dg = a23(true, 2);
        let lines = enumerate_broken_lines(&[1, 1], &third(), &dg, 0, 4, None).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].segments.len(), 1);
        let th = theta_function(&[1, 1], &third(), &dg, 2, 4).unwrap();
        assert_eq!(th, QTorusElement::monomial(dg.torus(), vec![1, 1], QScalar::one()));
    }

    #[test]
    fn greedy_map() {
        assert_eq!(greedy_t([-3, 5], 2, 3), [-3, -4]);
        assert_eq!(greedy_t([2, 7], 2, 3), [2, 7]);
        assert_eq!(greedy_t([-1, 0], 2, 3), [-1, -3]);
    }

    #[test]
    fn basepoint_on_wall_is_rejected() {
        let dg = a23(true, 2);
        assert!(matches!(
            enumerate_broken_lines(&[1, 0], &[rat(1), rat(0)], &dg, 2, 2, None),
            Err(Error::NonGeneric(_))
        ));
    }
}
