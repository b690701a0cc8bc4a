//! JSON seed files. Indices in files and on the command line are 1-based.

use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use qca_core::duality::check_compatible_pair;
use qca_core::seeds::{FixedData, Seed};
use qca_core::Rational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Principal,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    pub rank: usize,
    pub unfrozen: Vec<usize>,
    pub d: Vec<i64>,
    pub skew: Vec<Vec<String>>,
    pub coefficients: Coefficients,
    pub labels: Vec<String>,
    /// Compatible Λ for the quantum 𝒜 side; synthesized when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<String>>>,
    /// Degree weights on N⁺ for scattering truncation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct LoadedSeed {
    pub seed: Seed,
    pub principal: bool,
    pub lambda: Option<Vec<Vec<Rational>>>,
    pub degree: Option<Vec<i64>>,
}

/// Parses "p/q" in lowest terms, or an integer "p".
pub fn parse_fraction(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i64 = p.parse().with_context(|| format!("bad fraction {s:?}"))?;
    let q: i64 = q.parse().with_context(|| format!("bad fraction {s:?}"))?;
    ensure!(q > 0, "fraction {s:?} needs a positive denominator");
    let r = Rational::new(p, q);
    ensure!(*r.numer() == p && *r.denom() == q, "fraction {s:?} is not in lowest terms");
    Ok(r)
}

pub fn render_fraction(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Comma-separated list of fractions, e.g. "1/3,-2".
pub fn parse_fraction_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_fraction).collect()
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|x| x.trim().parse::<i64>().with_context(|| format!("bad integer {x:?}"))).collect()
}

fn matrix(rows: &[Vec<String>], n: usize, what: &str) -> Result<Vec<Vec<Rational>>> {
    ensure!(rows.len() == n && rows.iter().all(|r| r.len() == n), "{what} must be {n}×{n}");
    rows.iter().map(|r| r.iter().map(|x| parse_fraction(x)).collect()).collect()
}

fn render_matrix(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(render_fraction).collect()).collect()
}

impl SeedFile {
    pub fn load(path: &Path) -> Result<LoadedSeed> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: SeedFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        file.build()
    }

    pub fn build(&self) -> Result<LoadedSeed> {
        let n = self.rank;
        ensure!(n > 0, "rank must be positive");
        ensure!(self.d.len() == n, "d has {} entries for rank {n}", self.d.len());
        ensure!(self.labels.len() == n, "labels has {} entries for rank {n}", self.labels.len());
        let skew = matrix(&self.skew, n, "skew")?;
        let mut unfrozen = Vec::new();
        for &i in &self.unfrozen {
            ensure!((1..=n).contains(&i), "unfrozen index {i} out of range 1..={n}");
            unfrozen.push(i - 1);
        }
        let fixed = FixedData::new(skew, self.d.clone(), &unfrozen)?.with_labels(self.labels.clone());
        let seed = Seed::initial(fixed);
        let lambda = match &self.lambda {
            Some(rows) => {
                let l = matrix(rows, n, "lambda")?;
                check_compatible_pair(&l, &seed)?;
                Some(l)
            }
            None => None,
        };
        if let Some(w) = &self.degree {
            ensure!(w.len() == n && w.iter().all(|x| *x > 0), "degree needs {n} positive weights");
        }
        Ok(LoadedSeed {
            seed,
            principal: self.coefficients == Coefficients::Principal,
            lambda,
            degree: self.degree.clone(),
        })
    }

    /// The chart of a mutated seed as a fresh seed file: the form is written in the new basis.
    pub fn from_seed(seed: &Seed, coefficients: Coefficients, lambda: Option<&[Vec<Rational>]>) -> Self {
        let fixed = seed.fixed();
        SeedFile {
            rank: seed.rank(),
            unfrozen: fixed.unfrozen().iter().map(|i| i + 1).collect(),
            d: fixed.d().to_vec(),
            skew: render_matrix(&seed.epsilon_hat()),
            coefficients,
            labels: fixed.labels().to_vec(),
            lambda: lambda.map(render_matrix),
            degree: None,
        }
    }
}

/// 1-based direction list, e.g. "2,1,2" → [1, 0, 1].
pub fn parse_sequence(s: &str, seed: &Seed) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for x in s.split(',') {
        let k: usize = x.trim().parse().with_context(|| format!("bad direction {x:?}"))?;
        if k == 0 || k > seed.rank() {
            bail!("direction {k} out of range 1..={}", seed.rank());
        }
        if !seed.fixed().is_unfrozen(k - 1) {
            bail!("direction {k} is frozen");
        }
        out.push(k - 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("-2/3").unwrap(), Rational::new(-2, 3));
        assert_eq!(parse_fraction("4").unwrap(), Rational::from_integer(4));
        assert!(parse_fraction("2/4").is_err());
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("1/-2").is_err());
        assert!(parse_fraction("0.5").is_err());
        assert_eq!(render_fraction(&Rational::new(-2, 3)), "-2/3");
    }

    #[test]
    fn rejects_unknown_fields_and_bad_shapes() {
        let ok = r#"{"rank":2,"unfrozen":[1,2],"d":[1,1],"skew":[["0","-1"],["1","0"]],"coefficients":"principal","labels":["X1","X2"]}"#;
        let f: SeedFile = serde_json::from_str(ok).unwrap();
        assert!(f.build().unwrap().principal);
        let extra = ok.replace("\"rank\"", "\"colour\":1,\"rank\"");
        assert!(serde_json::from_str::<SeedFile>(&extra).is_err());
        let mut bad = f.clone();
        bad.unfrozen = vec![0];
        assert!(bad.build().is_err());
        let mut bad = f;
        bad.skew[0][1] = "1".into();
        assert!(bad.build().is_err());
    }
}
