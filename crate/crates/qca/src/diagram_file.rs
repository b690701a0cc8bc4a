//! JSON export and import of scattering diagrams. Scalars are stored rendered
//! and parsed back exactly.

use anyhow::{bail, ensure, Context, Result};
use qca_core::scalars::QScalar;
use qca_core::scatter::{initial_diagram, ScatteringDiagram, Side, Wall, WallKind};
use serde::{Deserialize, Serialize};

use crate::seed_file::{parse_fraction, render_fraction, LoadedSeed};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallRecord {
    pub ray: Vec<i64>,
    pub normal: Vec<i64>,
    /// The support is the whole line through `ray`.
    pub line: bool,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function_terms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_coeffs: Option<Vec<String>>,
    /// q-exponent of a wall that is exactly a quantum dilogarithm.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilog: Option<String>,
    pub incoming: bool,
    /// Human-readable form; ignored on import.
    pub rendered: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramRecord {
    pub side: String,
    pub quantum: bool,
    pub order: usize,
    pub walls: Vec<WallRecord>,
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::A => "A",
        Side::X => "X",
    }
}

fn scalars(v: &[QScalar]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn parse_scalars(v: &[String]) -> Result<Vec<QScalar>> {
    v.iter().map(|s| s.parse::<QScalar>().with_context(|| format!("bad scalar {s:?}"))).collect()
}

impl DiagramRecord {
    pub fn from_diagram(dg: &ScatteringDiagram) -> Self {
        let walls = dg
            .walls()
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let (kind, function_terms, log_coeffs, dilog) = match &w.kind {
                    WallKind::Classical { function } => ("classical", Some(scalars(function)), None, None),
                    WallKind::Quantum { log_coeffs, dilog } => {
                        ("quantum", None, Some(scalars(log_coeffs)), dilog.as_ref().map(render_fraction))
                    }
                };
                WallRecord {
                    ray: w.ray.clone(),
                    normal: w.normal.clone(),
                    line: w.line,
                    kind: kind.into(),
                    function_terms,
                    log_coeffs,
                    dilog,
                    incoming: w.incoming,
                    rendered: dg.render_wall(i),
                }
            })
            .collect();
        DiagramRecord { side: side_name(dg.side()).into(), quantum: dg.is_quantum(), order: dg.order(), walls }
    }

    /// Rebuilds the diagram over the torus and p* of `seed`.
    pub fn to_diagram(&self, seed: &LoadedSeed) -> Result<ScatteringDiagram> {
        let side = match self.side.as_str() {
            "A" => Side::A,
            "X" => Side::X,
            other => bail!("unknown side {other:?}"),
        };
        let mut template = initial_diagram(&seed.seed, side, self.quantum, seed.lambda.as_deref(), self.order)?;
        if let Some(w) = &seed.degree {
            template = template.with_degree(w.clone())?;
        }
        let mut walls = Vec::new();
        for (i, r) in self.walls.iter().enumerate() {
            ensure!(r.ray.len() == 2 && r.normal.len() == 2, "wall {i}: ray and normal need two entries");
            let kind = match (r.kind.as_str(), &r.function_terms, &r.log_coeffs) {
                ("classical", Some(f), None) if !self.quantum => WallKind::Classical { function: parse_scalars(f)? },
                ("quantum", None, Some(l)) if self.quantum => WallKind::Quantum {
                    log_coeffs: parse_scalars(l)?,
                    dilog: r.dilog.as_deref().map(parse_fraction).transpose()?,
                },
                _ => bail!("wall {i}: kind {:?} does not match the diagram or its coefficient field", r.kind),
            };
            walls.push(Wall { normal: r.normal.clone(), ray: r.ray.clone(), line: r.line, kind, incoming: r.incoming });
        }
        Ok(ScatteringDiagram::from_parts(&template, walls, self.order))
    }
}
