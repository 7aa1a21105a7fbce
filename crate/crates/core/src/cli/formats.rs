//! JSON records for algebras and quivers with potential.
//!
//! Paths are lists of arrow names in traversal order; coefficients are
//! rational strings such as `"-3/2"`.

use std::collections::BTreeMap;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pathalg::{Path, PathPoly, Presentation, Quiver};
use crate::qp::GradedQP;
use crate::rational::{format_q, parse_q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowRecord {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// `[coefficient, [arrow names]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord(pub String, pub Vec<String>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowRecord>,
    pub relations: Vec<Vec<TermRecord>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowRecord>,
    pub degree: BTreeMap<String, i64>,
    pub potential: Vec<TermRecord>,
    #[serde(rename = "dW")]
    pub dw: i64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

fn arrow_records(q: &Quiver) -> Vec<ArrowRecord> {
    q.arrows
        .iter()
        .map(|a| ArrowRecord {
            name: a.name.clone(),
            source: q.vertices[a.source].clone(),
            target: q.vertices[a.target].clone(),
        })
        .collect()
}

fn terms(q: &Quiver, f: &PathPoly) -> Vec<TermRecord> {
    f.terms()
        .map(|(p, c)| TermRecord(format_q(c), p.arrows.iter().map(|&a| q.arrows[a].name.clone()).collect()))
        .collect()
}

fn build_quiver(vertices: &[String], arrows: &[ArrowRecord]) -> Result<Quiver> {
    let mut q = Quiver::new(vertices.to_vec());
    for a in arrows {
        let v = |name: &str| q.vertex_index(name).ok_or_else(|| Error::Parse(format!("unknown vertex {name:?}")));
        let (s, t) = (v(&a.source)?, v(&a.target)?);
        if q.arrow_index(&a.name).is_some() {
            return Err(Error::Parse(format!("duplicate arrow {:?}", a.name)));
        }
        q.add_arrow(a.name.clone(), s, t)?;
    }
    Ok(q)
}

fn parse_terms(q: &Quiver, ts: &[TermRecord]) -> Result<PathPoly> {
    let mut f = PathPoly::zero();
    for TermRecord(c, names) in ts {
        if names.is_empty() {
            return Err(Error::Parse("relation terms must be nonempty paths".into()));
        }
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let p: Path = q.path_by_names(&names)?;
        f.add_term(p, parse_q(c)?);
    }
    Ok(f)
}

impl AlgebraFile {
    pub fn from_presentation(a: &Presentation) -> Self {
        AlgebraFile {
            vertices: a.quiver.vertices.clone(),
            arrows: arrow_records(&a.quiver),
            relations: a.relations.iter().map(|r| terms(&a.quiver, r)).collect(),
            meta: BTreeMap::new(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        let q = build_quiver(&self.vertices, &self.arrows)?;
        let rels = self.relations.iter().map(|r| parse_terms(&q, r)).collect::<Result<Vec<_>>>()?;
        let p = Presentation::new(q, rels);
        p.validate()?;
        Ok(p)
    }
}

impl QpFile {
    pub fn from_qp(p: &GradedQP) -> Self {
        let q = &p.quiver;
        QpFile {
            vertices: q.vertices.clone(),
            arrows: arrow_records(q),
            degree: q.arrows.iter().zip(&p.degrees).map(|(a, &d)| (a.name.clone(), d)).collect(),
            potential: terms(q, &p.potential),
            dw: p.dw,
            meta: BTreeMap::new(),
        }
    }

    pub fn to_qp(&self) -> Result<GradedQP> {
        let q = build_quiver(&self.vertices, &self.arrows)?;
        let degrees = q
            .arrows
            .iter()
            .map(|a| {
                self.degree.get(&a.name).copied().ok_or_else(|| Error::Parse(format!("no degree for arrow {:?}", a.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        let w = parse_terms(&q, &self.potential)?;
        GradedQP::new_unreduced(q, degrees, w, self.dw)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &FsPath) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &FsPath, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}
