//! Breadth-first closure of a quiver with potential under mutation along
//! Nakayama orbits.
//!
//! Nodes are identified up to relabeling of vertices by the ungraded quiver
//! together with the Cartan matrix of the Jacobian algebra. Repeated left
//! mutation keeps shifting the grading, so graded identification would never
//! close up.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::formats::QpFile;
use crate::canon::{canonical_form, Certificate};
use crate::error::{Error, Result};
use crate::pathalg::{nakayama_permutation, Quotient};
use crate::qp::{GradedQP, Side};

#[derive(Clone, Debug, Serialize)]
pub struct ExchangeNode {
    pub id: usize,
    pub jacobian_dim: Option<usize>,
    pub selfinjective: bool,
    pub nakayama: Option<Vec<usize>>,
    pub orbits: Vec<Vec<usize>>,
    pub qp: QpFile,
    #[serde(skip)]
    pub value: GradedQP,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExchangeEdge {
    pub from: usize,
    pub to: usize,
    pub orbit: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExchangeGraph {
    pub nodes: Vec<ExchangeNode>,
    pub edges: Vec<ExchangeEdge>,
    /// Some neighbour was not added because of the node limit.
    pub truncated: bool,
    pub warnings: Vec<String>,
    pub identification: String,
    pub cap: usize,
}

type Key = (Option<usize>, Certificate<u8, (usize, usize)>);

struct Analyzed {
    qp: GradedQP,
    key: Key,
    dim: Option<usize>,
    nakayama: Option<Vec<usize>>,
    note: Option<String>,
}

fn analyze(qp: GradedQP, cap: usize) -> Result<Analyzed> {
    let n = qp.quiver.n();
    let arrows = qp.quiver.arrow_matrix();
    let (dim, cartan, nakayama, note) = match qp.jacobian(cap) {
        Ok(Quotient::Finite(fd)) => {
            let pi = match nakayama_permutation(&fd) {
                Ok(pi) => Some(pi),
                Err(Error::NotSelfinjective) => None,
                Err(e) => return Err(e),
            };
            (Some(fd.dim()), fd.cartan(), pi, None)
        }
        Ok(Quotient::Infinite { .. }) => (None, vec![vec![0; n]; n], None, Some("Jacobian algebra is infinite-dimensional".to_string())),
        Err(e @ (Error::CapExceeded { .. } | Error::Budget(_))) => (None, vec![vec![0; n]; n], None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let weights: Vec<Vec<(usize, usize)>> =
        (0..n).map(|i| (0..n).map(|j| (arrows[i][j], cartan[i][j])).collect()).collect();
    let cert = canonical_form(&vec![0u8; n], &weights)?.0;
    Ok(Analyzed { qp, key: (dim, cert), dim, nakayama, note })
}

/// Orbits of the Nakayama permutation, or singletons when there is none.
fn orbits(n: usize, pi: Option<&Vec<usize>>) -> Vec<Vec<usize>> {
    let Some(pi) = pi else {
        return (0..n).map(|i| vec![i]).collect();
    };
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            orbit.push(j);
            j = pi[j];
        }
        out.push(orbit);
    }
    out
}

pub fn explore(start: &GradedQP, max_nodes: usize, cap: usize) -> Result<ExchangeGraph> {
    let limit = max_nodes.max(1);
    let mut graph = ExchangeGraph {
        nodes: Vec::new(),
        edges: Vec::new(),
        truncated: false,
        warnings: Vec::new(),
        identification: "vertex relabeling of the ungraded quiver plus Cartan matrix of the Jacobian algebra".into(),
        cap,
    };
    let mut index: HashMap<Key, usize> = HashMap::new();
    let push = |graph: &mut ExchangeGraph, index: &mut HashMap<Key, usize>, a: Analyzed| -> usize {
        let id = graph.nodes.len();
        if let Some(note) = a.note {
            graph.warnings.push(format!("node {id}: {note}"));
        }
        let orbits = orbits(a.qp.quiver.n(), a.nakayama.as_ref());
        graph.nodes.push(ExchangeNode {
            id,
            jacobian_dim: a.dim,
            selfinjective: a.nakayama.is_some(),
            nakayama: a.nakayama,
            orbits,
            qp: QpFile::from_qp(&a.qp),
            value: a.qp,
        });
        index.insert(a.key, id);
        id
    };
    let first = analyze(start.clone(), cap)?;
    if first.nakayama.is_none() {
        graph.warnings.push("start is not selfinjective; mutating at single vertices".into());
    }
    push(&mut graph, &mut index, first);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        // mutate the whole level in parallel, then merge in a fixed order
        let jobs: Vec<(usize, Vec<usize>)> = frontier
            .iter()
            .flat_map(|&id| graph.nodes[id].orbits.iter().map(move |o| (id, o.clone())))
            .collect();
        let results: Vec<(usize, Vec<usize>, Result<Analyzed>)> = jobs
            .into_par_iter()
            .map(|(id, orbit)| {
                let r = graph.nodes[id].value.mutate_orbit(&orbit, Side::Left).and_then(|m| analyze(m, cap));
                (id, orbit, r)
            })
            .collect();
        let mut next = Vec::new();
        for (id, orbit, r) in results {
            let names: Vec<String> = orbit.iter().map(|&k| graph.nodes[id].value.quiver.vertices[k].clone()).collect();
            let a = match r {
                Ok(a) => a,
                Err(e @ (Error::Domain(_) | Error::CapExceeded { .. } | Error::Budget(_))) => {
                    graph.warnings.push(format!("node {id}, orbit {names:?}: {e}"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let to = match index.get(&a.key) {
                Some(&to) => to,
                None if graph.nodes.len() < limit => {
                    let to = push(&mut graph, &mut index, a);
                    next.push(to);
                    to
                }
                None => {
                    graph.truncated = true;
                    continue;
                }
            };
            graph.edges.push(ExchangeEdge { from: id, to, orbit: names });
        }
        frontier = next;
    }
    Ok(graph)
}

impl ExchangeGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph exchange {\n");
        for n in &self.nodes {
            let dim = n.jacobian_dim.map_or("?".to_string(), |d| d.to_string());
            let _ = writeln!(
                s,
                "  n{} [label=\"{}\\ndim {}{}\"];",
                n.id,
                n.id,
                dim,
                if n.selfinjective { "" } else { "\\nnot selfinjective" }
            );
        }
        for e in &self.edges {
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.orbit.join(",").replace('"', "\\\""));
        }
        if self.truncated {
            s.push_str("  truncated [shape=plaintext,label=\"truncated\"];\n");
        }
        s.push_str("}\n");
        s
    }
}
