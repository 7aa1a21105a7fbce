//! Path algebras of finite quivers and their finite-dimensional quotients.
//!
//! Paths are stored in traversal order: `[a, b]` means "first `a`, then `b`",
//! so the product `p * q` of paths is concatenation and is nonzero only when
//! `p` ends where `q` starts. Modules are right modules, i.e. representations
//! with a linear map `M_s -> M_t` for every arrow `s -> t`.

mod fd;
mod groebner;
mod minimal;
mod modules;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::rational::{format_q, Q};

pub use fd::{fd_quotient, FdAlgebra, Quotient};
pub use groebner::{groebner_complete, Rewriting, DEFAULT_CAP};
pub use minimal::minimal_relations;
pub use modules::{
    ext_dims, ext_into_projective, gldim, is_selfinjective, nakayama_permutation, resolve, simple_pdims,
    GlDim, Module, Resolution,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>) -> Self {
        Quiver { vertices, arrows: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: usize, target: usize) -> Result<usize> {
        let name = name.into();
        if source >= self.n() || target >= self.n() {
            return domain(format!("arrow {name} has an endpoint outside the quiver"));
        }
        if self.arrow_index(&name).is_some() {
            return domain(format!("duplicate arrow name {name}"));
        }
        self.arrows.push(Arrow { name, source, target });
        Ok(self.arrows.len() - 1)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_matrix(&self) -> Vec<Vec<usize>> {
        let mut m = vec![vec![0; self.n()]; self.n()];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.n()];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..self.n()).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows_from(v) {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == self.n()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows_from(v).next().is_none()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows_to(v).next().is_none()
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    pub fn path(&self, arrows: &[usize]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return domain("empty arrow list; use Path::vertex");
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return domain(format!(
                    "arrows {} and {} are not composable",
                    self.arrows[w[0]].name, self.arrows[w[1]].name
                ));
            }
        }
        Ok(Path {
            src: self.arrows[first].source,
            tgt: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    pub fn path_by_names(&self, names: &[&str]) -> Result<Path> {
        let idx = names
            .iter()
            .map(|n| self.arrow_index(n).ok_or_else(|| Error::Domain(format!("unknown arrow {n}"))))
            .collect::<Result<Vec<_>>>()?;
        self.path(&idx)
    }

    pub fn path_text(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e[{}]", self.vertices[p.src]);
        }
        p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(" ")
    }

    pub fn poly_text(&self, f: &PathPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        f.terms()
            .map(|(p, c)| format!("({})*{}", format_q(c), self.path_text(p)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A path in traversal order; a path without arrows is the trivial path at `src`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(v: usize) -> Path {
        Path { src: v, tgt: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.tgt != other.src {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { src: self.src, tgt: other.tgt, arrows })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { src: self.tgt, tgt: self.src, arrows }
    }

    pub fn is_cycle(&self) -> bool {
        !self.arrows.is_empty() && self.src == self.tgt
    }
}

/// Finite rational combination of paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PathPoly {
    terms: BTreeMap<Path, Q>,
}

impl PathPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(p, Q::one())
    }

    pub fn term(p: Path, c: Q) -> Self {
        let mut f = Self::zero();
        f.add_term(p, c);
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Path, Q)>) -> Self {
        let mut f = Self::zero();
        for (p, c) in terms {
            f.add_term(p, c);
        }
        f
    }

    pub fn add_term(&mut self, p: Path, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &PathPoly, scale: Q) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), *c * scale);
        }
    }

    pub fn scaled(&self, s: Q) -> PathPoly {
        let mut f = PathPoly::zero();
        f.add_assign(self, s);
        f
    }

    pub fn sub(&self, other: &PathPoly) -> PathPoly {
        let mut f = self.clone();
        f.add_assign(other, -Q::one());
        f
    }

    /// Product in the path algebra (non-composable pairs vanish).
    pub fn mul(&self, other: &PathPoly) -> PathPoly {
        let mut f = PathPoly::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.concat(q) {
                    f.add_term(pq, *a * *b);
                }
            }
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Q)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: &Path) -> Q {
        self.terms.get(p).copied().unwrap_or_else(Q::zero)
    }

    pub fn min_len(&self) -> usize {
        self.terms.keys().map(Path::len).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    /// Common `(source, target)` of all terms, if there is one.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let st = (first.src, first.tgt);
        it.all(|p| (p.src, p.tgt) == st).then_some(st)
    }

    pub fn map_paths(&self, mut f: impl FnMut(&Path) -> Path) -> PathPoly {
        PathPoly::from_terms(self.terms.iter().map(|(p, c)| (f(p), *c)))
    }

    /// Scales so that the first term (in path order) has coefficient one.
    pub fn normalized(&self) -> PathPoly {
        match self.terms.values().next() {
            Some(c) => self.scaled(c.recip()),
            None => self.clone(),
        }
    }
}

impl fmt::Display for PathPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{}*{:?}", format_q(c), p.arrows))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A quiver together with a finite list of relations.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<PathPoly>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<PathPoly>) -> Self {
        Presentation { quiver, relations }
    }

    /// Checks that every relation is nonzero, uses only paths of length at
    /// least two and has a single `(source, target)` pair.
    pub fn validate(&self) -> Result<()> {
        for (k, r) in self.relations.iter().enumerate() {
            if r.is_zero() {
                return domain(format!("relation {k} is zero"));
            }
            if r.min_len() < 2 {
                return domain(format!("relation {k} has a term of length < 2"));
            }
            if r.endpoints().is_none() {
                return domain(format!("relation {k} mixes vertex pairs"));
            }
            for (p, _) in r.terms() {
                self.quiver.path(&p.arrows)?;
            }
        }
        Ok(())
    }

    pub fn opposite(&self) -> Presentation {
        Presentation {
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(|r| r.map_paths(Path::reversed)).collect(),
        }
    }

    /// Number of relations per `(source, target)` pair.
    pub fn relation_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.quiver.n();
        let mut m = vec![vec![0; n]; n];
        for r in &self.relations {
            if let Some((s, t)) = r.endpoints() {
                m[s][t] += 1;
            }
        }
        m
    }
}

#[cfg(test)]
pub(crate) mod test_algebras {
    use super::*;
    use crate::rational::q;

    pub fn path_poly(qv: &Quiver, terms: &[(i128, &[&str])]) -> PathPoly {
        PathPoly::from_terms(terms.iter().map(|(c, names)| (qv.path_by_names(names).unwrap(), q(*c))))
    }

    pub fn linear_a(n: usize) -> Presentation {
        let mut qv = Quiver::new((1..=n).map(|i| i.to_string()).collect());
        for i in 0..n - 1 {
            qv.add_arrow(format!("a{}", i + 1), i, i + 1).unwrap();
        }
        Presentation::new(qv, vec![])
    }

    /// Square 0 -> 1 -> 3, 0 -> 2 -> 3 with relation ab - cd.
    pub fn commutative_square() -> Presentation {
        let mut qv = Quiver::new(vec!["0".into(), "1".into(), "2".into(), "3".into()]);
        qv.add_arrow("a", 0, 1).unwrap();
        qv.add_arrow("b", 1, 3).unwrap();
        qv.add_arrow("c", 0, 2).unwrap();
        qv.add_arrow("d", 2, 3).unwrap();
        let r = path_poly(&qv, &[(1, &["a", "b"]), (-1, &["c", "d"])]);
        Presentation::new(qv, vec![r])
    }

    pub fn kronecker() -> Presentation {
        let mut qv = Quiver::new(vec!["0".into(), "1".into()]);
        qv.add_arrow("a", 0, 1).unwrap();
        qv.add_arrow("b", 0, 1).unwrap();
        Presentation::new(qv, vec![])
    }

    /// Canonical algebra of type (2,2,2,2; lambda) with arrows `xi` out of
    /// vertex 0 and `yi` into the sink.
    pub fn canonical_2222(lambda: i128) -> Presentation {
        let mut qv = Quiver::new(vec!["0".into(), "1".into(), "2".into(), "3".into(), "4".into(), "c".into()]);
        for i in 1..=4 {
            qv.add_arrow(format!("x{i}"), 0, i).unwrap();
            qv.add_arrow(format!("y{i}"), i, 5).unwrap();
        }
        let r3 = path_poly(&qv, &[(1, &["x3", "y3"]), (-1, &["x2", "y2"]), (1, &["x1", "y1"])]);
        let r4 = path_poly(&qv, &[(1, &["x4", "y4"]), (-1, &["x2", "y2"]), (lambda, &["x1", "y1"])]);
        Presentation::new(qv, vec![r3, r4])
    }

    /// Oriented 3-cycle a: 0 -> 1, b: 1 -> 2, c: 2 -> 0 with all paths of length two killed.
    pub fn three_cycle_rad2() -> Presentation {
        let mut qv = Quiver::new(vec!["0".into(), "1".into(), "2".into()]);
        qv.add_arrow("a", 0, 1).unwrap();
        qv.add_arrow("b", 1, 2).unwrap();
        qv.add_arrow("c", 2, 0).unwrap();
        let rels = vec![
            path_poly(&qv, &[(1, &["a", "b"])]),
            path_poly(&qv, &[(1, &["b", "c"])]),
            path_poly(&qv, &[(1, &["c", "a"])]),
        ];
        Presentation::new(qv, rels)
    }

    /// One vertex with a loop and no relations (infinite-dimensional).
    pub fn loop_algebra() -> Presentation {
        let mut qv = Quiver::new(vec!["0".into()]);
        qv.add_arrow("x", 0, 0).unwrap();
        Presentation::new(qv, vec![])
    }
}
