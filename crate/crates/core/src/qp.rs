//! Graded quivers with potential: cyclic derivatives, Jacobian algebras,
//! truncation, premutation, 2-cycle reduction and graded mutation.
//!
//! Potential terms are cycles stored in their lexicographically smallest
//! rotation, so equal cycles merge. For a left mutation at `k`, an incoming
//! arrow `a: i -> k` and an outgoing arrow `b: k -> j` produce `[b.a]: i -> j`
//! of degree `d(a) + d(b)`, the reversed `a*: k -> i` of degree
//! `d(W) - d(a)` and `b*: j -> k` of degree `-d(b)`; the right mutation moves
//! `d(W)` from `a*` to `b*`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::pathalg::{fd_quotient, gldim, minimal_relations, GlDim, Path, PathPoly, Presentation, Quiver, Quotient};
use crate::rational::Q;

/// Longest potential term allowed during reduction.
const MAX_TERM_LEN: usize = 48;
const MAX_REDUCTION_ROUNDS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQP {
    pub quiver: Quiver,
    pub degrees: Vec<i64>,
    pub potential: PathPoly,
    pub dw: i64,
}

/// Rotation of a cycle with the smallest arrow sequence.
pub fn canonical_cycle(q: &Quiver, arrows: &[usize]) -> Path {
    let n = arrows.len();
    let best = (0..n)
        .map(|r| arrows[r..].iter().chain(&arrows[..r]).copied().collect::<Vec<_>>())
        .min()
        .expect("nonempty cycle");
    let v = q.arrows[best[0]].source;
    Path { src: v, tgt: v, arrows: best }
}

fn canonicalize(q: &Quiver, w: &PathPoly) -> PathPoly {
    PathPoly::from_terms(w.terms().map(|(p, c)| (canonical_cycle(q, &p.arrows), *c)))
}

/// `d_a` applied to a combination of cycles.
pub fn cyclic_derivative(q: &Quiver, w: &PathPoly, a: usize) -> PathPoly {
    let arr = &q.arrows[a];
    let mut out = PathPoly::zero();
    for (p, c) in w.terms() {
        let d = p.arrows.len();
        for i in 0..d {
            if p.arrows[i] != a {
                continue;
            }
            let rest: Vec<usize> = p.arrows[i + 1..].iter().chain(&p.arrows[..i]).copied().collect();
            out.add_term(Path { src: arr.target, tgt: arr.source, arrows: rest }, *c);
        }
    }
    out
}

impl GradedQP {
    pub fn new(quiver: Quiver, degrees: Vec<i64>, potential: PathPoly, dw: i64) -> Result<Self> {
        let qp = GradedQP::new_unreduced(quiver, degrees, potential, dw)?;
        qp.check_quiver()?;
        Ok(qp)
    }

    /// As `new`, but loops and 2-cycles in the quiver are allowed. Such a QP
    /// has a Jacobian algebra but cannot be mutated at the offending vertices.
    pub fn new_unreduced(quiver: Quiver, degrees: Vec<i64>, potential: PathPoly, dw: i64) -> Result<Self> {
        if degrees.len() != quiver.arrows.len() {
            return domain("one degree per arrow required");
        }
        for (p, _) in potential.terms() {
            if !p.is_cycle() || p.is_empty() {
                return domain("potential term is not a cycle");
            }
            quiver.path(&p.arrows)?;
        }
        let potential = canonicalize(&quiver, &potential);
        let qp = GradedQP { quiver, degrees, potential, dw };
        qp.check_homogeneous()?;
        Ok(qp)
    }

    fn check_quiver(&self) -> Result<()> {
        let m = self.quiver.arrow_matrix();
        for i in 0..self.quiver.n() {
            if m[i][i] > 0 {
                return domain(format!("loop at vertex {}", self.quiver.vertices[i]));
            }
            for j in 0..i {
                if m[i][j] > 0 && m[j][i] > 0 {
                    return domain(format!(
                        "2-cycle between {} and {}",
                        self.quiver.vertices[i], self.quiver.vertices[j]
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_homogeneous(&self) -> Result<()> {
        for (p, _) in self.potential.terms() {
            if self.path_degree(p) != self.dw {
                return domain(format!("potential term {} has the wrong degree", self.quiver.path_text(p)));
            }
        }
        Ok(())
    }

    pub fn path_degree(&self, p: &Path) -> i64 {
        p.arrows.iter().map(|&a| self.degrees[a]).sum()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.check_homogeneous().is_ok()
    }

    /// No loops and no 2-cycles.
    pub fn is_reduced_quiver(&self) -> bool {
        self.check_quiver().is_ok()
    }

    pub fn derivative(&self, a: usize) -> PathPoly {
        cyclic_derivative(&self.quiver, &self.potential, a)
    }

    /// `(Q, {d_a W})`.
    pub fn jacobian_presentation(&self) -> Presentation {
        let rels = (0..self.quiver.arrows.len()).map(|a| self.derivative(a)).filter(|r| !r.is_zero()).collect();
        Presentation::new(self.quiver.clone(), rels)
    }

    /// Degree-zero arrows modulo `d_a W` for the arrows of degree one.
    pub fn truncated_jacobian(&self) -> Result<Presentation> {
        if self.dw != 1 {
            return domain(format!("truncation needs d(W) = 1, got {}", self.dw));
        }
        let keep: Vec<usize> = (0..self.quiver.arrows.len()).filter(|&a| self.degrees[a] == 0).collect();
        let mut new_index = vec![None; self.quiver.arrows.len()];
        let mut q = Quiver::new(self.quiver.vertices.clone());
        for &a in &keep {
            let arr = &self.quiver.arrows[a];
            new_index[a] = Some(q.add_arrow(arr.name.clone(), arr.source, arr.target)?);
        }
        let mut rels = Vec::new();
        for a in 0..self.quiver.arrows.len() {
            if self.degrees[a] != 1 {
                continue;
            }
            let mut r = PathPoly::zero();
            for (p, c) in self.derivative(a).terms() {
                let mapped: Option<Vec<usize>> = p.arrows.iter().map(|&x| new_index[x]).collect();
                if let Some(arrows) = mapped {
                    r.add_term(Path { src: p.src, tgt: p.tgt, arrows }, *c);
                }
            }
            if !r.is_zero() {
                rels.push(r);
            }
        }
        Ok(Presentation::new(q, rels))
    }

    /// Truncation has global dimension at most two and its relations are minimal.
    pub fn is_algebraic(&self, cap: usize) -> Result<bool> {
        let t = self.truncated_jacobian()?;
        let fd = match fd_quotient(&t, cap)? {
            Quotient::Finite(fd) => fd,
            Quotient::Infinite { .. } => return Ok(false),
        };
        match gldim(&fd, 2) {
            GlDim::Finite(d) if d <= 2 => {}
            _ => return Ok(false),
        }
        Ok(minimal_relations(&t)?.relations.len() == t.relations.len())
    }

    pub fn premutate(&self, k: usize, side: Side) -> Result<GradedQP> {
        let q = &self.quiver;
        if k >= q.n() {
            return domain("vertex out of range");
        }
        if q.arrows.iter().any(|a| a.source == k && a.target == k) {
            return domain("cannot mutate at a vertex with a loop");
        }
        let m = q.arrow_matrix();
        if (0..q.n()).any(|j| m[k][j] > 0 && m[j][k] > 0) {
            return domain(format!("cannot mutate at {}: it lies on a 2-cycle", q.vertices[k]));
        }
        let incoming: Vec<usize> = q.arrows_to(k).collect();
        let outgoing: Vec<usize> = q.arrows_from(k).collect();
        let mut nq = Quiver::new(q.vertices.clone());
        let mut degrees = Vec::new();
        let mut names: BTreeSet<String> = BTreeSet::new();
        let fresh = |base: String, names: &mut BTreeSet<String>| {
            let mut s = base;
            while names.contains(&s) {
                s.push('\'');
            }
            names.insert(s.clone());
            s
        };
        let mut old_to_new = vec![usize::MAX; q.arrows.len()];
        for (a, arr) in q.arrows.iter().enumerate() {
            if arr.source != k && arr.target != k {
                let name = fresh(arr.name.clone(), &mut names);
                old_to_new[a] = nq.add_arrow(name, arr.source, arr.target)?;
                degrees.push(self.degrees[a]);
            }
        }
        let mut composite = BTreeMap::new();
        for &a in &incoming {
            for &b in &outgoing {
                let (aa, bb) = (&q.arrows[a], &q.arrows[b]);
                let name = fresh(format!("[{}.{}]", bb.name, aa.name), &mut names);
                composite.insert((a, b), nq.add_arrow(name, aa.source, bb.target)?);
                degrees.push(self.degrees[a] + self.degrees[b]);
            }
        }
        let star = |s: &str| match s.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{s}*"),
        };
        let mut reversed = BTreeMap::new();
        for &a in &incoming {
            let arr = &q.arrows[a];
            let name = fresh(star(&arr.name), &mut names);
            reversed.insert(a, nq.add_arrow(name, k, arr.source)?);
            degrees.push(match side {
                Side::Left => self.dw - self.degrees[a],
                Side::Right => -self.degrees[a],
            });
        }
        for &b in &outgoing {
            let arr = &q.arrows[b];
            let name = fresh(star(&arr.name), &mut names);
            reversed.insert(b, nq.add_arrow(name, arr.target, k)?);
            degrees.push(match side {
                Side::Left => -self.degrees[b],
                Side::Right => self.dw - self.degrees[b],
            });
        }
        let mut w = PathPoly::zero();
        for (p, c) in self.potential.terms() {
            let n = p.arrows.len();
            let start = (0..n).find(|&i| q.arrows[p.arrows[i]].source != k).expect("no loops");
            let rot: Vec<usize> = p.arrows[start..].iter().chain(&p.arrows[..start]).copied().collect();
            let mut out = Vec::with_capacity(n);
            let mut i = 0;
            while i < n {
                let x = rot[i];
                if q.arrows[x].target == k {
                    out.push(composite[&(x, rot[i + 1])]);
                    i += 2;
                } else {
                    out.push(old_to_new[x]);
                    i += 1;
                }
            }
            w.add_term(canonical_cycle(&nq, &out), *c);
        }
        for (&(a, b), &ba) in &composite {
            w.add_term(canonical_cycle(&nq, &[ba, reversed[&b], reversed[&a]]), Q::one());
        }
        let out = GradedQP { quiver: nq, degrees, potential: w, dw: self.dw };
        out.check_homogeneous()?;
        Ok(out)
    }

    pub fn premutate_left(&self, k: usize) -> Result<GradedQP> {
        self.premutate(k, Side::Left)
    }

    pub fn premutate_right(&self, k: usize) -> Result<GradedQP> {
        self.premutate(k, Side::Right)
    }

    /// Removes 2-cycle terms of the potential by substitutions of arrows.
    pub fn reduce(&self) -> Result<GradedQP> {
        let mut cur = self.clone();
        while let Some((a, b, c)) = cur.first_two_cycle() {
            cur = cur.eliminate(a, b, c)?;
        }
        cur.check_homogeneous()?;
        Ok(cur)
    }

    fn first_two_cycle(&self) -> Option<(usize, usize, Q)> {
        self.potential
            .terms()
            .filter(|(p, _)| p.len() == 2)
            .map(|(p, c)| (p.arrows[0], p.arrows[1], *c))
            .min_by_key(|&(a, b, _)| (a, b))
    }

    fn terms_with(&self, x: usize, a: usize, b: usize) -> PathPoly {
        // sum of kappa * u over terms kappa * (x u) other than the cycle ab
        let q = &self.quiver;
        let arr = &q.arrows[x];
        let mut u = PathPoly::zero();
        for (p, c) in self.potential.terms() {
            if p.len() == 2 && ((p.arrows[0] == a && p.arrows[1] == b) || (p.arrows[0] == b && p.arrows[1] == a)) {
                continue;
            }
            if let Some(i) = p.arrows.iter().position(|&y| y == x) {
                let rest: Vec<usize> = p.arrows[i + 1..].iter().chain(&p.arrows[..i]).copied().collect();
                u.add_term(Path { src: arr.target, tgt: arr.source, arrows: rest }, *c);
            }
        }
        u
    }

    fn substitute(&self, x: usize, replacement: &PathPoly) -> Result<PathPoly> {
        let q = &self.quiver;
        let mut w = PathPoly::zero();
        for (p, c) in self.potential.terms() {
            let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), *c)];
            for &y in &p.arrows {
                let mut next = Vec::new();
                for (pre, k) in partial {
                    if y == x {
                        for (r, rc) in replacement.terms() {
                            let mut v = pre.clone();
                            v.extend_from_slice(&r.arrows);
                            next.push((v, k * rc));
                        }
                    }
                    let mut v = pre;
                    v.push(y);
                    next.push((v, k));
                }
                partial = next;
            }
            for (arrows, k) in partial {
                if arrows.len() > MAX_TERM_LEN {
                    return Err(Error::CapExceeded { cap: MAX_TERM_LEN, detail: "potential term grew during reduction".into() });
                }
                w.add_term(canonical_cycle(q, &arrows), k);
            }
        }
        Ok(w)
    }

    fn eliminate(&self, a: usize, b: usize, c: Q) -> Result<GradedQP> {
        let mut cur = self.clone();
        let mut rounds = 0;
        loop {
            let u = cur.terms_with(a, a, b);
            if u.is_zero() {
                break;
            }
            rounds += 1;
            if rounds > MAX_REDUCTION_ROUNDS {
                return Err(Error::CapExceeded { cap: MAX_REDUCTION_ROUNDS, detail: "2-cycle elimination does not settle".into() });
            }
            // b -> b - U/c cancels every other term through a
            cur.potential = cur.substitute(b, &u.scaled(-c.recip()))?;
        }
        let v = cur.terms_with(b, a, b);
        if !v.is_zero() {
            cur.potential = cur.substitute(a, &v.scaled(-c.recip()))?;
        }
        let ab = canonical_cycle(&cur.quiver, &[a, b]);
        let rest = cur.potential.sub(&PathPoly::term(ab, cur.potential.coeff(&canonical_cycle(&cur.quiver, &[a, b]))));
        if rest.terms().any(|(p, _)| p.arrows.iter().any(|&y| y == a || y == b)) {
            return Err(Error::Internal("2-cycle elimination left the arrows in the potential".into()));
        }
        // delete a and b
        let mut q = Quiver::new(cur.quiver.vertices.clone());
        let mut degrees = Vec::new();
        let mut map = vec![usize::MAX; cur.quiver.arrows.len()];
        for (x, arr) in cur.quiver.arrows.iter().enumerate() {
            if x != a && x != b {
                map[x] = q.add_arrow(arr.name.clone(), arr.source, arr.target)?;
                degrees.push(cur.degrees[x]);
            }
        }
        let mut w = PathPoly::zero();
        for (p, k) in rest.terms() {
            let arrows: Vec<usize> = p.arrows.iter().map(|&y| map[y]).collect();
            w.add_term(canonical_cycle(&q, &arrows), *k);
        }
        Ok(GradedQP { quiver: q, degrees, potential: w, dw: cur.dw })
    }

    pub fn mutate(&self, k: usize, side: Side) -> Result<GradedQP> {
        let m = self.premutate(k, side)?.reduce()?;
        if !m.is_reduced_quiver() {
            return Err(Error::Domain(format!(
                "mutation at {} leaves a 2-cycle in the quiver",
                self.quiver.vertices[k]
            )));
        }
        Ok(m)
    }

    pub fn mutate_left(&self, k: usize) -> Result<GradedQP> {
        self.mutate(k, Side::Left)
    }

    pub fn mutate_right(&self, k: usize) -> Result<GradedQP> {
        self.mutate(k, Side::Right)
    }

    /// Mutation at each vertex of an orbit of pairwise non-adjacent vertices.
    pub fn mutate_orbit(&self, orbit: &[usize], side: Side) -> Result<GradedQP> {
        let m = self.quiver.arrow_matrix();
        for &i in orbit {
            for &j in orbit {
                if i != j && (m[i][j] > 0 || m[j][i] > 0) {
                    return domain(format!(
                        "orbit vertices {} and {} are adjacent",
                        self.quiver.vertices[i], self.quiver.vertices[j]
                    ));
                }
            }
        }
        let mut cur = self.clone();
        for &k in orbit {
            cur = cur.mutate(k, side)?;
        }
        Ok(cur)
    }

    pub fn jacobian(&self, cap: usize) -> Result<Quotient> {
        fd_quotient(&self.jacobian_presentation(), cap)
    }
}
