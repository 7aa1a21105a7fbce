//! Minimal generating sets of admissible ideals.
//!
//! A family of relations is minimal when its members at each vertex pair are
//! linearly independent modulo `IJ + JI`. Everything of length beyond the
//! longest nonzero normal word plus one lies in `IJ + JI`, so the computation
//! happens in the truncated path algebra.

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use super::fd::{fd_quotient, Quotient};
use super::{Presentation, Quiver};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rational::Q;

const MAX_PATHS: usize = 100_000;

struct Truncated {
    /// per (s, t): the paths of length 2..=max
    words: HashMap<(usize, usize), Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
    max: usize,
}

impl Truncated {
    fn new(q: &Quiver, max: usize) -> Result<Self> {
        let mut words: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
        let mut index = HashMap::new();
        let mut frontier: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
        let mut total = 0;
        for _len in 2..=max {
            let mut next = Vec::new();
            for w in &frontier {
                let t = q.arrows[*w.last().unwrap()].target;
                for a in q.arrows_from(t) {
                    let mut w2 = w.clone();
                    w2.push(a);
                    let key = (q.arrows[w2[0]].source, q.arrows[a].target);
                    let list = words.entry(key).or_default();
                    index.insert(w2.clone(), list.len());
                    list.push(w2.clone());
                    next.push(w2);
                }
            }
            total += next.len();
            if total > MAX_PATHS {
                return Err(Error::Budget(format!("more than {MAX_PATHS} paths below the truncation length")));
            }
            frontier = next;
        }
        Ok(Truncated { words, index, max })
    }

    fn dim(&self, key: (usize, usize)) -> usize {
        self.words.get(&key).map_or(0, Vec::len)
    }

    fn word(&self, key: (usize, usize), i: usize) -> &[usize] {
        &self.words[&key][i]
    }

    /// Multiplies a vector at `key` by an arrow on the left or right.
    fn shift(&self, q: &Quiver, key: (usize, usize), v: &[Q], arrow: usize, left: bool) -> Option<((usize, usize), Vec<Q>)> {
        let arr = &q.arrows[arrow];
        let new_key = if left {
            if arr.target != key.0 {
                return None;
            }
            (arr.source, key.1)
        } else {
            if arr.source != key.1 {
                return None;
            }
            (key.0, arr.target)
        };
        let mut out = vec![Q::zero(); self.dim(new_key)];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = self.word(key, i);
            if w.len() + 1 > self.max {
                continue;
            }
            let mut w2 = Vec::with_capacity(w.len() + 1);
            if left {
                w2.push(arrow);
                w2.extend_from_slice(w);
            } else {
                w2.extend_from_slice(w);
                w2.push(arrow);
            }
            out[self.index[&w2]] += *c;
        }
        Some((new_key, out))
    }
}

/// Selects a minimal generating subfamily of the relations (in input order).
pub fn minimal_relations(a: &Presentation) -> Result<Presentation> {
    a.validate()?;
    let fd = match fd_quotient(a, super::DEFAULT_CAP)? {
        Quotient::Finite(fd) => fd,
        Quotient::Infinite { .. } => {
            return Err(Error::Domain("relations do not define a finite-dimensional algebra".into()))
        }
    };
    let q = &a.quiver;
    let tr = Truncated::new(q, fd.max_len() + 1)?;
    let vec_of = |r: &super::PathPoly| -> ((usize, usize), Vec<Q>) {
        let key = r.endpoints().expect("validated");
        let mut v = vec![Q::zero(); tr.dim(key)];
        for (p, c) in r.terms() {
            if p.len() <= tr.max {
                v[tr.index[&p.arrows]] += *c;
            }
        }
        (key, v)
    };
    // the ideal, as a subspace per vertex pair
    let mut ideal: HashMap<(usize, usize), Echelon> = HashMap::new();
    let mut queue: VecDeque<((usize, usize), Vec<Q>)> = a.relations.iter().map(vec_of).collect();
    while let Some((key, v)) = queue.pop_front() {
        let e = ideal.entry(key).or_insert_with(|| Echelon::new(tr.dim(key)));
        if !e.insert(v.clone()) {
            continue;
        }
        for arrow in 0..q.arrows.len() {
            for left in [true, false] {
                if let Some(s) = tr.shift(q, key, &v, arrow, left) {
                    queue.push_back(s);
                }
            }
        }
    }
    // IJ + JI
    let mut decomposable: HashMap<(usize, usize), Echelon> = HashMap::new();
    for (&key, e) in &ideal {
        for row in e.rows() {
            for arrow in 0..q.arrows.len() {
                for left in [true, false] {
                    if let Some((k2, v2)) = tr.shift(q, key, row, arrow, left) {
                        decomposable.entry(k2).or_insert_with(|| Echelon::new(tr.dim(k2))).insert(v2);
                    }
                }
            }
        }
    }
    let mut chosen = Vec::new();
    for r in &a.relations {
        let (key, v) = vec_of(r);
        let e = decomposable.entry(key).or_insert_with(|| Echelon::new(tr.dim(key)));
        if e.insert(v) {
            chosen.push(r.clone());
        }
    }
    Ok(Presentation::new(a.quiver.clone(), chosen))
}
