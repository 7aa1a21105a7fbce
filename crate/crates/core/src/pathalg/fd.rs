//! Finite-dimensional quotients: normal-word bases and multiplication.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::groebner::{groebner_complete, Rewriting};
use super::{Path, PathPoly, Presentation};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Largest basis we are willing to enumerate.
const MAX_BASIS: usize = 200_000;

/// Sparse vector in the normal-word basis.
pub type SparseVec = Vec<(usize, Q)>;

/// The quotient `kQ / closure(I)` with its normal-word basis.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    presentation: Presentation,
    rw: Rewriting,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    pairs: Vec<Vec<Vec<usize>>>,
    right: Vec<Vec<Option<SparseVec>>>,
    left: Vec<Vec<Option<SparseVec>>>,
    pos: Vec<usize>,
    max_len: usize,
}

#[derive(Clone, Debug)]
pub enum Quotient {
    Finite(Box<FdAlgebra>),
    /// Normal words reach the cap along the powers of `witness`.
    Infinite { witness: Path, cap: usize },
}

impl Quotient {
    pub fn finite(self) -> Option<FdAlgebra> {
        match self {
            Quotient::Finite(a) => Some(*a),
            Quotient::Infinite { .. } => None,
        }
    }
}

/// Decides finite-dimensionality of `kQ / closure(I)` and builds its basis.
pub fn fd_quotient(a: &Presentation, cap: usize) -> Result<Quotient> {
    let rw = groebner_complete(a, cap)?;
    let q = &a.quiver;
    let mut basis: Vec<Path> = (0..q.n()).map(Path::vertex).collect();
    let mut frontier: Vec<Path> = basis.clone();
    let mut len = 0;
    while !frontier.is_empty() {
        if len + 1 == cap {
            // normal words of length cap - 1 exist: no verdict from finiteness
            return match find_witness(&rw, a, &frontier) {
                Some(witness) => Ok(Quotient::Infinite { witness, cap }),
                None => Err(Error::CapExceeded {
                    cap,
                    detail: "normal words reach the cap without a periodic witness".into(),
                }),
            };
        }
        let mut next = Vec::new();
        for p in &frontier {
            for arr in q.arrows_from(p.tgt) {
                let mut w = p.arrows.clone();
                w.push(arr);
                if rw.has_tip_suffix(&w) {
                    continue;
                }
                next.push(Path { src: p.src, tgt: q.arrows[arr].target, arrows: w });
            }
        }
        len += 1;
        if basis.len() + next.len() > MAX_BASIS {
            return match find_witness(&rw, a, &next) {
                Some(witness) => Ok(Quotient::Infinite { witness, cap }),
                None => Err(Error::Budget(format!("more than {MAX_BASIS} normal words"))),
            };
        }
        basis.extend(next.iter().cloned());
        frontier = next;
    }
    let max_len = basis.iter().map(Path::len).max().unwrap_or(0);
    Ok(Quotient::Finite(Box::new(FdAlgebra::build(a.clone(), rw, basis, max_len))))
}

fn find_witness(rw: &Rewriting, a: &Presentation, words: &[Path]) -> Option<Path> {
    let q = &a.quiver;
    for u in words.iter().take(2000) {
        let w = &u.arrows;
        for s in 0..w.len() {
            for l in 1..=(w.len() - s) / 2 {
                let c = &w[s..s + l];
                if q.arrows[c[0]].source != q.arrows[c[l - 1]].target {
                    continue;
                }
                if !(s..w.len()).all(|i| w[i] == w[s + (i - s) % l]) {
                    continue;
                }
                let power: Vec<usize> = c.iter().copied().cycle().take(rw.cap() - 1).collect();
                if rw.is_normal(&power) {
                    return q.path(c).ok();
                }
            }
        }
    }
    None
}

impl FdAlgebra {
    fn build(presentation: Presentation, rw: Rewriting, mut basis: Vec<Path>, max_len: usize) -> Self {
        basis.sort_by(|a, b| (a.src, a.tgt, a.len(), &a.arrows).cmp(&(b.src, b.tgt, b.len(), &b.arrows)));
        let n = presentation.quiver.n();
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut pairs = vec![vec![Vec::new(); n]; n];
        let mut pos = vec![0; basis.len()];
        for (i, p) in basis.iter().enumerate() {
            pos[i] = pairs[p.src][p.tgt].len();
            pairs[p.src][p.tgt].push(i);
        }
        let mut alg = FdAlgebra {
            presentation,
            rw,
            basis,
            index,
            pairs,
            right: Vec::new(),
            left: Vec::new(),
            pos,
            max_len,
        };
        let na = alg.presentation.quiver.arrows.len();
        let mut right = vec![vec![None; na]; alg.basis.len()];
        let mut left = vec![vec![None; na]; alg.basis.len()];
        for (b, p) in alg.basis.iter().enumerate() {
            for arr in 0..na {
                let a = &alg.presentation.quiver.arrows[arr];
                let ap = Path { src: a.source, tgt: a.target, arrows: vec![arr] };
                if a.source == p.tgt {
                    right[b][arr] = Some(alg.reduce_path(&p.concat(&ap).unwrap()));
                }
                if a.target == p.src {
                    left[b][arr] = Some(alg.reduce_path(&ap.concat(p).unwrap()));
                }
            }
        }
        alg.right = right;
        alg.left = left;
        alg
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &super::Quiver {
        &self.presentation.quiver
    }

    pub fn rewriting(&self) -> &Rewriting {
        &self.rw
    }

    pub fn n(&self) -> usize {
        self.presentation.quiver.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Length of the longest nonzero normal word.
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_elem(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    /// Basis indices of `e_s A e_t` (normal paths from `s` to `t`).
    pub fn between(&self, s: usize, t: usize) -> &[usize] {
        &self.pairs[s][t]
    }

    /// Position of basis element `i` inside its `between(s, t)` list.
    pub fn pos_in_pair(&self, i: usize) -> usize {
        self.pos[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `cartan[s][t] = dim e_s A e_t`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        self.pairs.iter().map(|row| row.iter().map(Vec::len).collect()).collect()
    }

    fn reduce_path(&self, p: &Path) -> SparseVec {
        self.reduce(&PathPoly::from_path(p.clone()))
    }

    /// Coordinates of the image of `f` in the normal-word basis.
    pub fn reduce(&self, f: &PathPoly) -> SparseVec {
        let nf = self.rw.reduce(f);
        let mut out: SparseVec = nf
            .terms()
            .map(|(p, c)| (*self.index.get(p).expect("normal word in basis"), *c))
            .collect();
        out.sort_by_key(|x| x.0);
        out
    }

    pub fn to_poly(&self, v: &[(usize, Q)]) -> PathPoly {
        PathPoly::from_terms(v.iter().map(|(i, c)| (self.basis[*i].clone(), *c)))
    }

    /// `basis[i] * arrow`, if composable.
    pub fn right_act(&self, i: usize, arrow: usize) -> Option<&SparseVec> {
        self.right[i][arrow].as_ref()
    }

    /// `arrow * basis[i]`, if composable.
    pub fn left_act(&self, arrow: usize, i: usize) -> Option<&SparseVec> {
        self.left[i][arrow].as_ref()
    }

    /// Product of two basis elements.
    pub fn mul(&self, i: usize, j: usize) -> SparseVec {
        let (p, q) = (&self.basis[i], &self.basis[j]);
        if p.tgt != q.src {
            return Vec::new();
        }
        if q.is_empty() {
            return vec![(i, Q::from_integer(1))];
        }
        // multiply arrow by arrow through the right action table
        let mut cur: BTreeMap<usize, Q> = BTreeMap::from([(i, Q::from_integer(1))]);
        for &arr in &q.arrows {
            let mut next = BTreeMap::new();
            for (b, c) in cur {
                for (b2, c2) in self.right[b][arr].as_ref().expect("composable") {
                    let e = next.entry(*b2).or_insert_with(Q::zero);
                    *e += c * c2;
                }
            }
            next.retain(|_, c: &mut Q| !c.is_zero());
            cur = next;
        }
        cur.into_iter().collect()
    }

    /// Product of two sparse vectors.
    pub fn mul_vec(&self, u: &[(usize, Q)], v: &[(usize, Q)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, a) in u {
            for (j, b) in v {
                for (k, c) in self.mul(*i, *j) {
                    *acc.entry(k).or_insert_with(Q::zero) += *a * *b * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Degree of a basis word under an arrow grading.
    pub fn degree_of(&self, i: usize, degrees: &[i64]) -> i64 {
        self.basis[i].arrows.iter().map(|&a| degrees[a]).sum()
    }

    /// Dimension of each graded piece.
    pub fn graded_dims(&self, degrees: &[i64]) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for i in 0..self.basis.len() {
            *m.entry(self.degree_of(i, degrees)).or_insert(0) += 1;
        }
        m
    }

    /// Graded Cartan data: `(s, t, degree) -> dim`.
    pub fn graded_cartan(&self, degrees: &[i64]) -> BTreeMap<(usize, usize, i64), usize> {
        let mut m = BTreeMap::new();
        for (i, p) in self.basis.iter().enumerate() {
            *m.entry((p.src, p.tgt, self.degree_of(i, degrees))).or_insert(0) += 1;
        }
        m
    }
}
