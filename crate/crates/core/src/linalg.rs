//! Dense exact linear algebra over `Q`.

use num_traits::{One, Zero};

use crate::rational::Q;

/// A subspace of `Q^n` held as a reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Replaces `v` by its residue modulo the subspace.
    pub fn reduce(&self, v: &mut [Q]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p];
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= f * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        debug_assert_eq!(v.len(), self.n);
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p];
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= f * r;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

pub fn rank(vectors: &[Vec<Q>], n: usize) -> usize {
    let mut e = Echelon::new(n);
    for v in vectors {
        e.insert(v.clone());
    }
    e.dim()
}

/// Basis of `{ c : sum_j c_j * cols[j] = 0 }`.
pub fn nullspace(cols: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    let ncols = cols.len();
    if ncols == 0 {
        return Vec::new();
    }
    // rows of the dim x ncols matrix
    let mut m: Vec<Vec<Q>> = (0..dim).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == dim {
            break;
        }
        let Some(pr) = (r..dim).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= f * p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut is_pivot = vec![None; ncols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &c) in pivot_cols.iter().enumerate() {
            v[c] = -m[row][free];
        }
        basis.push(v);
    }
    basis
}

/// Coefficients expressing `target` in terms of `vectors`, if it lies in their span.
pub fn solve(vectors: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = target.len();
    let k = vectors.len();
    let mut cols: Vec<Vec<Q>> = vectors.to_vec();
    cols.push(target.iter().map(|x| -x).collect());
    let ns = nullspace(&cols, n);
    // need a null vector with last coordinate nonzero
    let v = ns.into_iter().find(|v| !v[k].is_zero())?;
    let s = v[k].recip();
    Some(v[..k].iter().map(|x| x * s).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(xs: &[i128]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(v(&[1, 2, 3])));
        assert!(e.insert(v(&[0, 1, 1])));
        assert!(!e.insert(v(&[2, 5, 7])));
        assert!(e.contains(&v(&[1, 3, 4])));
        assert!(!e.contains(&v(&[0, 0, 1])));
        assert_eq!(e.dim(), 2);
    }

    #[test]
    fn nullspace_and_solve() {
        let cols = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let ns = nullspace(&cols, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], v(&[-1, -1, 1]));
        let c = solve(&[v(&[1, 1, 0]), v(&[0, 1, 1])], &v(&[2, 3, 1])).unwrap();
        assert_eq!(c, v(&[2, 1]));
        assert!(solve(&[v(&[1, 0, 0])], &v(&[0, 1, 0])).is_none());
    }
}
