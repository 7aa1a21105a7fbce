//! Right modules over a finite-dimensional quotient, minimal projective
//! resolutions, Ext between simples and selfinjectivity.
//!
//! Conventions: `P_i = e_i A` has basis the normal words starting at `i`,
//! `Hom(P_v, P_w) = e_w A e_v`, and the `n`-th term of the minimal resolution
//! of `S_i` contains `P_j` exactly `dim Ext^n(S_i, S_j)` times.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::fd::FdAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Echelon};
use crate::rational::Q;

/// A representation: a vector space per vertex and a matrix per arrow.
///
/// `maps[a][j]` is the image in `M_target` of the `j`-th basis vector of
/// `M_source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub dims: Vec<usize>,
    pub maps: Vec<Vec<Vec<Q>>>,
}

impl Module {
    pub fn zero(alg: &FdAlgebra) -> Module {
        let q = alg.quiver();
        Module { dims: vec![0; q.n()], maps: vec![Vec::new(); q.arrows.len()] }
    }

    pub fn simple(alg: &FdAlgebra, i: usize) -> Module {
        let mut m = Module::zero(alg);
        m.dims[i] = 1;
        for (a, arr) in alg.quiver().arrows.iter().enumerate() {
            m.maps[a] = vec![vec![Q::zero(); m.dims[arr.target]]; m.dims[arr.source]];
        }
        m
    }

    /// `P_i = e_i A`.
    pub fn projective(alg: &FdAlgebra, i: usize) -> Module {
        let q = alg.quiver();
        let dims: Vec<usize> = (0..q.n()).map(|v| alg.between(i, v).len()).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                alg.between(i, arr.source)
                    .iter()
                    .map(|&b| {
                        let mut v = vec![Q::zero(); dims[arr.target]];
                        for (k, c) in alg.right_act(b, a).expect("composable") {
                            v[alg.pos_in_pair(*k)] = *c;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Module { dims, maps }
    }

    /// `I_j = D(A e_j)`, with `(f . a)(x) = f(a x)`.
    pub fn injective(alg: &FdAlgebra, j: usize) -> Module {
        let q = alg.quiver();
        let dims: Vec<usize> = (0..q.n()).map(|v| alg.between(v, j).len()).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                // image of the dual basis vector f_b, b in e_s A e_j
                let mut rows = vec![vec![Q::zero(); dims[arr.target]]; dims[arr.source]];
                for (col, &b2) in alg.between(arr.target, j).iter().enumerate() {
                    for (k, c) in alg.left_act(a, b2).expect("composable") {
                        rows[alg.pos_in_pair(*k)][col] = *c;
                    }
                }
                rows
            })
            .collect();
        Module { dims, maps }
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn act(&self, arrow: usize, tgt_dim: usize, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); tgt_dim];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&self.maps[arrow][j]) {
                *o += *c * x;
            }
        }
        out
    }

    /// Dimension of the socle at each vertex.
    pub fn socle_dims(&self, alg: &FdAlgebra) -> Vec<usize> {
        let q = alg.quiver();
        (0..q.n())
            .map(|u| {
                if self.dims[u] == 0 {
                    return 0;
                }
                // columns: basis vectors of M_u; rows stacked over outgoing arrows
                let mut cols: Vec<Vec<Q>> = vec![Vec::new(); self.dims[u]];
                for a in q.arrows_from(u) {
                    for (j, col) in cols.iter_mut().enumerate() {
                        col.extend_from_slice(&self.maps[a][j]);
                    }
                }
                let total = cols[0].len();
                if total == 0 {
                    return self.dims[u];
                }
                nullspace(&cols, total).len()
            })
            .collect()
    }

    /// Generators of the top: standard basis vectors spanning a complement of the radical.
    fn top_generators(&self, alg: &FdAlgebra) -> Vec<(usize, usize)> {
        let q = alg.quiver();
        let mut gens = Vec::new();
        for u in 0..q.n() {
            let mut rad = Echelon::new(self.dims[u]);
            for a in q.arrows_to(u) {
                for img in &self.maps[a] {
                    rad.insert(img.clone());
                }
            }
            for j in 0..self.dims[u] {
                let mut e = vec![Q::zero(); self.dims[u]];
                e[j] = Q::one();
                if rad.insert(e) {
                    gens.push((u, j));
                }
            }
        }
        gens
    }
}

/// Coordinates of `F = sum_g P_{gens[g]}` at each vertex.
struct FreeLayout {
    gens: Vec<usize>,
    /// `offset[u][g]`: start of block `g` in `F_u`
    offset: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl FreeLayout {
    fn new(alg: &FdAlgebra, gens: Vec<usize>) -> Self {
        let n = alg.n();
        let mut offset = vec![Vec::with_capacity(gens.len()); n];
        let mut dims = vec![0; n];
        for u in 0..n {
            for &g in &gens {
                offset[u].push(dims[u]);
                dims[u] += alg.between(g, u).len();
            }
        }
        FreeLayout { gens, offset, dims }
    }

    /// Right action of an arrow on a vector of `F_source`.
    fn act(&self, alg: &FdAlgebra, arrow: usize, v: &[Q]) -> Vec<Q> {
        let arr = &alg.quiver().arrows[arrow];
        let (s, t) = (arr.source, arr.target);
        let mut out = vec![Q::zero(); self.dims[t]];
        for (g, &vg) in self.gens.iter().enumerate() {
            let (os, ot) = (self.offset[s][g], self.offset[t][g]);
            for (k, &b) in alg.between(vg, s).iter().enumerate() {
                let c = v[os + k];
                if c.is_zero() {
                    continue;
                }
                for (b2, c2) in alg.right_act(b, arrow).expect("composable") {
                    out[ot + alg.pos_in_pair(*b2)] += c * c2;
                }
            }
        }
        out
    }
}

/// A (possibly truncated) minimal projective resolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// `gens[n]`: vertices of the indecomposable summands of `P^n`.
    pub gens: Vec<Vec<usize>>,
    /// `diffs[n][h]` (`n >= 1`): image of the `h`-th generator of `P^n` in
    /// `P^{n-1}`, in free coordinates at vertex `gens[n][h]`.
    pub diffs: Vec<Vec<Vec<Q>>>,
    /// Whether the resolution reached zero.
    pub complete: bool,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.gens.len().saturating_sub(1)
    }

    /// Number of copies of `P_j` in `P^n`.
    pub fn multiplicity(&self, n: usize, j: usize) -> usize {
        self.gens.get(n).map_or(0, |g| g.iter().filter(|&&v| v == j).count())
    }
}

/// Minimal projective resolution of `m`, computing at most `max_terms + 1` terms.
pub fn resolve(alg: &FdAlgebra, m: &Module, max_terms: usize) -> Resolution {
    let q = alg.quiver();
    let n = q.n();
    let mut cur = m.clone();
    let mut embed: Option<Vec<Vec<Vec<Q>>>> = None;
    let mut res = Resolution { gens: Vec::new(), diffs: Vec::new(), complete: false };
    for step in 0..=max_terms {
        let tops = cur.top_generators(alg);
        if tops.is_empty() {
            res.complete = true;
            return res;
        }
        let verts: Vec<usize> = tops.iter().map(|&(u, _)| u).collect();
        res.gens.push(verts.clone());
        match &embed {
            None => res.diffs.push(Vec::new()),
            Some(e) => res.diffs.push(tops.iter().map(|&(u, j)| e[u][j].clone()).collect()),
        }
        if step == max_terms {
            return res;
        }
        let layout = FreeLayout::new(alg, verts);
        // kernel of F -> cur, vertex by vertex
        let mut kernels: Vec<Echelon> = Vec::with_capacity(n);
        for u in 0..n {
            let mut cols: Vec<Vec<Q>> = Vec::with_capacity(layout.dims[u]);
            for (g, &(vg, j)) in tops.iter().enumerate() {
                debug_assert_eq!(layout.offset[u][g], cols.len());
                let mut gen = vec![Q::zero(); cur.dims[vg]];
                gen[j] = Q::one();
                for &b in alg.between(vg, u) {
                    let mut v = gen.clone();
                    let mut at = vg;
                    for &a in &alg.basis_elem(b).arrows {
                        let t = q.arrows[a].target;
                        v = cur.act(a, cur.dims[t], &v);
                        at = t;
                    }
                    debug_assert_eq!(at, u);
                    cols.push(v);
                }
            }
            let mut e = Echelon::new(layout.dims[u]);
            if cur.dims[u] == 0 {
                for k in 0..layout.dims[u] {
                    let mut v = vec![Q::zero(); layout.dims[u]];
                    v[k] = Q::one();
                    e.insert(v);
                }
            } else {
                for v in nullspace(&cols, cur.dims[u]) {
                    e.insert(v);
                }
            }
            kernels.push(e);
        }
        let dims: Vec<usize> = kernels.iter().map(Echelon::dim).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let ke = &kernels[arr.target];
                kernels[arr.source]
                    .rows()
                    .iter()
                    .map(|row| {
                        let img = layout.act(alg, a, row);
                        debug_assert!(ke.contains(&img));
                        ke.pivots().iter().map(|&p| img[p]).collect()
                    })
                    .collect()
            })
            .collect();
        embed = Some(kernels.iter().map(|e| e.rows().to_vec()).collect());
        cur = Module { dims, maps };
    }
    res
}

/// `dim Ext^k(S_i, S_j)`.
pub fn ext_dims(alg: &FdAlgebra, i: usize, j: usize, k: usize) -> usize {
    let res = resolve(alg, &Module::simple(alg, i), k);
    res.multiplicity(k, j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlDim {
    Finite(usize),
    /// Some simple has projective dimension above the cap.
    Exceeds(usize),
}

impl GlDim {
    pub fn value(self) -> Option<usize> {
        match self {
            GlDim::Finite(d) => Some(d),
            GlDim::Exceeds(_) => None,
        }
    }
}

impl std::fmt::Display for GlDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlDim::Finite(d) => write!(f, "{d}"),
            GlDim::Exceeds(c) => write!(f, ">{c}"),
        }
    }
}

/// Projective dimension of every simple, `None` above the cap.
pub fn simple_pdims(alg: &FdAlgebra, cap: usize) -> Vec<Option<usize>> {
    (0..alg.n())
        .into_par_iter()
        .map(|i| {
            let r = resolve(alg, &Module::simple(alg, i), cap + 1);
            r.complete.then(|| r.length())
        })
        .collect()
}

pub fn gldim(alg: &FdAlgebra, cap: usize) -> GlDim {
    let pd = simple_pdims(alg, cap);
    if pd.iter().any(Option::is_none) {
        return GlDim::Exceeds(cap);
    }
    GlDim::Finite(pd.into_iter().flatten().max().unwrap_or(0))
}

/// `dim Ext^n(M, P_w)` for `n = 0..=resolution length`, from the complex
/// `Hom(P^., P_w)`.
pub fn ext_into_projective(alg: &FdAlgebra, res: &Resolution, w: usize) -> Vec<usize> {
    let terms = res.gens.len();
    let cdim = |n: usize| -> usize { res.gens[n].iter().map(|&v| alg.between(w, v).len()).sum() };
    // rank of delta^n : C^n -> C^{n+1}
    let mut ranks = vec![0usize; terms + 1];
    for n in 0..terms.saturating_sub(1) {
        let target = FreeLayout::new(alg, res.gens[n].clone());
        let next = &res.gens[n + 1];
        let mut offsets = Vec::with_capacity(next.len());
        let mut total = 0;
        for &v in next {
            offsets.push(total);
            total += alg.between(w, v).len();
        }
        let mut cols = Vec::new();
        for (g, &vg) in res.gens[n].iter().enumerate() {
            for &y in alg.between(w, vg) {
                let mut col = vec![Q::zero(); total];
                for (h, &vh) in next.iter().enumerate() {
                    let d = &res.diffs[n + 1][h];
                    let off = target.offset[vh][g];
                    for (k, &x) in alg.between(vg, vh).iter().enumerate() {
                        let c = d[off + k];
                        if c.is_zero() {
                            continue;
                        }
                        for (z, cz) in alg.mul(y, x) {
                            col[offsets[h] + alg.pos_in_pair(z)] += c * cz;
                        }
                    }
                }
                cols.push(col);
            }
        }
        ranks[n] = crate::linalg::rank(&cols, total);
    }
    (0..terms)
        .map(|n| {
            let prev = if n == 0 { 0 } else { ranks[n - 1] };
            cdim(n) - ranks[n] - prev
        })
        .collect()
}

fn projective_socles(alg: &FdAlgebra) -> Vec<Vec<usize>> {
    (0..alg.n()).map(|i| Module::projective(alg, i).socle_dims(alg)).collect()
}

/// The Nakayama permutation `i -> pi(i)` with `soc P_i = S_{pi(i)}`.
pub fn nakayama_permutation(alg: &FdAlgebra) -> Result<Vec<usize>> {
    let n = alg.n();
    let mut pi = Vec::with_capacity(n);
    for soc in projective_socles(alg) {
        if soc.iter().sum::<usize>() != 1 {
            return Err(Error::NotSelfinjective);
        }
        pi.push(soc.iter().position(|&d| d == 1).unwrap());
    }
    let mut seen = vec![false; n];
    for &p in &pi {
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::NotSelfinjective);
        }
    }
    // P_i embeds in I_{pi(i)}; equal dimension vectors make it an isomorphism
    let c = alg.cartan();
    for (i, &p) in pi.iter().enumerate() {
        if (0..n).any(|v| c[i][v] != c[v][p]) {
            return Err(Error::NotSelfinjective);
        }
    }
    Ok(pi)
}

pub fn is_selfinjective(alg: &FdAlgebra) -> bool {
    nakayama_permutation(alg).is_ok()
}

#[cfg(test)]
mod tests {
    use super::super::fd::fd_quotient;
    use super::super::test_algebras::*;
    use super::super::{Presentation, DEFAULT_CAP};
    use super::*;

    fn fd(p: &Presentation) -> FdAlgebra {
        fd_quotient(p, DEFAULT_CAP).unwrap().finite().unwrap()
    }

    #[test]
    fn hereditary_a2() {
        let a = fd(&linear_a(2));
        assert_eq!(gldim(&a, 5), GlDim::Finite(1));
        assert_eq!(ext_dims(&a, 0, 1, 1), 1);
        assert_eq!(ext_dims(&a, 1, 0, 1), 0);
        assert_eq!(ext_dims(&a, 0, 0, 0), 1);
        assert!(!is_selfinjective(&a));
    }

    #[test]
    fn semisimple_and_field() {
        let mut p = Presentation::default();
        p.quiver.vertices = vec!["0".into(), "1".into()];
        let a = fd(&p);
        assert_eq!(gldim(&a, 5), GlDim::Finite(0));
        assert_eq!(nakayama_permutation(&a).unwrap(), vec![0, 1]);
    }

    #[test]
    fn canonical_2222_homological_data() {
        let a = fd(&canonical_2222(2));
        assert_eq!(gldim(&a, 5), GlDim::Finite(2));
        assert_eq!(ext_dims(&a, 0, 5, 2), 2);
        for i in 1..=4 {
            assert_eq!(ext_dims(&a, 0, i, 1), 1);
            assert_eq!(ext_dims(&a, i, 5, 1), 1);
        }
    }

    #[test]
    fn radical_square_zero_cycle_is_selfinjective() {
        let a = fd(&three_cycle_rad2());
        // soc(e_0 A) is spanned by the arrow 0 -> 1
        assert_eq!(nakayama_permutation(&a).unwrap(), vec![1, 2, 0]);
        assert_eq!(gldim(&a, 4), GlDim::Exceeds(4));
    }

    #[test]
    fn ext_into_projectives_of_simple() {
        // A2: 1 -> 2. S_1 has resolution 0 -> P_2 -> P_1 -> S_1.
        let a = fd(&linear_a(2));
        let res = resolve(&a, &Module::simple(&a, 0), 4);
        assert!(res.complete);
        assert_eq!(ext_into_projective(&a, &res, 0), vec![0, 0]);
        assert_eq!(ext_into_projective(&a, &res, 1), vec![0, 1]);
        // I_2 = P_1 is projective: Ext^0(I_2, P_1) = 1
        let res = resolve(&a, &Module::injective(&a, 1), 4);
        assert_eq!(res.gens, vec![vec![0]]);
    }
}
