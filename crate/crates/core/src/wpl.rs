//! The graded ring `R(lambda, p)` and Hom/Ext calculus on a weighted
//! projective line, restricted to line bundles `O(a)` and exceptional simple
//! sheaves `S_{i,m}`.
//!
//! Canonical relations: `x_i^{p_i} = x_2^{p_2} - lambda_i x_1^{p_1}` for
//! `i >= 3`, with `lambda_3 = 1`. Tubes are indexed from zero internally and
//! from one in text form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::lgroup::{LVec, WeightType};
use crate::linalg::{nullspace, Echelon};
use crate::pathalg::{Path, PathPoly, Presentation, Quiver};
use crate::rational::Q;

/// Exponent vector of a monomial `x_1^{e_1} .. x_t^{e_t}`.
pub type Mono = Vec<u32>;

pub fn mono_degree(w: &WeightType, m: &[u32]) -> LVec {
    let coeffs: Vec<i64> = m.iter().map(|&e| e as i64).collect();
    w.lvec(0, &coeffs).expect("length matches")
}

pub fn mono_text(m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Reduced monomials of degree `a`: `x_1^{m_1+q_1 p_1} x_2^{m_2+q_2 p_2} prod x_i^{m_i}`
/// with `q_1 + q_2 = m`.
pub fn r_basis(w: &WeightType, a: &LVec) -> Vec<Mono> {
    let m = a.m();
    if m < 0 {
        return Vec::new();
    }
    let (p1, p2) = (w.weight(0) as i64, w.weight(1) as i64);
    let base: Vec<u32> = a.coeffs().iter().map(|&c| c as u32).collect();
    (0..=m)
        .map(|q1| {
            let mut e = base.clone();
            e[0] += (q1 * p1) as u32;
            e[1] += ((m - q1) * p2) as u32;
            e
        })
        .collect()
}

/// `dim R_a`: `m + 1` for the `c`-coefficient `m` of the normal form, or 0.
pub fn dim_r(a: &LVec) -> usize {
    (a.m() + 1).max(0) as usize
}

/// Homogeneous element of `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RElement {
    pub degree: LVec,
    pub terms: BTreeMap<Mono, Q>,
}

impl RElement {
    pub fn monomial(w: &WeightType, m: Mono, c: Q) -> RElement {
        let degree = mono_degree(w, &m);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        let mut e = RElement { degree, terms };
        e.normalize(w);
        e
    }

    pub fn one(w: &WeightType) -> RElement {
        RElement::monomial(w, vec![0; w.t()], Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize(&mut self, w: &WeightType) {
        let mut todo: Vec<(Mono, Q)> = std::mem::take(&mut self.terms).into_iter().collect();
        let mut out: BTreeMap<Mono, Q> = BTreeMap::new();
        while let Some((mut m, c)) = todo.pop() {
            let over = (2..w.t()).find(|&i| m[i] >= w.weight(i));
            match over {
                None => {
                    let e = out.entry(m).or_insert_with(Q::zero);
                    *e += c;
                }
                Some(i) => {
                    // x_i^{p_i} -> x_2^{p_2} - lambda_i x_1^{p_1}
                    m[i] -= w.weight(i);
                    let mut m2 = m.clone();
                    m2[1] += w.weight(1);
                    let mut m1 = m;
                    m1[0] += w.weight(0);
                    todo.push((m2, c));
                    todo.push((m1, -c * w.lambda(i)));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        self.terms = out;
    }

    /// Product in `R`, reduced by the canonical relations.
    pub fn mul(&self, other: &RElement, w: &WeightType) -> RElement {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let mn: Mono = m.iter().zip(n).map(|(x, y)| x + y).collect();
                *terms.entry(mn).or_insert_with(Q::zero) += *a * *b;
            }
        }
        let mut e = RElement { degree: &self.degree + &other.degree, terms };
        e.normalize(w);
        e
    }

    /// Coordinates in `r_basis(degree)`.
    pub fn coords(&self, w: &WeightType) -> Vec<Q> {
        let basis = r_basis(w, &self.degree);
        basis.iter().map(|m| self.terms.get(m).copied().unwrap_or_else(Q::zero)).collect()
    }
}

pub fn r_multiply(u: &RElement, v: &RElement, w: &WeightType) -> RElement {
    u.mul(v, w)
}

/// Line bundle twist or exceptional simple sheaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheaf {
    Line(LVec),
    /// `S_{tube+1, m}` with `1 <= m <= p_tube`.
    Simple { tube: usize, m: u32 },
}

impl Sheaf {
    pub fn line(a: LVec) -> Sheaf {
        Sheaf::Line(a)
    }

    pub fn simple(w: &WeightType, tube: usize, m: u32) -> Result<Sheaf> {
        if tube >= w.t() {
            return domain(format!("tube {} out of range", tube + 1));
        }
        let p = w.weight(tube);
        if p < 2 {
            return domain(format!("tube {} has weight 1; no exceptional simples", tube + 1));
        }
        if m == 0 || m > p {
            return domain(format!("residue {m} out of range 1..={p}"));
        }
        Ok(Sheaf::Simple { tube, m })
    }

    pub fn is_line(&self) -> bool {
        matches!(self, Sheaf::Line(_))
    }

    /// Text form `O(m|m1,..,mt)` or `S(i,m)`.
    pub fn parse(w: &WeightType, s: &str) -> Result<Sheaf> {
        let s = s.trim();
        let inner = |pre: &str| s.strip_prefix(pre).and_then(|r| r.strip_suffix(')'));
        if let Some(body) = inner("O(") {
            return Ok(Sheaf::Line(LVec::parse(w, body)?));
        }
        if let Some(body) = inner("S(") {
            let (i, m) = body.split_once(',').ok_or_else(|| Error::Parse(format!("expected S(i,m), got {s:?}")))?;
            let i: usize = i.trim().parse().map_err(|_| Error::Parse(format!("bad tube in {s:?}")))?;
            let m: u32 = m.trim().parse().map_err(|_| Error::Parse(format!("bad residue in {s:?}")))?;
            if i == 0 {
                return Err(Error::Parse("tubes are numbered from 1".into()));
            }
            return Sheaf::simple(w, i - 1, m);
        }
        Err(Error::Parse(format!("expected O(..) or S(..), got {s:?}")))
    }
}

impl fmt::Display for Sheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sheaf::Line(a) => write!(f, "O({})", a.to_text()),
            Sheaf::Simple { tube, m } => write!(f, "S({},{})", tube + 1, m),
        }
    }
}

/// Parses a comma-separated list such as `O(0|0,0,0),S(2,1)`.
pub fn parse_sum(w: &WeightType, s: &str) -> Result<Vec<Sheaf>> {
    // commas also occur inside parentheses, so split at depth zero
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(Sheaf::parse(w, &s[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(Sheaf::parse(w, &s[start..])?);
    }
    Ok(out)
}

pub fn sum_text(t: &[Sheaf]) -> String {
    t.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn tau(w: &WeightType, x: &Sheaf) -> Sheaf {
    tau_k(w, x, 1)
}

/// `tau^k`: twist by `k omega` on line bundles, rotation by `k` in a tube.
pub fn tau_k(w: &WeightType, x: &Sheaf, k: i64) -> Sheaf {
    match x {
        Sheaf::Line(a) => Sheaf::Line(a + &w.omega().scale(k)),
        Sheaf::Simple { tube, m } => {
            let p = w.weight(*tube) as i64;
            let m0 = (*m as i64 - 1 + k).rem_euclid(p);
            Sheaf::Simple { tube: *tube, m: m0 as u32 + 1 }
        }
    }
}

/// Formal integer combination of sheaf classes in `K_0`.
pub type K0Class = BTreeMap<Sheaf, i64>;

pub fn class_of(x: &Sheaf) -> K0Class {
    BTreeMap::from([(x.clone(), 1)])
}

pub fn class_sum(xs: &[Sheaf]) -> K0Class {
    let mut c = K0Class::new();
    for x in xs {
        *c.entry(x.clone()).or_insert(0) += 1;
    }
    c
}

/// Rewrites a class in terms of line bundles via
/// `[S_{i,m}] = [O((1-m) x_i)] - [O(-m x_i)]`.
fn line_expansion(w: &WeightType, x: &K0Class) -> BTreeMap<LVec, i64> {
    let mut out: BTreeMap<LVec, i64> = BTreeMap::new();
    for (s, &n) in x {
        match s {
            Sheaf::Line(a) => *out.entry(a.clone()).or_insert(0) += n,
            Sheaf::Simple { tube, m } => {
                let xi = w.x(*tube);
                *out.entry(xi.scale(1 - *m as i64)).or_insert(0) += n;
                *out.entry(xi.scale(-(*m as i64))).or_insert(0) -= n;
            }
        }
    }
    out.retain(|_, n| *n != 0);
    out
}

/// The Euler form `<x, y> = dim Hom - dim Ext^1`, extended bilinearly.
pub fn euler_form(w: &WeightType, x: &K0Class, y: &K0Class) -> i64 {
    let om = w.omega();
    let (lx, ly) = (line_expansion(w, x), line_expansion(w, y));
    let mut total = 0i64;
    for (a, n) in &lx {
        for (b, k) in &ly {
            let hom = dim_r(&(b - a)) as i64;
            let ext = dim_r(&(&(a + &om) - b)) as i64;
            total += n * k * (hom - ext);
        }
    }
    total
}

pub fn rank(x: &K0Class) -> i64 {
    x.iter().filter(|(s, _)| s.is_line()).map(|(_, n)| n).sum()
}

pub fn degree(w: &WeightType, x: &K0Class) -> i64 {
    let p = w.lcm() as i64;
    x.iter()
        .map(|(s, n)| match s {
            Sheaf::Line(a) => n * a.delta(),
            Sheaf::Simple { tube, .. } => n * (p / w.weight(*tube) as i64),
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slope {
    Finite(Ratio<i64>),
    Infinite,
}

/// `deg / rk`, infinite for classes of rank zero.
pub fn slope(w: &WeightType, x: &K0Class) -> Result<Slope> {
    let (r, d) = (rank(x), degree(w, x));
    if r == 0 {
        if d == 0 {
            return domain("slope of a class with rank and degree zero");
        }
        return Ok(Slope::Infinite);
    }
    Ok(Slope::Finite(Ratio::new(d, r)))
}

/// Hom dimension via the residue rule; used as a second route in tests.
pub fn hom_line_simple_residue(w: &WeightType, a: &LVec, tube: usize, m: u32) -> usize {
    let p = w.weight(tube) as i64;
    usize::from((a.coeff(tube) - (1 - m as i64)).rem_euclid(p) == 0)
}

pub fn hom_dim(w: &WeightType, x: &Sheaf, y: &Sheaf) -> usize {
    match (x, y) {
        (Sheaf::Line(a), Sheaf::Line(b)) => dim_r(&(b - a)),
        (Sheaf::Simple { .. }, Sheaf::Line(_)) => 0,
        (Sheaf::Simple { .. }, Sheaf::Simple { .. }) => usize::from(x == y),
        // Ext^1(line, simple) = 0, so Hom is the Euler form
        (Sheaf::Line(_), Sheaf::Simple { .. }) => euler_form(w, &class_of(x), &class_of(y)) as usize,
    }
}

/// Serre duality: `Ext^1(X, Y) = D Hom(Y, tau X)`.
pub fn ext1_dim(w: &WeightType, x: &Sheaf, y: &Sheaf) -> usize {
    hom_dim(w, y, &tau(w, x))
}

/// Hom dimension in the cluster category.
pub fn cluster_hom_dim(w: &WeightType, x: &Sheaf, y: &Sheaf) -> usize {
    hom_dim(w, x, y) + ext1_dim(w, x, &tau_k(w, y, -1))
}

pub fn is_basic(t: &[Sheaf]) -> bool {
    let mut v: Vec<&Sheaf> = t.iter().collect();
    v.sort();
    v.windows(2).all(|p| p[0] != p[1])
}

pub fn is_rigid(w: &WeightType, t: &[Sheaf]) -> bool {
    t.iter().all(|x| t.iter().all(|y| ext1_dim(w, x, y) == 0))
}

pub fn is_tilting(w: &WeightType, t: &[Sheaf]) -> bool {
    t.len() == w.k0_rank() && is_basic(t) && is_rigid(w, t)
}

pub fn is_tau2_stable(w: &WeightType, t: &[Sheaf]) -> bool {
    let mut a: Vec<Sheaf> = t.to_vec();
    let mut b: Vec<Sheaf> = t.iter().map(|x| tau_k(w, x, 2)).collect();
    a.sort();
    b.sort();
    a == b
}

/// `bigoplus_{0 <= x <= c} O(x)`.
pub fn canonical_sum(w: &WeightType) -> Vec<Sheaf> {
    w.interval(&w.zero(), &w.c()).into_iter().map(Sheaf::Line).collect()
}

/// Scalars `gamma_j` of the module `Gamma_*(S_{i,m})`: going once around
/// the `x_j`-cycle multiplies by `gamma_j`.
fn simple_cocycle(w: &WeightType, tube: usize) -> Vec<Q> {
    (0..w.t())
        .map(|j| match (tube, j) {
            (_, j) if j == tube => Q::zero(),
            (0, _) => Q::one(),
            (1, 0) => Q::one(),
            (1, k) => -w.lambda(k),
            (_, 0) => Q::one(),
            (i, 1) => w.lambda(i),
            (i, k) => w.lambda(i) - w.lambda(k),
        })
        .collect()
}

/// Scalar by which the monomial `mono` maps the chosen basis morphism
/// `O(a) -> S` to the chosen basis morphism `O(a - deg mono) -> S`.
fn line_simple_factor(w: &WeightType, a: &LVec, tube: usize, mono: &[u32]) -> Q {
    if mono[tube] > 0 {
        return Q::zero();
    }
    let gamma = simple_cocycle(w, tube);
    // the basis vector of Gamma(S(d)) sits at d = -a; walk along mono
    let mut d = a.neg();
    let mut c = Q::one();
    for (j, &e) in mono.iter().enumerate() {
        for _ in 0..e {
            if d.coeff(j) == w.weight(j) as i64 - 1 {
                c *= gamma[j];
            }
            d = &d + &w.x(j);
        }
    }
    c
}

/// A basis element of a Hom space between summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum HomBasis {
    Mono(Mono),
    /// the chosen nonzero map `O(a) -> S`
    Quotient,
    Identity,
}

fn hom_basis(w: &WeightType, x: &Sheaf, y: &Sheaf) -> Vec<HomBasis> {
    match (x, y) {
        (Sheaf::Line(a), Sheaf::Line(b)) => r_basis(w, &(b - a)).into_iter().map(HomBasis::Mono).collect(),
        (Sheaf::Line(_), Sheaf::Simple { .. }) => {
            if hom_dim(w, x, y) == 1 {
                vec![HomBasis::Quotient]
            } else {
                Vec::new()
            }
        }
        (Sheaf::Simple { .. }, Sheaf::Simple { .. }) if x == y => vec![HomBasis::Identity],
        _ => Vec::new(),
    }
}

/// Composition `g o f` for `f: X -> Y`, `g: Y -> Z`, as coordinates in the
/// basis of `Hom(X, Z)`.
fn compose(w: &WeightType, x: &Sheaf, y: &Sheaf, z: &Sheaf, f: &HomBasis, g: &HomBasis) -> Result<Vec<Q>> {
    let target = hom_basis(w, x, z);
    let mut out = vec![Q::zero(); target.len()];
    match (f, g) {
        (HomBasis::Identity, _) => {
            let k = target.iter().position(|b| b == g).ok_or_else(|| Error::Internal("identity composition".into()))?;
            out[k] = Q::one();
        }
        (_, HomBasis::Identity) => {
            let k = target.iter().position(|b| b == f).ok_or_else(|| Error::Internal("identity composition".into()))?;
            out[k] = Q::one();
        }
        (HomBasis::Mono(m1), HomBasis::Mono(m2)) => {
            let prod = RElement::monomial(w, m1.clone(), Q::one()).mul(&RElement::monomial(w, m2.clone(), Q::one()), w);
            for (m, c) in prod.terms {
                let k = target
                    .iter()
                    .position(|b| *b == HomBasis::Mono(m.clone()))
                    .ok_or_else(|| Error::Internal("product outside reduced basis".into()))?;
                out[k] += c;
            }
        }
        (HomBasis::Mono(m), HomBasis::Quotient) => {
            let (Sheaf::Line(ay), Sheaf::Simple { tube, .. }) = (y, z) else {
                return Err(Error::Internal("line-simple composition shape".into()));
            };
            let c = line_simple_factor(w, ay, *tube, m);
            if !c.is_zero() {
                if target.is_empty() {
                    return Err(Error::Internal("nonzero composite into zero Hom space".into()));
                }
                out[0] = c;
            }
        }
        _ => return Err(Error::Internal("unexpected composition".into())),
    }
    Ok(out)
}

/// Endomorphism algebra of a basic sum of line bundles and exceptional
/// simples, as a quiver with a minimal set of relations. Vertex `k`
/// corresponds to `t[k]`.
pub fn end_algebra(w: &WeightType, t: &[Sheaf]) -> Result<Presentation> {
    if !is_basic(t) {
        return domain("sum is not basic");
    }
    let n = t.len();
    let hom: Vec<Vec<Vec<HomBasis>>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Vec::new() } else { hom_basis(w, &t[i], &t[j]) }).collect()).collect();
    // radical morphisms go between distinct summands and never close a cycle
    let mut qv = Quiver::new(t.iter().map(ToString::to_string).collect());
    for i in 0..n {
        for j in 0..n {
            if !hom[i][j].is_empty() {
                qv.add_arrow(format!("h{i}_{j}"), i, j)?;
            }
        }
    }
    if !qv.is_acyclic() {
        return Err(Error::Internal("radical of End(T) is not nilpotent".into()));
    }
    let order = topo_order(&qv);
    let comp = |i: usize, j: usize, k: usize, f: &[Q], g: &[Q]| -> Result<Vec<Q>> {
        let mut out = vec![Q::zero(); hom[i][k].len()];
        for (a, fa) in f.iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in g.iter().enumerate() {
                if gb.is_zero() {
                    continue;
                }
                let v = compose(w, &t[i], &t[j], &t[k], &hom[i][j][a], &hom[j][k][b])?;
                for (o, x) in out.iter_mut().zip(v) {
                    *o += *fa * *gb * x;
                }
            }
        }
        Ok(out)
    };
    // rad^2 and arrows
    let mut arrows: Vec<(usize, usize, Vec<Q>, String)> = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let d = hom[i][k].len();
            if i == k || d == 0 {
                continue;
            }
            let mut rad2 = Echelon::new(d);
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                for a in 0..hom[i][j].len() {
                    for b in 0..hom[j][k].len() {
                        rad2.insert(comp(i, j, k, &unit(hom[i][j].len(), a), &unit(hom[j][k].len(), b))?);
                    }
                }
            }
            for a in 0..d {
                if rad2.insert(unit(d, a)) {
                    let label = match &hom[i][k][a] {
                        HomBasis::Mono(m) => mono_text(m),
                        _ => "q".into(),
                    };
                    arrows.push((i, k, unit(d, a), label));
                }
            }
        }
    }
    let mut gq = Quiver::new(qv.vertices.clone());
    let mut values: Vec<Vec<Q>> = Vec::new();
    let mut used: HashMap<String, usize> = HashMap::new();
    for (i, k, v, label) in arrows {
        let c = used.entry(label.clone()).or_insert(0);
        *c += 1;
        gq.add_arrow(format!("{label}#{c}"), i, k)?;
        values.push(v);
    }
    // paths and their values, grouped by endpoints
    let mut paths: Vec<(Path, Vec<Q>)> = Vec::new();
    for &s in &order {
        let mut stack: Vec<(Path, Vec<Q>)> = gq
            .arrows_from(s)
            .map(|a| (Path { src: s, tgt: gq.arrows[a].target, arrows: vec![a] }, values[a].clone()))
            .collect();
        while let Some((p, v)) = stack.pop() {
            for a in gq.arrows_from(p.tgt) {
                let nt = gq.arrows[a].target;
                let nv = comp(s, p.tgt, nt, &v, &values[a])?;
                let mut np = p.clone();
                np.arrows.push(a);
                np.tgt = nt;
                stack.push((np, nv));
            }
            paths.push((p, v));
        }
    }
    let mut relations_by_pair: BTreeMap<(usize, usize), Vec<PathPoly>> = BTreeMap::new();
    for i in 0..n {
        for k in 0..n {
            let ps: Vec<&(Path, Vec<Q>)> = paths.iter().filter(|(p, _)| p.src == i && p.tgt == k).collect();
            if ps.is_empty() {
                if !hom[i][k].is_empty() {
                    return Err(Error::Internal(format!("no paths reach Hom({}, {})", t[i], t[k])));
                }
                continue;
            }
            let cols: Vec<Vec<Q>> = ps.iter().map(|(_, v)| v.clone()).collect();
            let d = hom[i][k].len();
            if crate::linalg::rank(&cols, d) != d {
                return Err(Error::Internal(format!("paths do not span Hom({}, {})", t[i], t[k])));
            }
            let ker = if d == 0 { (0..cols.len()).map(|a| unit(cols.len(), a)).collect() } else { nullspace(&cols, d) };
            let mut rel_space = Echelon::new(cols.len());
            for v in ker {
                rel_space.insert(v);
            }
            let rels = rel_space
                .rows()
                .iter()
                .map(|row| PathPoly::from_terms(row.iter().enumerate().map(|(a, c)| (ps[a].0.clone(), *c))))
                .collect();
            relations_by_pair.insert((i, k), rels);
        }
    }
    let all: Vec<PathPoly> = relations_by_pair.into_values().flatten().collect();
    let p = Presentation::new(gq, all);
    crate::pathalg::minimal_relations(&p)
}

fn unit(d: usize, a: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[a] = Q::one();
    v
}

fn topo_order(q: &Quiver) -> Vec<usize> {
    let mut indeg = vec![0usize; q.n()];
    for a in &q.arrows {
        indeg[a.target] += 1;
    }
    let mut ready: Vec<usize> = (0..q.n()).filter(|&v| indeg[v] == 0).collect();
    let mut out = Vec::new();
    while let Some(v) = ready.pop() {
        out.push(v);
        for a in q.arrows_from(v) {
            let t = q.arrows[a].target;
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.push(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgroup::Order;
    use crate::pathalg::{fd_quotient, gldim, GlDim, DEFAULT_CAP};
    use crate::rational::q;

    fn w224() -> WeightType {
        WeightType::simple(&[2, 2, 4])
    }

    /// Brute-force count of monomials of degree `a` modulo the relations.
    fn brute_dim(w: &WeightType, a: &LVec) -> usize {
        let bound = (a.m().max(0) as u32 + 1) * w.lcm() as u32;
        let mut count = 0;
        let t = w.t();
        let mut e = vec![0u32; t];
        loop {
            let reduced = (2..t).all(|i| e[i] < w.weight(i));
            if reduced && mono_degree(w, &e) == *a {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == t {
                    return count;
                }
                e[i] += 1;
                if e[i] <= bound {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn dim_r_matches_brute_force() {
        for w in [WeightType::simple(&[2, 3, 4]), WeightType::simple(&[2, 2, 2, 2]), w224()] {
            for a in w.interval(&w.c().scale(-1), &w.c().scale(2)) {
                assert_eq!(dim_r(&a), brute_dim(&w, &a), "{a}");
                assert_eq!(r_basis(&w, &a).len(), dim_r(&a));
            }
        }
    }

    #[test]
    fn proof_values_dim_r() {
        let w = w224();
        assert_eq!(dim_r(&w.zero()), 1);
        assert_eq!(dim_r(&w.x(0)), 1);
        assert_eq!(dim_r(&(&w.x(0) + &w.x(1))), 1);
    }

    #[test]
    fn canonical_rewrite() {
        let w = WeightType::simple(&[2, 2, 2]);
        let x3 = RElement::monomial(&w, vec![0, 0, 1], q(1));
        let sq = x3.mul(&x3, &w);
        assert_eq!(sq.terms, BTreeMap::from([(vec![0, 2, 0], q(1)), (vec![2, 0, 0], q(-1))]));
    }

    #[test]
    fn hom_dims_from_the_proof() {
        let w = w224();
        let s = Sheaf::simple(&w, 1, 1).unwrap();
        let s2 = Sheaf::simple(&w, 1, 2).unwrap();
        let om = w.omega();
        let o = |a: LVec| Sheaf::Line(a);
        assert_eq!(hom_dim(&w, &o(w.x(2)), &s), 1);
        assert_eq!(hom_dim(&w, &o(&w.x(0) + &om), &s), 0);
        assert_eq!(hom_dim(&w, &o(&w.x(0) + &om), &s2), 1);
        assert_eq!(ext1_dim(&w, &o(w.x(2)), &o(w.x(1).neg())), 1);
        assert_eq!(ext1_dim(&w, &o(w.x(2)), &o(w.zero())), 0);
        let u = class_sum(&[o(om.clone()), o(w.x(2))]);
        assert_eq!(euler_form(&w, &u, &class_of(&s)), 1);
        assert_eq!(euler_form(&w, &u, &class_of(&s2)), 1);
    }

    #[test]
    fn residue_rule_agrees_with_euler_form() {
        for w in [w224(), WeightType::simple(&[2, 3, 6]), WeightType::simple(&[3, 3, 3])] {
            for a in w.interval(&w.c().scale(-1), &w.c()) {
                for i in 0..w.t() {
                    for m in 1..=w.weight(i) {
                        let s = Sheaf::Simple { tube: i, m };
                        assert_eq!(hom_dim(&w, &Sheaf::Line(a.clone()), &s), hom_line_simple_residue(&w, &a, i, m));
                    }
                }
            }
        }
    }

    #[test]
    fn simple_module_respects_canonical_relations() {
        for w in [WeightType::parse("2,2,2,2;lambda4=3/2").unwrap(), WeightType::simple(&[2, 3, 4])] {
            for tube in 0..w.t() {
                for a in w.interval(&w.c().scale(-1), &w.c()) {
                    for k in 2..w.t() {
                        let mut xk = vec![0; w.t()];
                        xk[k] = w.weight(k);
                        let mut x1 = vec![0; w.t()];
                        x1[0] = w.weight(0);
                        let mut x2 = vec![0; w.t()];
                        x2[1] = w.weight(1);
                        let lhs = line_simple_factor(&w, &a, tube, &xk);
                        let rhs = line_simple_factor(&w, &a, tube, &x2) - w.lambda(k) * line_simple_factor(&w, &a, tube, &x1);
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn tube_extensions() {
        let w = WeightType::simple(&[2, 4, 4]);
        for m in 1..=4u32 {
            for m2 in 1..=4u32 {
                let x = Sheaf::Simple { tube: 1, m };
                let y = Sheaf::Simple { tube: 1, m: m2 };
                let expect = usize::from(m2 == m % 4 + 1);
                assert_eq!(ext1_dim(&w, &x, &y), expect);
                let e = euler_form(&w, &class_of(&x), &class_of(&y));
                assert_eq!(e, hom_dim(&w, &x, &y) as i64 - ext1_dim(&w, &x, &y) as i64);
            }
        }
    }

    #[test]
    fn tau_examples() {
        let w = WeightType::simple(&[2, 2, 2, 2]);
        let a = Sheaf::Line(w.lvec(1, &[1, 0, 1, 0]).unwrap());
        assert_eq!(tau_k(&w, &a, 2), a);
        let s = Sheaf::Simple { tube: 2, m: 1 };
        assert_eq!(tau_k(&w, &s, -1), Sheaf::Simple { tube: 2, m: 2 });
        let w = WeightType::simple(&[2, 4, 4]);
        assert_eq!(w.omega().order(), Order::Finite(4));
        let o = Sheaf::Line(w.zero());
        assert_eq!(tau_k(&w, &o, 4), o);
    }

    #[test]
    fn slopes() {
        let w = WeightType::simple(&[2, 3, 7]);
        let s = slope(&w, &class_of(&Sheaf::Line(w.omega()))).unwrap();
        assert_eq!(s, Slope::Finite(Ratio::from_integer(1)));
        assert_eq!(slope(&w, &class_of(&Sheaf::Simple { tube: 0, m: 1 })).unwrap(), Slope::Infinite);
        assert!(slope(&w, &K0Class::new()).is_err());
    }

    #[test]
    fn tilting_checks() {
        for ws in [&[2u32, 2, 2, 2][..], &[2, 3, 6], &[3, 3, 3], &[2, 4, 4], &[2, 3, 5], &[2, 2, 3]] {
            let w = WeightType::simple(ws);
            assert!(is_tilting(&w, &canonical_sum(&w)), "{w}");
        }
        let w = WeightType::simple(&[2, 3, 6]);
        let o = Sheaf::Line(w.zero());
        assert!(!is_tilting(&w, &[o.clone(), o.clone()]));
        assert!(!is_rigid(&w, &[o, Sheaf::Line(w.omega())]));
    }

    #[test]
    fn tau2_stability() {
        let w = WeightType::simple(&[2, 4, 4]);
        let o = Sheaf::Line(w.zero());
        let o2 = Sheaf::Line(w.omega().scale(2));
        assert!(is_tau2_stable(&w, &[o.clone(), o2]));
        assert!(!is_tau2_stable(&w, &[o]));
    }

    #[test]
    fn cluster_hom() {
        let w = WeightType::simple(&[2, 2, 2, 2]);
        let o = Sheaf::Line(w.zero());
        assert_eq!(cluster_hom_dim(&w, &o, &o), 2);
        let w = WeightType::simple(&[2, 4, 4]);
        let a = Sheaf::Line(w.zero());
        let b = Sheaf::Line(w.omega().scale(2));
        assert_eq!(cluster_hom_dim(&w, &a, &b), cluster_hom_dim(&w, &b, &a));
    }

    #[test]
    fn canonical_end_algebra_2222() {
        let w = WeightType::parse("2,2,2,2;lambda4=2").unwrap();
        let p = end_algebra(&w, &canonical_sum(&w)).unwrap();
        assert_eq!(p.quiver.n(), 6);
        assert_eq!(p.quiver.arrows.len(), 8);
        assert_eq!(p.relations.len(), 2);
        let fd = fd_quotient(&p, DEFAULT_CAP).unwrap().finite().unwrap();
        // total dimension equals the sum of Hom dimensions
        let t = canonical_sum(&w);
        let total: usize = t.iter().flat_map(|x| t.iter().map(move |y| (x, y))).map(|(x, y)| hom_dim(&w, x, y)).sum();
        assert_eq!(fd.dim(), total);
        assert_eq!(gldim(&fd, 4), GlDim::Finite(2));
    }

    #[test]
    fn end_algebra_relation_counts() {
        for ws in [&[2u32, 3, 5][..], &[3, 3, 3], &[2, 2, 2, 2, 2]] {
            let w = WeightType::simple(ws);
            let p = end_algebra(&w, &canonical_sum(&w)).unwrap();
            assert_eq!(p.quiver.n(), w.k0_rank());
            assert_eq!(p.relations.len(), w.t() - 2);
        }
        let w = WeightType::simple(&[2, 3, 6]);
        let p = end_algebra(&w, &[Sheaf::Line(w.zero())]).unwrap();
        assert_eq!((p.quiver.n(), p.quiver.arrows.len()), (1, 0));
    }

    #[test]
    fn mixed_end_algebra_dimension() {
        // line bundles with simples: total dimension equals the Hom table
        let w = w224();
        let t = vec![
            Sheaf::Line(w.zero()),
            Sheaf::Line(w.x(2)),
            Sheaf::Simple { tube: 1, m: 1 },
            Sheaf::Simple { tube: 2, m: 2 },
        ];
        let p = end_algebra(&w, &t).unwrap();
        let fd = fd_quotient(&p, DEFAULT_CAP).unwrap().finite().unwrap();
        let total: usize = t.iter().flat_map(|x| t.iter().map(move |y| (x, y))).map(|(x, y)| hom_dim(&w, x, y)).sum();
        assert_eq!(fd.dim(), total);
    }
}
