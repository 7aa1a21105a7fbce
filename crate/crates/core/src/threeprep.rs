//! 3-preprojective algebras as graded Jacobian algebras, 2-representation
//! finiteness, 2-homogeneity and 2-APR-(co)tilting by regrading.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::canon::{presentation_fingerprint, Certificate, PairData};
use crate::error::{domain, Error, Result};
use crate::pathalg::{
    ext_into_projective, fd_quotient, gldim, minimal_relations, nakayama_permutation, resolve, FdAlgebra, GlDim,
    Module, Path, PathPoly, Presentation, Quotient,
};
use crate::qp::{GradedQP, Side};
use crate::rational::Q;

/// `(Q~, W, d)` for an algebra of global dimension at most two.
#[derive(Clone, Debug)]
pub struct ExtendedQP {
    pub qp: GradedQP,
    /// The minimal presentation the QP was built from.
    pub base: Presentation,
    /// `relation_arrows[i]` is the arrow `r_i*`.
    pub relation_arrows: Vec<usize>,
}

impl ExtendedQP {
    /// Index of the relation an arrow of degree one comes from.
    pub fn relation_of(&self, arrow: usize) -> Option<usize> {
        self.relation_arrows.iter().position(|&a| a == arrow)
    }
}

fn finite_algebra(a: &Presentation, cap: usize) -> Result<FdAlgebra> {
    match fd_quotient(a, cap)? {
        Quotient::Finite(fd) => Ok(*fd),
        Quotient::Infinite { witness, .. } => Err(Error::Domain(format!(
            "algebra is infinite-dimensional: {} is a periodic normal word",
            a.quiver.path_text(&witness)
        ))),
    }
}

/// Adds `r_i*: t(r_i) -> s(r_i)` of degree one per relation and `W = sum r_i r_i*`.
///
/// The relations are first replaced by a minimal subfamily.
pub fn extended_qp(a: &Presentation, cap: usize) -> Result<ExtendedQP> {
    let fd = finite_algebra(a, cap)?;
    match gldim(&fd, 2) {
        GlDim::Finite(_) => {}
        GlDim::Exceeds(_) => return domain("global dimension exceeds 2"),
    }
    let base = minimal_relations(a)?;
    let mut quiver = base.quiver.clone();
    let mut degrees = vec![0; quiver.arrows.len()];
    let mut relation_arrows = Vec::new();
    let mut w = PathPoly::zero();
    for (i, r) in base.relations.iter().enumerate() {
        let (s, t) = r.endpoints().expect("validated");
        let mut name = format!("r{}*", i + 1);
        while quiver.arrow_index(&name).is_some() {
            name.push('\'');
        }
        let star = quiver.add_arrow(name, t, s)?;
        degrees.push(1);
        relation_arrows.push(star);
        let sp = Path { src: t, tgt: s, arrows: vec![star] };
        for (p, c) in r.terms() {
            w.add_term(p.concat(&sp).expect("composable"), *c);
        }
    }
    let qp = GradedQP::new_unreduced(quiver, degrees, w, 1)?;
    Ok(ExtendedQP { qp, base, relation_arrows })
}

/// `Pi_3(A)` with its arrow grading.
pub fn pi3(a: &Presentation, cap: usize) -> Result<(ExtendedQP, Quotient)> {
    let ext = extended_qp(a, cap)?;
    let j = ext.qp.jacobian(cap)?;
    Ok((ext, j))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No(String),
    /// A cap or budget was hit before a verdict was reached.
    Indeterminate(String),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    /// 0 = yes, 1 = no, 2 = indeterminate.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Yes => 0,
            Verdict::No(_) => 1,
            Verdict::Indeterminate(_) => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "true"),
            Verdict::No(r) => write!(f, "false ({r})"),
            Verdict::Indeterminate(r) => write!(f, "indeterminate ({r})"),
        }
    }
}

/// Everything computed on the way to a 2-RF verdict.
#[derive(Clone, Debug)]
pub struct RfReport {
    pub verdict: Verdict,
    pub dim: Option<usize>,
    pub gldim: Option<GlDim>,
    pub pi3_dim: Option<usize>,
    pub pi3_graded: Option<BTreeMap<i64, usize>>,
    pub nakayama: Option<Vec<usize>>,
    /// The Jacobian algebra and its grading, when finite.
    pub pi3: Option<(ExtendedQP, FdAlgebra)>,
}

fn indeterminate(e: Error) -> Result<Verdict> {
    match e {
        Error::CapExceeded { cap, detail } => Ok(Verdict::Indeterminate(format!("cap {cap}: {detail}"))),
        Error::Budget(d) => Ok(Verdict::Indeterminate(d)),
        e => Err(e),
    }
}

pub fn analyze_2rf(a: &Presentation, cap: usize) -> Result<RfReport> {
    a.validate()?;
    let mut rep = RfReport { verdict: Verdict::Yes, dim: None, gldim: None, pi3_dim: None, pi3_graded: None, nakayama: None, pi3: None };
    let fd = match fd_quotient(a, cap) {
        Ok(Quotient::Finite(fd)) => fd,
        Ok(Quotient::Infinite { .. }) => {
            rep.verdict = Verdict::No("the algebra is infinite-dimensional".into());
            return Ok(rep);
        }
        Err(e) => {
            rep.verdict = indeterminate(e)?;
            return Ok(rep);
        }
    };
    rep.dim = Some(fd.dim());
    let gd = gldim(&fd, 2);
    rep.gldim = Some(gd);
    if gd != GlDim::Finite(2) {
        rep.verdict = Verdict::No(format!("gldim {gd} is not 2"));
        return Ok(rep);
    }
    let ext = extended_qp(a, cap)?;
    let jac = match ext.qp.jacobian(cap) {
        Ok(Quotient::Finite(j)) => *j,
        Ok(Quotient::Infinite { witness, .. }) => {
            rep.verdict = Verdict::No(format!(
                "Pi_3 is infinite-dimensional: powers of {} stay nonzero",
                ext.qp.quiver.path_text(&witness)
            ));
            return Ok(rep);
        }
        Err(e) => {
            rep.verdict = indeterminate(e)?;
            return Ok(rep);
        }
    };
    rep.pi3_dim = Some(jac.dim());
    rep.pi3_graded = Some(jac.graded_dims(&ext.qp.degrees));
    match nakayama_permutation(&jac) {
        Ok(pi) => rep.nakayama = Some(pi),
        Err(Error::NotSelfinjective) => rep.verdict = Verdict::No("Pi_3 is not selfinjective".into()),
        Err(e) => return Err(e),
    }
    rep.pi3 = Some((ext, jac));
    Ok(rep)
}

/// gldim exactly 2 and `Pi_3` finite-dimensional selfinjective.
pub fn is_2rf(a: &Presentation, cap: usize) -> Result<Verdict> {
    Ok(analyze_2rf(a, cap)?.verdict)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneityReport {
    /// `dim Ext^i(D A, A)` for `i = 0, 1, 2`.
    pub ext: [usize; 3],
    /// Dimension vector of the degree-one part of `Pi_3`.
    pub pi1_dims: Vec<usize>,
    pub pi1_socle: Vec<usize>,
    pub injective: bool,
}

impl HomogeneityReport {
    pub fn is_homogeneous(&self) -> bool {
        self.ext[0] == 0 && self.ext[1] == 0 && self.injective
    }
}

/// `Ext^i(D A, A)` from resolutions of the indecomposable injectives.
fn ext_dual_into_algebra(fd: &FdAlgebra) -> Result<[usize; 3]> {
    let mut ext = [0usize; 3];
    for j in 0..fd.n() {
        let res = resolve(fd, &Module::injective(fd, j), 3);
        if !res.complete {
            return Err(Error::Internal("injective of projective dimension above 2".into()));
        }
        for w in 0..fd.n() {
            for (i, d) in ext_into_projective(fd, &res, w).into_iter().enumerate() {
                if i < 3 {
                    ext[i] += d;
                } else if d != 0 {
                    return Err(Error::Internal("Ext above degree 2".into()));
                }
            }
        }
    }
    Ok(ext)
}

/// The degree-one part of `Pi_3` as a right module over its degree-zero part.
fn degree_one_module(lambda: &FdAlgebra, jac: &FdAlgebra, degrees: &[i64]) -> Module {
    let n = lambda.n();
    let mut pos = vec![usize::MAX; jac.dim()];
    let mut dims = vec![0; n];
    for b in 0..jac.dim() {
        if jac.degree_of(b, degrees) == 1 {
            let t = jac.basis_elem(b).tgt;
            pos[b] = dims[t];
            dims[t] += 1;
        }
    }
    let q = lambda.quiver();
    let mut maps = vec![Vec::new(); q.arrows.len()];
    for (a, arr) in q.arrows.iter().enumerate() {
        let mut rows = vec![vec![Q::zero(); dims[arr.target]]; dims[arr.source]];
        for b in 0..jac.dim() {
            if pos[b] == usize::MAX || jac.basis_elem(b).tgt != arr.source {
                continue;
            }
            for (k, c) in jac.right_act(b, a).expect("composable") {
                rows[pos[b]][pos[*k]] += *c;
            }
        }
        maps[a] = rows;
    }
    Module { dims, maps }
}

pub fn homogeneity_report(a: &Presentation, cap: usize) -> Result<HomogeneityReport> {
    let rep = analyze_2rf(a, cap)?;
    let Some((ext_qp, jac)) = rep.pi3.filter(|_| rep.verdict.is_yes()) else {
        return domain(format!("2-homogeneity needs a 2-representation-finite algebra; got {}", rep.verdict));
    };
    let lambda = finite_algebra(&ext_qp.base, cap)?;
    let ext = ext_dual_into_algebra(&lambda)?;
    let n1 = degree_one_module(&lambda, &jac, &ext_qp.qp.degrees);
    if n1.dim() != ext[2] {
        return Err(Error::Internal(format!(
            "Ext^2(DA, A) has dimension {} but the degree-one part of Pi_3 has {}",
            ext[2],
            n1.dim()
        )));
    }
    let soc = n1.socle_dims(&lambda);
    let c = lambda.cartan();
    let envelope: usize = (0..lambda.n()).map(|v| soc[v] * (0..lambda.n()).map(|u| c[u][v]).sum::<usize>()).sum();
    Ok(HomogeneityReport { ext, pi1_dims: n1.dims.clone(), pi1_socle: soc, injective: envelope == n1.dim() })
}

pub fn is_2homogeneous(a: &Presentation, cap: usize) -> Result<bool> {
    Ok(homogeneity_report(a, cap)?.is_homogeneous())
}

/// Checks the 2-APR conditions for `P = P_k` at a sink `k`.
fn check_apr_sink(a: &Presentation, k: usize, cap: usize) -> Result<()> {
    let q = &a.quiver;
    if !q.is_sink(k) {
        return domain(format!("{} is not a sink", q.vertices[k]));
    }
    let fd = finite_algebra(a, cap)?;
    if let GlDim::Exceeds(_) = gldim(&fd, 2) {
        return domain("global dimension exceeds 2");
    }
    let c = fd.cartan();
    for j in (0..fd.n()).filter(|&j| j != k) {
        if c[k][j] != 0 {
            return domain(format!("Hom(P_{}, P_{}) is nonzero", q.vertices[j], q.vertices[k]));
        }
        let res = resolve(&fd, &Module::injective(&fd, j), 3);
        let ext = ext_into_projective(&fd, &res, k);
        if ext.get(1).copied().unwrap_or(0) != 0 {
            return domain(format!("Ext^1(I_{}, P_{}) is nonzero", q.vertices[j], q.vertices[k]));
        }
    }
    Ok(())
}

/// 2-APR tilting at a sink (left) or co-tilting at a source (right).
pub fn two_apr_tilt(a: &Presentation, k: usize, side: Side, cap: usize) -> Result<Presentation> {
    if k >= a.quiver.n() {
        return domain("vertex out of range");
    }
    match side {
        Side::Left => check_apr_sink(a, k, cap)?,
        Side::Right => check_apr_sink(&a.opposite(), k, cap)?,
    }
    let ext = extended_qp(a, cap)?;
    let q = &ext.qp.quiver;
    let degrees: Vec<i64> = q
        .arrows
        .iter()
        .zip(&ext.qp.degrees)
        .map(|(arr, &d)| if arr.source == k || arr.target == k { 1 - d } else { d })
        .collect();
    let flipped = GradedQP::new_unreduced(q.clone(), degrees, ext.qp.potential.clone(), 1)?;
    minimal_relations(&flipped.truncated_jacobian()?)
}

#[derive(Clone, Debug)]
pub struct NormalizeOutcome {
    pub trace: Vec<(usize, Side)>,
    pub result: Presentation,
    pub homogeneous: bool,
    pub explored: usize,
}

fn fingerprint(a: &Presentation, cap: usize) -> Result<Certificate<usize, PairData>> {
    presentation_fingerprint(a, &finite_algebra(a, cap)?)
}

/// Breadth-first search over admissible 2-APR steps for a 2-homogeneous algebra.
pub fn iterated_2apr_normalize(a: &Presentation, budget: usize, cap: usize) -> Result<NormalizeOutcome> {
    let mut seen = HashSet::new();
    seen.insert(fingerprint(a, cap)?);
    let mut queue = VecDeque::from([(a.clone(), Vec::new())]);
    let mut explored = 0;
    let mut last = (a.clone(), Vec::new());
    while let Some((cur, trace)) = queue.pop_front() {
        explored += 1;
        if is_2homogeneous(&cur, cap)? {
            return Ok(NormalizeOutcome { trace, result: cur, homogeneous: true, explored });
        }
        if explored >= budget {
            return Ok(NormalizeOutcome { trace, result: cur, homogeneous: false, explored });
        }
        for k in 0..cur.quiver.n() {
            for side in [Side::Left, Side::Right] {
                let next = match two_apr_tilt(&cur, k, side, cap) {
                    Ok(n) => n,
                    Err(Error::Domain(_)) => continue,
                    Err(e) => return Err(e),
                };
                if seen.insert(fingerprint(&next, cap)?) {
                    let mut t = trace.clone();
                    t.push((k, side));
                    queue.push_back((next, t));
                }
            }
        }
        last = (cur, trace);
    }
    Ok(NormalizeOutcome { trace: last.1, result: last.0, homogeneous: false, explored })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathalg::test_algebras::*;
    use crate::pathalg::{Quiver, DEFAULT_CAP};

    #[test]
    fn hereditary_has_no_potential() {
        let a = linear_a(3);
        let e = extended_qp(&a, DEFAULT_CAP).unwrap();
        assert_eq!(e.qp.quiver, a.quiver);
        assert!(e.qp.potential.is_zero());
    }

    #[test]
    fn square_gets_one_reverse_arrow() {
        let e = extended_qp(&commutative_square(), DEFAULT_CAP).unwrap();
        assert_eq!(e.qp.quiver.arrows.len(), 5);
        let r = &e.qp.quiver.arrows[4];
        assert_eq!((r.source, r.target), (3, 0));
        assert_eq!(e.qp.degrees[4], 1);
        assert_eq!(e.relation_of(4), Some(0));
    }

    #[test]
    fn canonical_extended_qp() {
        let e = extended_qp(&canonical_2222(2), DEFAULT_CAP).unwrap();
        assert_eq!(e.qp.quiver.arrows.len(), 10);
        let deg1: Vec<_> = (0..10).filter(|&a| e.qp.degrees[a] == 1).collect();
        assert_eq!(deg1.len(), 2);
        for a in deg1 {
            let arr = &e.qp.quiver.arrows[a];
            assert_eq!((arr.source, arr.target), (5, 0));
        }
        assert!(e.qp.is_algebraic(DEFAULT_CAP).unwrap());
    }

    #[test]
    fn round_trip_is_identity() {
        for a in [canonical_2222(2), canonical_2222(3), commutative_square(), linear_a(4)] {
            let e = extended_qp(&a, DEFAULT_CAP).unwrap();
            let t = e.qp.truncated_jacobian().unwrap();
            assert_eq!(t.quiver, a.quiver);
            assert_eq!(t.relations, e.base.relations);
        }
    }

    #[test]
    fn one_vertex() {
        let a = Presentation::new(Quiver::new(vec!["0".into()]), vec![]);
        let (_, j) = pi3(&a, DEFAULT_CAP).unwrap();
        assert_eq!(j.finite().unwrap().dim(), 1);
        assert_eq!(is_2rf(&a, DEFAULT_CAP).unwrap(), Verdict::No("gldim 0 is not 2".into()));
    }

    #[test]
    fn canonical_2222_is_2rf() {
        let rep = analyze_2rf(&canonical_2222(2), DEFAULT_CAP).unwrap();
        assert_eq!(rep.verdict, Verdict::Yes);
        assert_eq!(rep.pi3_dim, Some(32));
        // degree-zero part is the algebra itself
        assert_eq!(rep.pi3_graded.as_ref().unwrap()[&0], 16);
        assert_eq!(rep.nakayama, Some((0..6).collect()));
    }

    #[test]
    fn hereditary_is_not_2rf() {
        let v = is_2rf(&linear_a(2), DEFAULT_CAP).unwrap();
        assert!(matches!(v, Verdict::No(ref r) if r.contains("gldim 1")));
    }

    #[test]
    fn commutative_square_is_not_2rf() {
        // r* a = r* c = 0 and b r* = d r* = 0, so P_0 and P_1 both have socle at 3
        let rep = analyze_2rf(&commutative_square(), DEFAULT_CAP).unwrap();
        assert_eq!(rep.gldim, Some(GlDim::Finite(2)));
        assert_eq!(rep.pi3_dim, Some(10));
        assert_eq!(rep.verdict, Verdict::No("Pi_3 is not selfinjective".into()));
    }

    #[test]
    fn canonical_2222_is_homogeneous() {
        let r = homogeneity_report(&canonical_2222(2), DEFAULT_CAP).unwrap();
        assert_eq!(r.ext[0], 0);
        assert_eq!(r.ext[1], 0);
        assert_eq!(r.ext[2], 16);
        assert!(r.injective);
    }

    #[test]
    fn homogeneity_needs_2rf() {
        assert!(is_2homogeneous(&linear_a(2), DEFAULT_CAP).is_err());
    }

    #[test]
    fn apr_at_sink_of_canonical() {
        let a = canonical_2222(2);
        let t = two_apr_tilt(&a, 5, Side::Left, DEFAULT_CAP).unwrap();
        assert!(t.quiver.is_source(5));
        assert_eq!(is_2rf(&t, DEFAULT_CAP).unwrap(), Verdict::Yes);
        let back = two_apr_tilt(&t, 5, Side::Right, DEFAULT_CAP).unwrap();
        assert_eq!(fingerprint(&back, DEFAULT_CAP).unwrap(), fingerprint(&a, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn apr_requires_sink() {
        assert!(two_apr_tilt(&canonical_2222(2), 0, Side::Left, DEFAULT_CAP).is_err());
        assert!(two_apr_tilt(&canonical_2222(2), 5, Side::Right, DEFAULT_CAP).is_err());
    }

    #[test]
    fn normalize_homogeneous_is_empty() {
        let o = iterated_2apr_normalize(&canonical_2222(2), 10, DEFAULT_CAP).unwrap();
        assert!(o.homogeneous);
        assert!(o.trace.is_empty());
    }
}
