//! Truncated noncommutative Gröbner bases in a path algebra.
//!
//! Relations are read in the complete path algebra, so the leading word of a
//! polynomial is its *shortest* term (ties broken lexicographically by arrow
//! index). Rewriting a leading word therefore only ever produces longer or
//! lexicographically larger words, and every word of length `>= cap` is
//! dropped: the result is a Gröbner basis of `I + J^cap`. When the normal
//! words stop before length `cap - 1` this ideal coincides with the closure
//! of `I`, which is what [`super::fd_quotient`] checks.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{One, Zero};

use super::{Path, PathPoly, Presentation};
use crate::error::{Error, Result};
use crate::rational::Q;

pub const DEFAULT_CAP: usize = 32;

/// Upper bound on the number of rules before giving up.
const MAX_RULES: usize = 50_000;

/// Word ordered by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Word(pub Vec<usize>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) type Poly = BTreeMap<Word, Q>;

fn add_to(p: &mut Poly, w: Word, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match p.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Rule {
    tip: Vec<usize>,
    /// `tip = sum rest`
    rest: Vec<(Vec<usize>, Q)>,
}

impl Rule {
    fn as_poly(&self) -> Poly {
        let mut p = Poly::new();
        p.insert(Word(self.tip.clone()), Q::one());
        for (w, c) in &self.rest {
            add_to(&mut p, Word(w.clone()), -*c);
        }
        p
    }
}

/// A reduced rewriting system for `I + J^cap`.
#[derive(Clone, Debug)]
pub struct Rewriting {
    cap: usize,
    rules: Vec<Option<Rule>>,
    tips: HashMap<Vec<usize>, usize>,
    tip_lens: BTreeSet<usize>,
}

impl Rewriting {
    fn empty(cap: usize) -> Self {
        Rewriting { cap, rules: Vec::new(), tips: HashMap::new(), tip_lens: BTreeSet::new() }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Leading words of the rules.
    pub fn tips(&self) -> Vec<Vec<usize>> {
        let mut t: Vec<Vec<usize>> = self.tips.keys().cloned().collect();
        t.sort_by(|a, b| Word(a.clone()).cmp(&Word(b.clone())));
        t
    }

    pub fn len(&self) -> usize {
        self.tips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tips.is_empty()
    }

    /// Rules as `(tip, rest)` pairs with `tip = rest` in the quotient.
    pub fn rules(&self) -> Vec<(Vec<usize>, Vec<(Vec<usize>, Q)>)> {
        let mut out: Vec<_> = self.rules.iter().flatten().map(|r| (r.tip.clone(), r.rest.clone())).collect();
        out.sort_by(|a, b| Word(a.0.clone()).cmp(&Word(b.0.clone())));
        out
    }

    fn find_divisor(&self, w: &[usize]) -> Option<(usize, usize)> {
        for &l in &self.tip_lens {
            if l > w.len() {
                break;
            }
            for pos in 0..=w.len() - l {
                if let Some(&r) = self.tips.get(&w[pos..pos + l]) {
                    return Some((r, pos));
                }
            }
        }
        None
    }

    /// Whether `w` ends in a leading word (used when extending normal words).
    pub(crate) fn has_tip_suffix(&self, w: &[usize]) -> bool {
        self.tip_lens.iter().any(|&l| l <= w.len() && self.tips.contains_key(&w[w.len() - l..]))
    }

    pub fn is_normal(&self, w: &[usize]) -> bool {
        w.len() < self.cap && self.find_divisor(w).is_none()
    }

    pub(crate) fn normal_form_poly(&self, mut todo: Poly) -> Poly {
        let mut out = Poly::new();
        while let Some((w, c)) = todo.pop_first() {
            if w.0.len() >= self.cap {
                continue;
            }
            match self.find_divisor(&w.0) {
                None => {
                    out.insert(w, c);
                }
                Some((r, pos)) => {
                    let rule = self.rules[r].as_ref().expect("live rule");
                    let l = rule.tip.len();
                    for (rw, rc) in &rule.rest {
                        let len = w.0.len() - l + rw.len();
                        if len >= self.cap {
                            continue;
                        }
                        let mut nw = Vec::with_capacity(len);
                        nw.extend_from_slice(&w.0[..pos]);
                        nw.extend_from_slice(rw);
                        nw.extend_from_slice(&w.0[pos + l..]);
                        add_to(&mut todo, Word(nw), c * rc);
                    }
                }
            }
        }
        out
    }

    /// Normal form of an element of the path algebra. Trivial paths are
    /// always normal.
    pub fn reduce(&self, f: &PathPoly) -> PathPoly {
        let mut groups: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        let mut out = PathPoly::zero();
        for (path, c) in f.terms() {
            if path.is_empty() {
                out.add_term(path.clone(), *c);
            } else {
                add_to(groups.entry((path.src, path.tgt)).or_default(), Word(path.arrows.clone()), *c);
            }
        }
        for ((src, tgt), p) in groups {
            for (w, c) in self.normal_form_poly(p) {
                out.add_term(Path { src, tgt, arrows: w.0 }, c);
            }
        }
        out
    }

    fn insert(&mut self, rule: Rule) -> usize {
        let idx = self.rules.len();
        self.tips.insert(rule.tip.clone(), idx);
        self.tip_lens.insert(rule.tip.len());
        self.rules.push(Some(rule));
        idx
    }

    fn remove(&mut self, idx: usize) -> Rule {
        let rule = self.rules[idx].take().expect("live rule");
        self.tips.remove(&rule.tip);
        self.tip_lens = self.tips.keys().map(Vec::len).collect();
        rule
    }
}

fn make_rule(p: Poly) -> Option<Rule> {
    let (tip, lc) = p.iter().next().map(|(w, c)| (w.0.clone(), *c))?;
    let inv = lc.recip();
    let rest = p.iter().skip(1).map(|(w, c)| (w.0.clone(), -*c * inv)).collect();
    Some(Rule { tip, rest })
}

fn shift(p: &Poly, left: &[usize], right: &[usize], cap: usize) -> Poly {
    let mut out = Poly::new();
    for (w, c) in p {
        let len = left.len() + w.0.len() + right.len();
        if len >= cap {
            continue;
        }
        let mut nw = Vec::with_capacity(len);
        nw.extend_from_slice(left);
        nw.extend_from_slice(&w.0);
        nw.extend_from_slice(right);
        add_to(&mut out, Word(nw), *c);
    }
    out
}

/// Completes the relations of `a` to a Gröbner basis of `I + J^cap`.
pub fn groebner_complete(a: &Presentation, cap: usize) -> Result<Rewriting> {
    a.validate()?;
    if cap < 2 {
        return Err(Error::Domain("cap must be at least 2".into()));
    }
    let mut rw = Rewriting::empty(cap);
    let mut queue: VecDeque<Poly> = VecDeque::new();
    for r in &a.relations {
        let mut p = Poly::new();
        for (path, c) in r.terms() {
            if path.len() < cap {
                add_to(&mut p, Word(path.arrows.clone()), *c);
            }
        }
        queue.push_back(p);
    }
    while let Some(p) = queue.pop_front() {
        let p = rw.normal_form_poly(p);
        let Some(rule) = make_rule(p) else { continue };
        // rules whose tip is divisible by the new tip are no longer reduced
        let stale: Vec<usize> = rw
            .tips
            .iter()
            .filter(|(t, _)| t.windows(rule.tip.len()).any(|s| s == rule.tip.as_slice()))
            .map(|(_, &i)| i)
            .collect();
        for i in stale {
            let old = rw.remove(i);
            queue.push_back(old.as_poly());
        }
        let new_idx = rw.insert(rule);
        if rw.tips.len() > MAX_RULES {
            return Err(Error::CapExceeded {
                cap,
                detail: format!("more than {MAX_RULES} rewriting rules"),
            });
        }
        let live: Vec<usize> = rw.tips.values().copied().collect();
        let new = rw.rules[new_idx].clone().expect("just inserted");
        for other_idx in live {
            let other = rw.rules[other_idx].clone().expect("live");
            let pairs: &[(&Rule, &Rule)] =
                if other_idx == new_idx { &[(&new, &new)] } else { &[(&new, &other), (&other, &new)] };
            for &(g1, g2) in pairs {
                for s in overlaps(&g1.tip, &g2.tip) {
                    // g1.tip = X Y, g2.tip = Y Z with |Y| = s
                    let x = &g1.tip[..g1.tip.len() - s];
                    let z = &g2.tip[s..];
                    if x.len() + g2.tip.len() >= cap {
                        continue;
                    }
                    let mut sp = shift(&g1.as_poly(), &[], z, cap);
                    for (w, c) in shift(&g2.as_poly(), x, &[], cap) {
                        add_to(&mut sp, w, -c);
                    }
                    if !sp.is_empty() {
                        queue.push_back(sp);
                    }
                }
            }
        }
    }
    Ok(rw)
}

/// Lengths `s` with `0 < s < min(|a|, |b|)` such that the last `s` letters of
/// `a` equal the first `s` letters of `b`.
fn overlaps(a: &[usize], b: &[usize]) -> Vec<usize> {
    let m = a.len().min(b.len());
    (1..m).filter(|&s| a[a.len() - s..] == b[..s]).collect()
}

#[cfg(test)]
mod tests {
    use super::super::test_algebras::*;
    use super::*;

    #[test]
    fn commutative_square_single_rule() {
        let p = commutative_square();
        let rw = groebner_complete(&p, DEFAULT_CAP).unwrap();
        assert_eq!(rw.len(), 1);
        // arrows a=0, b=1, c=2, d=3: the tip is ab, rewritten to cd
        let rules = rw.rules();
        assert_eq!(rules[0].0, vec![0, 1]);
        assert_eq!(rules[0].1, vec![(vec![2, 3], Q::one())]);
    }

    #[test]
    fn no_relations_no_rules() {
        assert!(groebner_complete(&kronecker(), DEFAULT_CAP).unwrap().is_empty());
    }

    #[test]
    fn overlap_lengths() {
        assert_eq!(overlaps(&[1, 2, 1], &[2, 1, 3]), vec![2]);
        assert_eq!(overlaps(&[1, 1], &[1, 1]), vec![1]);
        assert!(overlaps(&[1], &[1]).is_empty());
    }

    #[test]
    fn local_order_prefers_short_terms() {
        // one loop x with relation x^2 - x^3: the tip is x^2
        let mut qv = super::super::Quiver::new(vec!["0".into()]);
        qv.add_arrow("x", 0, 0).unwrap();
        let r = path_poly(&qv, &[(1, &["x", "x"]), (-1, &["x", "x", "x"])]);
        let rw = groebner_complete(&Presentation::new(qv, vec![r]), 8).unwrap();
        assert_eq!(rw.tips(), vec![vec![0, 0]]);
        // x^2 = x^3 = x^4 = ... = 0 in the completion
        assert!(rw.normal_form_poly([(Word(vec![0, 0]), Q::one())].into_iter().collect()).is_empty());
    }
}
