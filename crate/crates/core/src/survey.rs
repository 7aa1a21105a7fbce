//! Enumeration of basic tilting sums of line bundles in a degree window and
//! exceptional simples, with their endomorphism algebras.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::canon::{presentation_fingerprint, Certificate, PairData};
use crate::error::{Error, Result};
use crate::lgroup::{LVec, WeightType};
use crate::pathalg::{fd_quotient, Presentation, Quotient, DEFAULT_CAP};
use crate::wpl::{end_algebra, ext1_dim, is_tau2_stable, tau_k, Sheaf};

/// Cliques examined before the search gives up.
const MAX_NODES: usize = 5_000_000;

#[derive(Clone, Debug)]
pub struct SurveyEntry {
    pub sum: Vec<Sheaf>,
    pub algebra: Presentation,
    pub tau2_stable: bool,
    /// Number of simple summands from each tube.
    pub simples_per_tube: Vec<usize>,
    /// How many tilting sums found in the window share this algebra.
    pub multiplicity: usize,
}

/// Line bundles with degree in `[lo, hi]` followed by all exceptional simples.
pub fn candidates(w: &WeightType, lo: &LVec, hi: &LVec) -> Vec<Sheaf> {
    let mut out: Vec<Sheaf> = w.interval(lo, hi).into_iter().map(Sheaf::Line).collect();
    for i in 0..w.t() {
        if w.weight(i) >= 2 {
            out.extend((0..w.weight(i)).map(|m| Sheaf::Simple { tube: i, m }));
        }
    }
    out
}

/// Groups of candidates that are searched as a unit.
fn units(w: &WeightType, cands: &[Sheaf], require_tau2: bool) -> Vec<Vec<usize>> {
    if !require_tau2 {
        return (0..cands.len()).map(|i| vec![i]).collect();
    }
    let index: HashMap<&Sheaf, usize> = cands.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut seen = vec![false; cands.len()];
    let mut out = Vec::new();
    'outer: for start in 0..cands.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        let mut cur = tau_k(w, &cands[start], 2);
        while cur != cands[start] {
            match index.get(&cur) {
                Some(&j) if orbit.len() <= cands.len() => orbit.push(j),
                // leaves the window (or never returns)
                _ => continue 'outer,
            }
            cur = tau_k(w, &cur, 2);
        }
        for &j in &orbit {
            seen[j] = true;
        }
        orbit.sort();
        out.push(orbit);
    }
    out
}

struct CliqueSearch<'a> {
    units: &'a [Vec<usize>],
    ok: &'a [Vec<bool>],
    target: usize,
    found: Vec<Vec<usize>>,
    nodes: usize,
}

impl CliqueSearch<'_> {
    fn run(&mut self, from: usize, chosen: &mut Vec<usize>, size: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > MAX_NODES {
            return Err(Error::Budget(format!("survey examined more than {MAX_NODES} partial sums")));
        }
        if size == self.target {
            let mut s: Vec<usize> = chosen.iter().flat_map(|&u| self.units[u].iter().copied()).collect();
            s.sort();
            self.found.push(s);
            return Ok(());
        }
        for u in from..self.units.len() {
            let unit = &self.units[u];
            if size + unit.len() > self.target {
                continue;
            }
            let fits = unit.iter().all(|&x| {
                chosen.iter().all(|&c| self.units[c].iter().all(|&y| self.ok[x][y]))
            });
            if !fits {
                continue;
            }
            chosen.push(u);
            self.run(u + 1, chosen, size + unit.len())?;
            chosen.pop();
        }
        Ok(())
    }
}

/// All basic tilting sums made of candidates, as sorted index lists.
pub fn tilting_sums(w: &WeightType, cands: &[Sheaf], require_tau2: bool) -> Result<Vec<Vec<usize>>> {
    let n = cands.len();
    let ext: Vec<Vec<bool>> =
        cands.par_iter().map(|x| cands.iter().map(|y| ext1_dim(w, x, y) == 0).collect()).collect();
    let ok: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| ext[i][j] && ext[j][i]).collect()).collect();
    let units: Vec<Vec<usize>> = units(w, cands, require_tau2)
        .into_iter()
        .filter(|u| u.iter().all(|&x| u.iter().all(|&y| ok[x][y])))
        .collect();
    let mut s = CliqueSearch { units: &units, ok: &ok, target: w.k0_rank(), found: Vec::new(), nodes: 0 };
    s.run(0, &mut Vec::new(), 0)?;
    // a tilting object needs a summand of positive rank
    s.found.retain(|sum| sum.iter().any(|&i| cands[i].is_line()));
    s.found.sort();
    Ok(s.found)
}

/// Tilting sums in the window, deduplicated by their endomorphism algebras.
///
/// Two algebras count as equal when their quivers, relation counts and
/// Cartan matrices agree up to relabeling of vertices.
pub fn survey_tilting(w: &WeightType, lo: &LVec, hi: &LVec, require_tau2: bool) -> Result<Vec<SurveyEntry>> {
    let cands = candidates(w, lo, hi);
    let sums = tilting_sums(w, &cands, require_tau2)?;
    let analyzed: Vec<(Vec<Sheaf>, Presentation, Certificate<usize, PairData>)> = sums
        .par_iter()
        .map(|idx| {
            let sum: Vec<Sheaf> = idx.iter().map(|&i| cands[i].clone()).collect();
            let alg = end_algebra(w, &sum)?;
            let fd = match fd_quotient(&alg, DEFAULT_CAP)? {
                Quotient::Finite(fd) => fd,
                Quotient::Infinite { .. } => {
                    return Err(Error::Internal("endomorphism algebra is infinite-dimensional".into()))
                }
            };
            let fp = presentation_fingerprint(&alg, &fd)?;
            Ok((sum, alg, fp))
        })
        .collect::<Result<_>>()?;
    let mut by_fp: HashMap<Certificate<usize, PairData>, usize> = HashMap::new();
    let mut out: Vec<SurveyEntry> = Vec::new();
    for (sum, alg, fp) in analyzed {
        if let Some(&k) = by_fp.get(&fp) {
            out[k].multiplicity += 1;
            continue;
        }
        by_fp.insert(fp, out.len());
        let mut q = vec![0; w.t()];
        for s in &sum {
            if let Sheaf::Simple { tube, .. } = s {
                q[*tube] += 1;
            }
        }
        out.push(SurveyEntry {
            tau2_stable: is_tau2_stable(w, &sum),
            sum,
            algebra: alg,
            simples_per_tube: q,
            multiplicity: 1,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpl::{canonical_sum, is_tilting};

    #[test]
    fn canonical_sum_is_found() {
        let w = WeightType::simple(&[2, 2, 2, 2]);
        let cands = candidates(&w, &w.zero(), &w.c().scale(2));
        let sums = tilting_sums(&w, &cands, false).unwrap();
        let mut canon = canonical_sum(&w);
        canon.sort();
        assert!(sums.iter().any(|s| s.iter().map(|&i| cands[i].clone()).collect::<Vec<_>>() == canon));
        for s in &sums {
            let t: Vec<Sheaf> = s.iter().map(|&i| cands[i].clone()).collect();
            assert!(is_tilting(&w, &t));
        }
    }

    #[test]
    fn wild_and_333_have_no_tau2_stable_sums() {
        for ws in [[3u32, 3, 3], [2, 3, 7]] {
            let w = WeightType::simple(&ws);
            let c = w.c();
            let r = survey_tilting(&w, &c.neg(), &c.scale(2), true).unwrap();
            assert!(r.is_empty(), "{ws:?}");
        }
    }

    #[test]
    fn orbits_of_244() {
        let w = WeightType::simple(&[2, 4, 4]);
        let cands = candidates(&w, &w.zero(), &w.c());
        let us = units(&w, &cands, true);
        // 4 omega = 0, so every line orbit in the window has size at most 2
        assert!(us.iter().all(|u| u.len() <= 2));
    }
}
