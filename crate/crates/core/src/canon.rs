//! Canonical labeling of vertex-colored, edge-weighted digraphs by
//! individualization and refinement, and isomorphism fingerprints of
//! presentations and graded quivers built on it.

use crate::error::{Error, Result};
use crate::pathalg::{FdAlgebra, Presentation, Quiver};

/// Leaves of the search tree we are willing to visit.
const MAX_LEAVES: usize = 200_000;

/// A certificate: equal for two inputs exactly when they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate<C, W> {
    pub colors: Vec<C>,
    pub weights: Vec<W>,
}

struct Search<'a, C, W> {
    colors: &'a [C],
    weights: &'a [Vec<W>],
    best: Option<(Certificate<C, W>, Vec<usize>)>,
    leaves: usize,
}

/// Ranks vertices by a label-invariant signature until stable.
fn refine<W: Ord + Clone>(weights: &[Vec<W>], mut cell: Vec<usize>) -> Vec<usize> {
    let n = cell.len();
    loop {
        let classes = cell.iter().collect::<std::collections::BTreeSet<_>>().len();
        let sigs: Vec<(usize, Vec<(usize, W, W)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, W, W)> =
                    (0..n).map(|u| (cell[u], weights[v][u].clone(), weights[u][v].clone())).collect();
                s.sort();
                (cell[v], s)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<(usize, W, W)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| sorted.binary_search(&s).unwrap()).collect();
        let new_classes = sorted.len();
        cell = next;
        if new_classes == classes {
            return cell;
        }
    }
}

impl<C: Ord + Clone, W: Ord + Clone> Search<'_, C, W> {
    fn run(&mut self, cell: Vec<usize>) -> Result<()> {
        let cell = refine(self.weights, cell);
        let n = cell.len();
        let mut counts = vec![0usize; n];
        for &c in &cell {
            counts[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
            self.leaf(&cell);
            return if self.leaves > MAX_LEAVES {
                Err(Error::Budget(format!("canonical labeling visited more than {MAX_LEAVES} leaves")))
            } else {
                Ok(())
            };
        };
        for v in (0..n).filter(|&v| cell[v] == target) {
            // v goes first inside its cell
            let next: Vec<usize> = (0..n)
                .map(|u| {
                    if cell[u] < target || u == v {
                        2 * cell[u]
                    } else {
                        2 * cell[u] + 1
                    }
                })
                .collect();
            self.run(next)?;
        }
        Ok(())
    }

    fn leaf(&mut self, cell: &[usize]) {
        self.leaves += 1;
        let n = cell.len();
        // order[pos] = vertex at that position
        let mut order = vec![0; n];
        for (v, &c) in cell.iter().enumerate() {
            order[c] = v;
        }
        let cert = Certificate {
            colors: order.iter().map(|&v| self.colors[v].clone()).collect(),
            weights: order
                .iter()
                .flat_map(|&v| order.iter().map(move |&u| (v, u)))
                .map(|(v, u)| self.weights[v][u].clone())
                .collect(),
        };
        if self.best.as_ref().is_none_or(|(b, _)| cert < *b) {
            self.best = Some((cert, order));
        }
    }
}

/// Canonical certificate and the vertex order realizing it.
pub fn canonical_form<C: Ord + Clone, W: Ord + Clone>(
    colors: &[C],
    weights: &[Vec<W>],
) -> Result<(Certificate<C, W>, Vec<usize>)> {
    let n = colors.len();
    let mut ranked: Vec<&C> = colors.iter().collect();
    ranked.sort();
    ranked.dedup();
    let cell: Vec<usize> = colors.iter().map(|c| ranked.binary_search(&c).unwrap()).collect();
    let mut s = Search { colors, weights, best: None, leaves: 0 };
    if n == 0 {
        return Ok((Certificate { colors: Vec::new(), weights: Vec::new() }, Vec::new()));
    }
    s.run(cell)?;
    Ok(s.best.expect("at least one leaf"))
}

/// Per-pair data of a presentation: arrow count, relation count and Cartan entry.
pub type PairData = (usize, usize, usize);

/// Fingerprint of a quiver with relations, up to relabeling of vertices:
/// arrows, minimal relation counts and the Cartan matrix per vertex pair.
pub fn presentation_fingerprint(a: &Presentation, fd: &FdAlgebra) -> Result<Certificate<usize, PairData>> {
    let n = a.quiver.n();
    let arrows = a.quiver.arrow_matrix();
    let rels = a.relation_matrix();
    let cartan = fd.cartan();
    let weights: Vec<Vec<PairData>> =
        (0..n).map(|i| (0..n).map(|j| (arrows[i][j], rels[i][j], cartan[i][j])).collect()).collect();
    Ok(canonical_form(&vec![0usize; n], &weights)?.0)
}

/// Multiset of arrow degrees between each pair of vertices.
pub fn graded_quiver_weights(q: &Quiver, degrees: &[i64]) -> Vec<Vec<Vec<i64>>> {
    let n = q.n();
    let mut w = vec![vec![Vec::new(); n]; n];
    for (a, arr) in q.arrows.iter().enumerate() {
        w[arr.source][arr.target].push(degrees[a]);
    }
    for row in &mut w {
        for cell in row {
            cell.sort();
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn relabel(w: &[Vec<u8>], perm: &[usize]) -> Vec<Vec<u8>> {
        let n = w.len();
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[perm[i]][perm[j]] = w[i][j];
            }
        }
        out
    }

    #[test]
    fn distinguishes_orientation() {
        // 0 -> 1 -> 2 versus 0 -> 1 <- 2
        let a = vec![vec![0u8, 1, 0], vec![0, 0, 1], vec![0, 0, 0]];
        let b = vec![vec![0u8, 1, 0], vec![0, 0, 0], vec![0, 1, 0]];
        let c = vec![0u8; 3];
        assert_ne!(canonical_form(&c, &a).unwrap().0, canonical_form(&c, &b).unwrap().0);
    }

    #[test]
    fn symmetric_graph() {
        // a 6-cycle: vertex-transitive, refinement alone cannot split it
        let n = 6;
        let mut w = vec![vec![0u8; n]; n];
        for i in 0..n {
            w[i][(i + 1) % n] = 1;
        }
        let (cert, order) = canonical_form(&vec![0u8; n], &w).unwrap();
        assert_eq!(order.len(), n);
        let perm = [3, 4, 5, 0, 1, 2];
        assert_eq!(canonical_form(&vec![0u8; n], &relabel(&w, &perm)).unwrap().0, cert);
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling(
            edges in proptest::collection::vec((0usize..7, 0usize..7, 0u8..3), 0..20),
            perm in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            let n = 7;
            let mut w = vec![vec![0u8; n]; n];
            for (i, j, c) in edges {
                w[i][j] = c;
            }
            let colors = vec![0u8; n];
            let a = canonical_form(&colors, &w).unwrap().0;
            let b = canonical_form(&colors, &relabel(&w, &perm)).unwrap().0;
            prop_assert_eq!(a, b);
        }

        #[test]
        fn certificate_reconstructs_graph(
            edges in proptest::collection::vec((0usize..5, 0usize..5, 1u8..3), 0..12),
        ) {
            let n = 5;
            let mut w = vec![vec![0u8; n]; n];
            for (i, j, c) in edges {
                w[i][j] = c;
            }
            let (cert, order) = canonical_form(&vec![0u8; n], &w).unwrap();
            for (p, &v) in order.iter().enumerate() {
                for (q, &u) in order.iter().enumerate() {
                    prop_assert_eq!(cert.weights[p * n + q], w[v][u]);
                }
            }
        }
    }
}
