//! Detection of induced `P3 ∪ kP1` (k ∈ {1, 2}) and a repair-based generator
//! of graphs avoiding it.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::generate::{erdos_renyi, rng_from_seed};
use crate::graph::{Graph, VertexSet};

/// An induced `P3 ∪ kP1`: the path `a-b-c` plus `k` isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub path3: (usize, usize, usize),
    pub isolates: Vec<usize>,
}

impl PatternWitness {
    pub fn vertices(&self) -> Vec<usize> {
        let (a, b, c) = self.path3;
        let mut v = vec![a, b, c];
        v.extend(&self.isolates);
        v
    }

    /// Checks the witness against `g`: induced P3 and isolates independent
    /// from the path and from each other.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let (a, b, c) = self.path3;
        let mut all = self.vertices();
        all.sort_unstable();
        let distinct = all.windows(2).all(|w| w[0] != w[1]) && all.iter().all(|&v| v < g.n());
        distinct
            && g.has_edge(a, b)
            && g.has_edge(b, c)
            && !g.has_edge(a, c)
            && self.isolates.iter().enumerate().all(|(i, &x)| {
                [a, b, c].iter().all(|&p| !g.has_edge(x, p))
                    && self.isolates[i + 1..].iter().all(|&y| !g.has_edge(x, y))
            })
    }
}

fn closed_neighborhood(g: &Graph, v: usize) -> VertexSet {
    let mut s = g.neighbors(v).clone();
    s.insert(v);
    s
}

/// Lexicographically least induced `P3 ∪ kP1`, ordered by `(a, b, c, isolates)`
/// with `a < c`.
pub fn find_pattern(g: &Graph, k: usize) -> Option<PatternWitness> {
    assert!(k == 1 || k == 2, "only P3 ∪ P1 and P3 ∪ 2P1 are supported");
    let all = g.vertices();
    for a in 0..g.n() {
        let na = closed_neighborhood(g, a);
        for b in g.neighbors(a).iter() {
            let nb = g.neighbors(b);
            for c in nb.difference(&na).iter().filter(|&c| c > a) {
                let mut cand = all.difference(&na);
                cand.difference_with(nb);
                cand.difference_with(&closed_neighborhood(g, c));
                if k == 1 {
                    if let Some(i) = cand.first() {
                        return Some(PatternWitness { path3: (a, b, c), isolates: vec![i] });
                    }
                    continue;
                }
                for i in cand.iter() {
                    let rest = cand.difference(&closed_neighborhood(g, i));
                    if let Some(j) = rest.iter().find(|&j| j > i) {
                        return Some(PatternWitness { path3: (a, b, c), isolates: vec![i, j] });
                    }
                }
            }
        }
    }
    None
}

pub fn is_free(g: &Graph, k: usize) -> bool {
    find_pattern(g, k).is_none()
}

/// A `(P3 ∪ kP1)`-free graph: Erdős–Rényi `G(n, density)`, then while a
/// witness exists add one uniformly chosen non-edge among its vertices.
pub fn gen_free(n: usize, density: f64, k: usize, seed: u64) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut g = erdos_renyi(n, density, &mut rng);
    while let Some(w) = find_pattern(&g, k) {
        let verts = w.vertices();
        let mut missing = Vec::new();
        for (i, &x) in verts.iter().enumerate() {
            for &y in &verts[i + 1..] {
                if !g.has_edge(x, y) {
                    missing.push((x, y));
                }
            }
        }
        let &(x, y) = missing.choose(&mut rng).expect("a witness always has a non-edge");
        g.add_edge(x, y);
    }
    debug_assert!(is_free(&g, k));
    g
}
