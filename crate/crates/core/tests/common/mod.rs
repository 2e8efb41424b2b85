//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's algorithms; each answer comes from plain enumeration over
//! an adjacency matrix.
#![allow(dead_code)]

use hamtough::generate::{erdos_renyi, rng_from_seed};
use hamtough::toughness::{rational, Rational};
use hamtough::Graph;

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Components of the subgraph induced by the vertices in `keep`.
pub fn component_count(adj: &[Vec<bool>], keep: u64) -> usize {
    let n = adj.len();
    let mut seen = 0u64;
    let mut count = 0;
    for s in 0..n {
        if keep >> s & 1 == 0 || seen >> s & 1 == 1 {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen |= 1 << s;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if adj[x][y] && keep >> y & 1 == 1 && seen >> y & 1 == 0 {
                    seen |= 1 << y;
                    stack.push(y);
                }
            }
        }
    }
    count
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// `min |S|/c(G−S)` over every vertex subset; `None` when no cutset exists.
pub fn brute_toughness(g: &Graph) -> Option<Rational> {
    let adj = matrix(g);
    let full = full_mask(g.n());
    let mut best: Option<Rational> = None;
    for s in 0..=full {
        let c = component_count(&adj, full & !s);
        if c >= 2 {
            let r = rational(s.count_ones() as i64, c as i64);
            if best.is_none_or(|b| r < b) {
                best = Some(r);
            }
        }
    }
    best
}

/// Some cutset `S` with `|S| < t·c(G−S)`.
pub fn brute_tough_violation(g: &Graph, t: Rational) -> Option<u64> {
    let adj = matrix(g);
    let full = full_mask(g.n());
    (0..=full).find(|&s| {
        let c = component_count(&adj, full & !s);
        c >= 2 && rational(s.count_ones() as i64, 1) < t * rational(c as i64, 1)
    })
}

/// Any induced `P3 ∪ kP1`, by checking every `(3+k)`-subset's edge pattern.
pub fn brute_has_pattern(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let size = 3 + k;
    if n < size {
        return false;
    }
    let adj = matrix(g);
    (0u64..1 << n).filter(|s| s.count_ones() as usize == size).any(|s| {
        let vs: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let deg: Vec<usize> = vs.iter().map(|&a| vs.iter().filter(|&&b| adj[a][b]).count()).collect();
        let edges: usize = deg.iter().sum::<usize>() / 2;
        edges == 2 && deg.iter().filter(|&&d| d == 0).count() == k
    })
}

fn extend_path(adj: &[Vec<bool>], path: &mut Vec<usize>, used: &mut u64, done: &dyn Fn(&[usize]) -> bool) -> bool {
    let n = adj.len();
    if path.len() == n {
        return done(path);
    }
    let last = *path.last().unwrap();
    for y in 0..n {
        if adj[last][y] && *used >> y & 1 == 0 {
            path.push(y);
            *used |= 1 << y;
            if extend_path(adj, path, used, done) {
                return true;
            }
            *used &= !(1 << y);
            path.pop();
        }
    }
    false
}

/// Hamiltonian cycle by exhaustive path extension from vertex 0.
pub fn brute_hamiltonian(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let adj = matrix(g);
    let close = |p: &[usize]| adj[p[p.len() - 1]][p[0]];
    extend_path(&adj, &mut vec![0], &mut 1, &close)
}

pub fn brute_ham_path(g: &Graph, u: usize, v: usize) -> bool {
    let adj = matrix(g);
    if g.n() == 1 {
        return u == v;
    }
    let end = |p: &[usize]| p[p.len() - 1] == v;
    extend_path(&adj, &mut vec![u], &mut (1 << u), &end)
}

pub fn brute_ham_connected(g: &Graph) -> bool {
    (0..g.n()).all(|u| (u + 1..g.n()).all(|v| brute_ham_path(g, u, v)))
}

/// An `X`-subset violating Hall's condition with multiplicities `f`.
pub fn brute_hall_violation(adj: &[Vec<usize>], f: &[usize]) -> Option<u64> {
    let nx = adj.len();
    (1u64..1 << nx).find(|&s| {
        let mut nb = 0u64;
        let mut demand = 0;
        for x in 0..nx {
            if s >> x & 1 == 1 {
                demand += f[x];
                for &y in &adj[x] {
                    nb |= 1 << y;
                }
            }
        }
        (nb.count_ones() as usize) < demand
    })
}

/// Maximum of `Σ_{x∈S} f(x) − |N(S)|` over all `S ⊆ X`, including `S = ∅`.
pub fn brute_max_deficiency(adj: &[Vec<usize>], f: &[usize]) -> (usize, Vec<u64>) {
    let nx = adj.len();
    let mut best = 0i64;
    let mut sets = Vec::new();
    for s in 0u64..1 << nx {
        let mut nb = 0u64;
        let mut demand = 0i64;
        for x in 0..nx {
            if s >> x & 1 == 1 {
                demand += f[x] as i64;
                for &y in &adj[x] {
                    nb |= 1 << y;
                }
            }
        }
        let d = demand - nb.count_ones() as i64;
        if d > best {
            best = d;
            sets.clear();
        }
        if d == best {
            sets.push(s);
        }
    }
    (best as usize, sets)
}

/// Size of a maximum bipartite matching by exhaustive search.
pub fn brute_matching_size(adj: &[Vec<usize>], ny: usize) -> usize {
    fn go(adj: &[Vec<usize>], x: usize, used: u64) -> usize {
        if x == adj.len() {
            return 0;
        }
        let mut best = go(adj, x + 1, used);
        for &y in &adj[x] {
            if used >> y & 1 == 0 {
                best = best.max(1 + go(adj, x + 1, used | 1 << y));
            }
        }
        best
    }
    let _ = ny;
    go(adj, 0, 0)
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    erdos_renyi(n, p, &mut rng_from_seed(seed))
}

pub fn mask_of(vs: impl IntoIterator<Item = usize>) -> u64 {
    vs.into_iter().fold(0, |m, v| m | 1 << v)
}
