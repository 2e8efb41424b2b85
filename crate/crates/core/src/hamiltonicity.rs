//! Exact Hamiltonicity oracles, cycle extension, and the degree-condition
//! guards used by the constructor.
//!
//! Two independent engines are provided: a Held–Karp style bitmask dynamic
//! program over vertex subsets, and a pruned depth-first backtracking search.
//! Both are exact; the second exists to cross-check the first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{splice, Cycle, Graph, PathSeq, VertexSet};
use crate::toughness::{int, Rational};

/// Default vertex cap for the exact engines.
pub const DEFAULT_DP_CAP: usize = 22;

/// Hard ceiling on any configured cap: the subset table has 2^n entries.
pub const MAX_DP_CAP: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Dp,
    Backtrack,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamWitness {
    Cycle(Cycle),
    Path(PathSeq),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamResult {
    pub found: bool,
    pub witness: Option<HamWitness>,
    pub nodes_explored: u64,
}

impl HamResult {
    fn none(nodes: u64) -> Self {
        Self { found: false, witness: None, nodes_explored: nodes }
    }

    pub fn cycle(&self) -> Option<&Cycle> {
        match &self.witness {
            Some(HamWitness::Cycle(c)) => Some(c),
            _ => None,
        }
    }

    pub fn path(&self) -> Option<&PathSeq> {
        match &self.witness {
            Some(HamWitness::Path(p)) => Some(p),
            _ => None,
        }
    }
}

/// Largest order the backtracking engine accepts (bitmask width).
pub const MAX_BACKTRACK_N: usize = 64;

fn check_cap(g: &Graph, cap: usize) -> Result<Vec<u64>> {
    check_cap_for(g, cap, Engine::Dp)
}

fn check_cap_for(g: &Graph, cap: usize, engine: Engine) -> Result<Vec<u64>> {
    let cap = cap.min(match engine {
        Engine::Dp => MAX_DP_CAP,
        Engine::Backtrack => MAX_BACKTRACK_N,
    });
    if g.n() > cap {
        return Err(Error::OverCap { n: g.n(), cap });
    }
    Ok((0..g.n()).map(|v| g.adj_mask(v)).collect())
}

#[inline]
fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(b)
        }
    })
}

/// `table[mask]` is the set of vertices `v` such that some path starting at
/// `start` visits exactly `mask` and ends at `v`.
struct PathTable {
    start: usize,
    table: Vec<u32>,
    nodes: u64,
}

impl PathTable {
    fn build(adj: &[u64], start: usize) -> Self {
        let n = adj.len();
        let mut table = vec![0u32; 1 << n];
        table[1 << start] = 1 << start;
        let mut nodes = 0;
        let sbit = 1usize << start;
        for mask in 0..table.len() {
            let ends = table[mask];
            if ends == 0 || mask & sbit == 0 {
                continue;
            }
            for v in bits(ends as u64) {
                nodes += 1;
                for w in bits(adj[v] & !(mask as u64)) {
                    table[mask | 1 << w] |= 1 << w;
                }
            }
        }
        Self { start, table, nodes }
    }

    fn ends(&self, mask: usize) -> u32 {
        self.table[mask]
    }

    /// Walks back from `end` through `mask` to `start`.
    fn reconstruct(&self, adj: &[u64], mut mask: usize, end: usize) -> Vec<usize> {
        let mut path = vec![end];
        let mut cur = end;
        while mask != 1 << self.start {
            mask &= !(1 << cur);
            let prev = (self.table[mask] as u64 & adj[cur]).trailing_zeros() as usize;
            path.push(prev);
            cur = prev;
        }
        path.reverse();
        path
    }
}

pub fn ham_cycle(g: &Graph) -> Result<HamResult> {
    ham_cycle_with(g, Engine::Dp, DEFAULT_DP_CAP)
}

pub fn ham_cycle_with(g: &Graph, engine: Engine, cap: usize) -> Result<HamResult> {
    let adj = check_cap_for(g, cap, engine)?;
    let n = g.n();
    if n < 3 {
        return Ok(HamResult::none(0));
    }
    if (0..n).any(|v| g.degree(v) < 2) {
        return Ok(HamResult::none(0));
    }
    let (verts, nodes) = match engine {
        Engine::Dp => {
            let pt = PathTable::build(&adj, 0);
            let full = (1usize << n) - 1;
            let closing = pt.ends(full) as u64 & adj[0];
            let verts = (closing != 0).then(|| pt.reconstruct(&adj, full, closing.trailing_zeros() as usize));
            (verts, pt.nodes)
        }
        Engine::Backtrack => {
            let mut search = Backtrack::new(&adj, 0, None);
            let found = search.run();
            (found.then(|| search.path.clone()), search.nodes)
        }
    };
    match verts {
        Some(mut v) => {
            // Orientation with the smaller neighbour of the start second.
            if v[1] > v[n - 1] {
                v[1..].reverse();
            }
            let c = Cycle::new(g, v).expect("engine produced an invalid cycle");
            Ok(HamResult { found: true, witness: Some(HamWitness::Cycle(c)), nodes_explored: nodes })
        }
        None => Ok(HamResult::none(nodes)),
    }
}

pub fn ham_path_between(g: &Graph, u: usize, v: usize) -> Result<HamResult> {
    ham_path_between_with(g, u, v, Engine::Dp, DEFAULT_DP_CAP)
}

pub fn ham_path_between_with(g: &Graph, u: usize, v: usize, engine: Engine, cap: usize) -> Result<HamResult> {
    if u == v {
        return Err(Error::InvalidArgument(format!("path ends must differ, got {u} twice")));
    }
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
        }
    }
    let adj = check_cap_for(g, cap, engine)?;
    let n = g.n();
    let (verts, nodes) = match engine {
        Engine::Dp => {
            let pt = PathTable::build(&adj, u);
            let full = (1usize << n) - 1;
            let verts = (pt.ends(full) & (1 << v) != 0).then(|| pt.reconstruct(&adj, full, v));
            (verts, pt.nodes)
        }
        Engine::Backtrack => {
            let mut search = Backtrack::new(&adj, u, Some(v));
            let found = search.run();
            (found.then(|| search.path.clone()), search.nodes)
        }
    };
    match verts {
        Some(p) => {
            let p = PathSeq::new(g, p).expect("engine produced an invalid path");
            Ok(HamResult { found: true, witness: Some(HamWitness::Path(p)), nodes_explored: nodes })
        }
        None => Ok(HamResult::none(nodes)),
    }
}

/// For each start vertex, the set of vertices reachable as the far end of a
/// Hamiltonian path.
pub fn ham_path_ends(g: &Graph, cap: usize) -> Result<Vec<VertexSet>> {
    let adj = check_cap(g, cap)?;
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let full = (1usize << n) - 1;
    Ok((0..n)
        .map(|u| VertexSet::from_mask(PathTable::build(&adj, u).ends(full) as u64))
        .collect())
}

pub fn ham_connected(g: &Graph) -> Result<bool> {
    ham_connected_with_cap(g, DEFAULT_DP_CAP)
}

pub fn ham_connected_with_cap(g: &Graph, cap: usize) -> Result<bool> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Hamiltonian connectedness needs n ≥ 2, got {n}")));
    }
    check_cap(g, cap)?;
    if n >= 3 && (0..n).any(|v| g.degree(v) < 2) {
        return Ok(false);
    }
    let ends = ham_path_ends(g, cap)?;
    Ok((0..n).all(|u| (u + 1..n).all(|v| ends[u].contains(v))))
}

/// Depth-first Hamiltonian path/cycle search with degree and connectivity
/// pruning.
struct Backtrack<'a> {
    adj: &'a [u64],
    full: u64,
    start: usize,
    /// Fixed far end for path search; `None` searches for a cycle through `start`.
    target: Option<usize>,
    path: Vec<usize>,
    nodes: u64,
}

impl<'a> Backtrack<'a> {
    fn new(adj: &'a [u64], start: usize, target: Option<usize>) -> Self {
        let n = adj.len();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self { adj, full, start, target, path: vec![start], nodes: 0 }
    }

    fn run(&mut self) -> bool {
        let visited = 1u64 << self.start;
        self.extend(visited)
    }

    fn feasible(&self, visited: u64, end: usize) -> bool {
        let unvisited = self.full & !visited;
        // Vertices still to be entered and left need two usable neighbours;
        // the fixed far end (or the closing start) only needs one.
        let anchor = match self.target {
            Some(_) => 0,
            None => 1u64 << self.start,
        };
        let open = unvisited | (1 << end) | anchor;
        for w in bits(unvisited) {
            let need = if Some(w) == self.target { 1 } else { 2 };
            if ((self.adj[w] & open).count_ones() as usize) < need {
                return false;
            }
        }
        // The unvisited vertices must hang together off the current end.
        let mut reach = 1u64 << end;
        let mut frontier = reach;
        let allowed = unvisited | (1 << end);
        while frontier != 0 {
            let mut next = 0;
            for b in bits(frontier) {
                next |= self.adj[b];
            }
            next &= allowed & !reach;
            reach |= next;
            frontier = next;
        }
        reach & unvisited == unvisited
    }

    fn extend(&mut self, visited: u64) -> bool {
        self.nodes += 1;
        let end = *self.path.last().expect("path starts at the start vertex");
        if visited == self.full {
            return match self.target {
                Some(t) => end == t,
                None => self.adj[end] & (1 << self.start) != 0,
            };
        }
        if !self.feasible(visited, end) {
            return false;
        }
        let mut nexts = self.adj[end] & !visited;
        if let Some(t) = self.target {
            if visited | (1 << t) != self.full {
                nexts &= !(1 << t);
            }
        }
        for w in bits(nexts) {
            self.path.push(w);
            if self.extend(visited | 1 << w) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

/// Extends `c` by the external vertex `x` when `d_C(x) > n/(t+1) − 1`.
///
/// Tries a direct insertion between consecutive neighbours of `x`, then a
/// single rotation `x w ←C← z⁺ w⁺ →C→ z x` in both orientations, then an
/// exact search on `G[V(C) ∪ {x}]` when it fits under `cap`.
pub fn extend_cycle(g: &Graph, c: &Cycle, x: usize, t: Rational) -> Result<Cycle> {
    extend_cycle_with_cap(g, c, x, t, DEFAULT_DP_CAP)
}

pub fn extend_cycle_with_cap(g: &Graph, c: &Cycle, x: usize, t: Rational, cap: usize) -> Result<Cycle> {
    if x >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
    }
    if c.contains(x) {
        return Err(Error::InvalidArgument(format!("vertex {x} is already on the cycle")));
    }
    let on_cycle = c.vertex_set();
    let d = g.neighbors(x).intersection_len(&on_cycle);
    if !exceeds_lemma_threshold(d, g.n(), t) {
        return Err(Error::InvalidArgument(format!(
            "extension hypothesis fails: d_C({x}) = {d} is not above n/(t+1) − 1 for n = {}, t = {t}",
            g.n()
        )));
    }
    let single = PathSeq::new(g, vec![x])?;
    for (w, w_next) in c.edges() {
        if g.has_edge(x, w) && g.has_edge(x, w_next) {
            return splice(g, c, (w, w_next), &single);
        }
    }
    for oriented in [c.clone(), c.reversed()] {
        if let Some(verts) = rotation_insert(g, &oriented, x) {
            return Cycle::new(g, verts);
        }
    }
    let mut all = on_cycle;
    all.insert(x);
    if all.len() <= cap.min(MAX_DP_CAP) {
        let (h, map) = g.induced(&all);
        if let Some(hc) = ham_cycle_with(&h, Engine::Dp, cap)?.cycle() {
            return Cycle::new(g, hc.verts().iter().map(|&i| map[i]).collect());
        }
    }
    Err(Error::LemmaViolationCandidate(format!(
        "no cycle on V(C) ∪ {{{x}}} found although d_C({x}) = {d} exceeds n/(t+1) − 1 (n = {}, t = {t})",
        g.n()
    )))
}

fn rotation_insert(g: &Graph, c: &Cycle, x: usize) -> Option<Vec<usize>> {
    let nbrs: Vec<usize> = c.verts().iter().copied().filter(|&w| g.has_edge(x, w)).collect();
    for &w in &nbrs {
        let w_next = c.successor(w).ok()?;
        for &z in &nbrs {
            if z == w || z == w_next {
                continue;
            }
            let z_next = c.successor(z).ok()?;
            if z_next == w || !g.has_edge(w_next, z_next) {
                continue;
            }
            let mut verts = vec![x];
            verts.extend(c.segment_back(w, z_next).ok()?);
            verts.extend(c.segment(w_next, z).ok()?);
            return Some(verts);
        }
    }
    None
}

/// `d > n/(t+1) − 1`, exactly.
pub fn exceeds_lemma_threshold(d: usize, n: usize, t: Rational) -> bool {
    int(d) > lemma_threshold(n, t)
}

/// `n/(t+1) − 1`.
pub fn lemma_threshold(n: usize, t: Rational) -> Rational {
    int(n) / (t + int(1)) - int(1)
}

/// True iff `δ(G) > n/(t+1) − 1`.
pub fn lemma22_guard(g: &Graph, t: Rational) -> bool {
    exceeds_lemma_threshold(g.min_degree(), g.n(), t)
}

/// `2n/(t+1) + t − 2`.
pub fn degree_sum_threshold(n: usize, t: Rational) -> Rational {
    int(2 * n) / (t + int(1)) + t - int(2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSumGuard {
    /// Every nonadjacent pair has degree sum above the threshold.
    pub holds: bool,
    /// The lexicographically least nonadjacent pair of minimum degree sum.
    pub worst_pair: Option<(usize, usize)>,
    pub worst_sum: Option<usize>,
    #[serde(with = "crate::toughness::rational_str")]
    pub threshold: Rational,
}

pub fn degree_sum_guard(g: &Graph, t: Rational) -> DegreeSumGuard {
    let threshold = degree_sum_threshold(g.n(), t);
    let mut worst: Option<((usize, usize), usize)> = None;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) {
                let s = g.degree(u) + g.degree(v);
                if worst.is_none_or(|(_, w)| s < w) {
                    worst = Some(((u, v), s));
                }
            }
        }
    }
    DegreeSumGuard {
        holds: worst.is_none_or(|(_, s)| int(s) > threshold),
        worst_pair: worst.map(|(p, _)| p),
        worst_sum: worst.map(|(_, s)| s),
        threshold,
    }
}
