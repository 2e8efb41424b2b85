//! Simple undirected graphs over dense vertex ids, vertex bitsets, and
//! oriented paths and cycles.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A set of vertex ids stored as a growable bitset.
///
/// Equality, hashing and ordering ignore trailing zero words, so two sets
/// with the same members compare equal regardless of their capacity. The
/// ordering is lexicographic on the ascending member lists.
#[derive(Clone, Default)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self { words: Vec::new() }
    }

    pub fn with_capacity(n: usize) -> Self {
        Self { words: vec![0; n.div_ceil(64)] }
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::with_capacity(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(n);
            *w = if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    pub fn from_mask(mask: u64) -> Self {
        Self { words: vec![mask] }
    }

    /// The first 64 members as a mask. Only meaningful for graphs with n ≤ 64.
    #[inline]
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        match self.words.get_mut(w) {
            Some(word) if *word & (1 << b) != 0 => {
                *word &= !(1 << b);
                true
            }
            _ => false,
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words.get(v / 64).is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (i, a) in self.words.iter_mut().enumerate() {
            *a &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn trimmed(&self) -> &[u64] {
        let end = self.words.iter().rposition(|&w| w != 0).map_or(0, |p| p + 1);
        &self.words[..end]
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for VertexSet {}

impl Hash for VertexSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        Ok(v.into_iter().collect())
    }
}

/// An immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { n, m: 0, adj: vec![VertexSet::with_capacity(n); n] }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric adjacency predicate.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1 && n > 2))
    }

    pub fn path(n: usize) -> Self {
        Self::from_fn(n, |u, v| v == u + 1)
    }

    /// `K_{a,b}` with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_fn(a + b, |u, v| (u < a) != (v < a))
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i-(i+5)`.
    pub fn petersen() -> Self {
        Self::from_fn(10, |u, v| {
            if v < 5 {
                (v + 5 - u) % 5 == 1 || (u + 5 - v) % 5 == 1
            } else if u >= 5 {
                let (a, b) = (u - 5, v - 5);
                (b + 5 - a) % 5 == 2 || (a + 5 - b) % 5 == 2
            } else {
                v == u + 5
            }
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// Neighbourhood of `v` as a mask; requires n ≤ 64.
    #[inline]
    pub fn adj_mask(&self, v: usize) -> u64 {
        self.adj[v].mask()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || components(self, &VertexSet::new()).len() == 1
    }

    /// `N_G(v) ∩ set`.
    pub fn neighbors_in(&self, v: usize, set: &VertexSet) -> VertexSet {
        self.adj[v].intersection(set)
    }

    /// `N_G(S) = ∪ N(x) ∖ S`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::with_capacity(self.n);
        for x in s {
            out.union_with(&self.adj[x]);
        }
        out.difference_with(s);
        out
    }

    /// Number of edges with one end in `a` and the other in `b` (disjoint sets).
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|x| self.adj[x].intersection_len(b)).sum()
    }

    pub fn complement(&self) -> Graph {
        Self::from_fn(self.n, |u, v| !self.has_edge(u, v))
    }

    /// Returns `g` with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n: self.n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let mut g = self.clone();
        g.add_edge(u, v);
        Ok(g)
    }

    /// Materializes `G[S]` with vertices renumbered in ascending order of
    /// their original ids. The second value maps new ids to original ids.
    pub fn induced(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for w in self.adj[v].iter() {
                let j = index[w];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j);
                }
            }
        }
        (g, map)
    }

    /// Applies the permutation `perm` (old id → new id).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

/// Components of `g − removed`, each as a vertex set, ordered by smallest
/// member ascending.
pub fn components(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut unseen = g.vertices();
    unseen.difference_with(removed);
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    while let Some(start) = unseen.first() {
        unseen.remove(start);
        let mut comp = VertexSet::with_capacity(g.n());
        comp.insert(start);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(x).intersection(&unseen).iter() {
                unseen.remove(y);
                comp.insert(y);
                queue.push_back(y);
            }
        }
        out.push(comp);
    }
    out
}

/// Component count of `g − removed` for graphs with n ≤ 64, using masks.
#[inline]
pub(crate) fn component_count_mask(adj: &[u64], mut remaining: u64) -> usize {
    let mut count = 0;
    while remaining != 0 {
        let mut frontier = remaining & remaining.wrapping_neg();
        let mut comp = frontier;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let b = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[b];
            }
            next &= remaining & !comp;
            comp |= next;
            frontier = next;
        }
        remaining &= !comp;
        count += 1;
    }
    count
}

pub fn is_clique(g: &Graph, s: &VertexSet) -> bool {
    s.iter().all(|x| {
        let mut others = s.clone();
        others.remove(x);
        others.is_subset(g.neighbors(x))
    })
}

/// Vertex-disjoint, edge-consecutive ordered vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSeq {
    verts: Vec<usize>,
}

impl PathSeq {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Self> {
        if verts.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        check_sequence(g, &verts).map_err(Error::InvalidPath)?;
        Ok(Self { verts })
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    pub fn into_verts(self) -> Vec<usize> {
        self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn first(&self) -> usize {
        self.verts[0]
    }

    pub fn last(&self) -> usize {
        self.verts[self.verts.len() - 1]
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().copied().collect()
    }

    pub fn reversed(&self) -> PathSeq {
        let mut verts = self.verts.clone();
        verts.reverse();
        PathSeq { verts }
    }

    /// `uPvxQy`: joins `self` (ending at v) to `other` (starting at x) through
    /// the edge vx.
    pub fn concat(&self, g: &Graph, other: &PathSeq) -> Result<PathSeq> {
        let mut verts = self.verts.clone();
        verts.extend_from_slice(&other.verts);
        PathSeq::new(g, verts)
    }
}

/// An oriented cycle; the orientation is the order of `verts`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle {
    verts: Vec<usize>,
}

impl Cycle {
    pub fn new(g: &Graph, verts: Vec<usize>) -> Result<Self> {
        if verts.len() < 3 {
            return Err(Error::InvalidCycle(format!("length {} < 3", verts.len())));
        }
        check_sequence(g, &verts).map_err(Error::InvalidCycle)?;
        let (a, b) = (verts[verts.len() - 1], verts[0]);
        if !g.has_edge(a, b) {
            return Err(Error::InvalidCycle(format!("closing pair {a}-{b} is not an edge")));
        }
        Ok(Self { verts })
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    pub fn into_verts(self) -> Vec<usize> {
        self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.verts.contains(&x)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().copied().collect()
    }

    pub fn position(&self, x: usize) -> Result<usize> {
        self.verts.iter().position(|&v| v == x).ok_or(Error::NotOnCycle(x))
    }

    /// `x⁺`.
    pub fn successor(&self, x: usize) -> Result<usize> {
        let i = self.position(x)?;
        Ok(self.verts[(i + 1) % self.verts.len()])
    }

    /// `x⁻`.
    pub fn predecessor(&self, x: usize) -> Result<usize> {
        let i = self.position(x)?;
        Ok(self.verts[(i + self.verts.len() - 1) % self.verts.len()])
    }

    pub fn reversed(&self) -> Cycle {
        let mut verts = self.verts.clone();
        verts.reverse();
        Cycle { verts }
    }

    /// `u→C→v`: vertices from u to v following the orientation.
    pub fn segment(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        let len = self.verts.len();
        let (i, j) = (self.position(u)?, self.position(v)?);
        let steps = (j + len - i) % len;
        Ok((0..=steps).map(|k| self.verts[(i + k) % len]).collect())
    }

    /// `u←C←v`: vertices from u to v against the orientation.
    pub fn segment_back(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.reversed().segment(u, v)
    }

    /// Oriented edges `(x, x⁺)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.verts.len();
        (0..len).map(move |i| (self.verts[i], self.verts[(i + 1) % len]))
    }

    /// True when `{a, b}` is an edge of the cycle (either orientation).
    pub fn has_cycle_edge(&self, a: usize, b: usize) -> bool {
        matches!(self.successor(a), Ok(s) if s == b) || matches!(self.successor(b), Ok(s) if s == a)
    }
}

fn check_sequence(g: &Graph, verts: &[usize]) -> std::result::Result<(), String> {
    let mut seen = VertexSet::with_capacity(g.n());
    for &v in verts {
        if v >= g.n() {
            return Err(format!("vertex {v} out of range"));
        }
        if !seen.insert(v) {
            return Err(format!("vertex {v} repeated"));
        }
    }
    for w in verts.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(format!("consecutive pair {}-{} is not an edge", w[0], w[1]));
        }
    }
    Ok(())
}

/// True iff `verts` is a cycle of `g` (distinct, length ≥ 3, consecutive
/// adjacency including the closing pair).
pub fn validate_cycle(g: &Graph, verts: &[usize]) -> bool {
    verts.len() >= 3 && check_sequence(g, verts).is_ok() && g.has_edge(verts[verts.len() - 1], verts[0])
}

pub fn is_hamiltonian_cycle(g: &Graph, verts: &[usize]) -> bool {
    verts.len() == g.n() && validate_cycle(g, verts)
}

pub fn is_hamiltonian_path(g: &Graph, verts: &[usize]) -> bool {
    verts.len() == g.n() && !verts.is_empty() && check_sequence(g, verts).is_ok()
}

/// Replaces the cycle edge `wz` by `w p z`, where `p` runs from a neighbour
/// of `w` to a neighbour of `z` and is disjoint from the cycle.
pub fn splice(g: &Graph, c: &Cycle, edge: (usize, usize), p: &PathSeq) -> Result<Cycle> {
    let (w, z) = edge;
    let wpos = c.position(w).map_err(|_| Error::Splice(format!("{w} is not on the cycle")))?;
    let zpos = c.position(z).map_err(|_| Error::Splice(format!("{z} is not on the cycle")))?;
    let len = c.len();
    let forward = (wpos + 1) % len == zpos;
    let backward = (zpos + 1) % len == wpos;
    if !forward && !backward {
        return Err(Error::Splice(format!("{w}-{z} is not a cycle edge")));
    }
    if let Some(v) = p.verts().iter().find(|&&v| c.contains(v)) {
        return Err(Error::Splice(format!("path vertex {v} already on the cycle")));
    }
    if !g.has_edge(w, p.first()) {
        return Err(Error::Splice(format!("{w} is not adjacent to path end {}", p.first())));
    }
    if !g.has_edge(z, p.last()) {
        return Err(Error::Splice(format!("{z} is not adjacent to path end {}", p.last())));
    }
    let mut verts = Vec::with_capacity(len + p.len());
    if forward {
        verts.extend_from_slice(&c.verts()[..=wpos]);
        verts.extend_from_slice(p.verts());
        verts.extend_from_slice(&c.verts()[wpos + 1..]);
    } else {
        verts.extend_from_slice(&c.verts()[..=zpos]);
        verts.extend(p.verts().iter().rev());
        verts.extend_from_slice(&c.verts()[zpos + 1..]);
    }
    Cycle::new(g, verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn components_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(components(&k3, &VertexSet::new()), vec![set(&[0, 1, 2])]);
        let p = Graph::path(3);
        assert_eq!(components(&p, &set(&[1])), vec![set(&[0]), set(&[2])]);
        assert!(components(&p, &set(&[0, 1, 2])).is_empty());
    }

    #[test]
    fn mask_component_count_matches_bfs() {
        let g = Graph::petersen();
        let adj: Vec<u64> = (0..10).map(|v| g.adj_mask(v)).collect();
        for mask in 0u64..1024 {
            let removed = VertexSet::from_mask(mask);
            assert_eq!(component_count_mask(&adj, !mask & 1023), components(&g, &removed).len());
        }
    }

    #[test]
    fn clique_checks() {
        let g = Graph::path(3);
        assert!(is_clique(&g, &set(&[1])));
        assert!(is_clique(&g, &set(&[])));
        assert!(!is_clique(&g, &set(&[0, 2])));
        assert!(is_clique(&Graph::complete(5), &VertexSet::full(5)));
    }

    #[test]
    fn successor_wraps_and_follows_orientation() {
        let k3 = Graph::complete(3);
        let c = Cycle::new(&k3, vec![0, 1, 2]).unwrap();
        assert_eq!(c.successor(2).unwrap(), 0);
        assert_eq!(c.reversed().successor(1).unwrap(), 0);
        let k4 = Graph::complete(4);
        let c4 = Cycle::new(&k4, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(c4.successor(1).unwrap(), 2);
        assert_eq!(c4.successor(7), Err(Error::NotOnCycle(7)));
        let mut x = 3;
        for _ in 0..c4.len() {
            x = c4.successor(x).unwrap();
        }
        assert_eq!(x, 3);
        assert_eq!(c4.segment(3, 1).unwrap(), vec![3, 0, 1]);
        assert_eq!(c4.segment_back(1, 3).unwrap(), vec![1, 0, 3]);
    }

    #[test]
    fn splice_examples() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 1)]).unwrap();
        let c = Cycle::new(&g, vec![0, 1, 2]).unwrap();
        let p = PathSeq::new(&g, vec![3]).unwrap();
        assert_eq!(splice(&g, &c, (0, 1), &p).unwrap().verts(), &[0, 3, 1, 2]);
        // Same edge named in the opposite direction.
        assert_eq!(splice(&g, &c, (1, 0), &p).unwrap().verts(), &[0, 3, 1, 2]);

        let h = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 2)]).unwrap();
        let c = Cycle::new(&h, vec![0, 1, 2, 3]).unwrap();
        let p = PathSeq::new(&h, vec![4, 5]).unwrap();
        assert_eq!(splice(&h, &c, (1, 2), &p).unwrap().verts(), &[0, 1, 4, 5, 2, 3]);
        assert!(matches!(splice(&h, &c, (0, 2), &p), Err(Error::Splice(_))));
        let bad = PathSeq::new(&h, vec![5, 4]).unwrap();
        assert!(matches!(splice(&h, &c, (1, 2), &bad), Err(Error::Splice(_))));
    }

    #[test]
    fn validate_cycle_examples() {
        assert!(validate_cycle(&Graph::complete(4), &[0, 1, 2, 3]));
        assert!(!validate_cycle(&Graph::path(3), &[0, 1, 2]));
        assert!(!validate_cycle(&Graph::complete(4), &[0, 1, 1]));
        assert!(!validate_cycle(&Graph::complete(4), &[0, 1]));
    }

    #[test]
    fn graph_construction_errors() {
        assert_eq!(Graph::from_edges(3, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(3, &[(0, 3)]), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn petersen_is_cubic() {
        let p = Graph::petersen();
        assert_eq!(p.m(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
    }

    #[test]
    fn vertex_set_equality_ignores_capacity() {
        let mut a = VertexSet::with_capacity(200);
        a.insert(3);
        assert_eq!(a, VertexSet::singleton(3));
        assert!(set(&[0, 5]) < set(&[1]));
        assert_eq!(VertexSet::full(70).len(), 70);
        assert_eq!(set(&[1, 65, 130]).to_vec(), vec![1, 65, 130]);
    }
}
