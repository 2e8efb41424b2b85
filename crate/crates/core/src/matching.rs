//! Star subgraphs of bipartite graphs via max-flow, and generalized
//! `K_{1,2s}`-matchings whose centers are the components of `G − S`.

use std::collections::VecDeque;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components, Graph, VertexSet};
use crate::toughness::Rational;

/// A bipartite graph with sides `X = 0..nx` and `Y = 0..ny`; `adj[x]` lists
/// the neighbours of `x` in `Y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartite {
    pub nx: usize,
    pub ny: usize,
    pub adj: Vec<Vec<usize>>,
}

impl Bipartite {
    pub fn new(nx: usize, ny: usize, adj: Vec<Vec<usize>>) -> Result<Self> {
        if adj.len() != nx {
            return Err(Error::InvalidArgument(format!("{} adjacency rows for {nx} X-vertices", adj.len())));
        }
        for row in &adj {
            let mut seen = VertexSet::new();
            for &y in row {
                if y >= ny {
                    return Err(Error::VertexOutOfRange { vertex: y, n: ny });
                }
                if !seen.insert(y) {
                    return Err(Error::InvalidArgument(format!("repeated Y-neighbour {y}")));
                }
            }
        }
        Ok(Self { nx, ny, adj })
    }

    pub fn neighborhood(&self, subset: &VertexSet) -> VertexSet {
        subset.iter().flat_map(|x| self.adj[x].iter().copied()).collect()
    }
}

/// Stars centred at every `x ∈ X` with exactly `f(x)` leaves each; leaf sets
/// are pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarSubgraph {
    /// `(center, leaves)` for every center in ascending order.
    pub centers: Vec<(usize, VertexSet)>,
}

impl StarSubgraph {
    pub fn leaves(&self, x: usize) -> Option<&VertexSet> {
        self.centers.iter().find(|(c, _)| *c == x).map(|(_, l)| l)
    }

    /// All leaves, i.e. `V(M) ∩ Y`.
    pub fn leaf_set(&self) -> VertexSet {
        let mut s = VertexSet::new();
        for (_, l) in &self.centers {
            s.union_with(l);
        }
        s
    }

    pub fn check(&self, bip: &Bipartite, f: &[usize]) -> std::result::Result<(), String> {
        let mut used = VertexSet::new();
        if self.centers.len() != bip.nx {
            return Err(format!("{} stars for {} centers", self.centers.len(), bip.nx));
        }
        for (x, leaves) in &self.centers {
            if leaves.len() != f[*x] {
                return Err(format!("center {x} has {} leaves, wants {}", leaves.len(), f[*x]));
            }
            if let Some(y) = leaves.iter().find(|y| !bip.adj[*x].contains(y)) {
                return Err(format!("leaf {y} is not adjacent to center {x}"));
            }
            if !used.is_disjoint(leaves) {
                return Err(format!("leaves of {x} overlap another star"));
            }
            used.union_with(leaves);
        }
        Ok(())
    }
}

/// A subset of `X` whose demand exceeds its neighbourhood.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallViolation {
    pub subset: VertexSet,
    pub neighborhood: VertexSet,
    pub demand: usize,
}

impl HallViolation {
    pub fn check(&self, bip: &Bipartite, f: &[usize]) -> bool {
        !self.subset.is_empty()
            && self.neighborhood == bip.neighborhood(&self.subset)
            && self.demand == self.subset.iter().map(|x| f[x]).sum::<usize>()
            && self.neighborhood.len() < self.demand
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarOutcome {
    Star(StarSubgraph),
    Violation(HallViolation),
}

/// Dinic max-flow on a small network.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<usize>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        Self { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new() }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: usize) -> usize {
        let id = self.to.len();
        self.head[u].push(id);
        self.to.push(v);
        self.cap.push(cap);
        self.head[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    fn levels(&self, s: usize) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.head.len()];
        level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, t: usize, pushed: usize, level: &[usize], iter: &mut [usize]) -> usize {
        if u == t {
            return pushed;
        }
        while iter[u] < self.head[u].len() {
            let e = self.head[u][iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let got = self.augment(v, t, pushed.min(self.cap[e]), level, iter);
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] == usize::MAX {
                return total;
            }
            let mut iter = vec![0; self.head.len()];
            loop {
                let got = self.augment(s, t, usize::MAX, &level, &mut iter);
                if got == 0 {
                    break;
                }
                total += got;
            }
        }
    }

    /// Vertices reachable from `s` in the residual network.
    fn reachable_from(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l != usize::MAX).collect()
    }

    /// Vertices that can reach `t` in the residual network.
    fn reaching(&self, t: usize) -> Vec<bool> {
        let n = self.head.len();
        let mut seen = vec![false; n];
        seen[t] = true;
        let mut q = VecDeque::from([t]);
        while let Some(v) = q.pop_front() {
            for &e in &self.head[v] {
                // e is v→u; the residual arc u→v is its partner e ^ 1.
                let u = self.to[e];
                if self.cap[e ^ 1] > 0 && !seen[u] {
                    seen[u] = true;
                    q.push_back(u);
                }
            }
        }
        seen
    }
}

/// Source → x (capacity f(x)), x → y (unbounded), y → sink (capacity 1).
struct DemandFlow {
    net: FlowNetwork,
    xy_edges: Vec<Vec<(usize, usize)>>,
    flow: usize,
}

impl DemandFlow {
    fn source(&self) -> usize {
        0
    }

    fn sink(&self) -> usize {
        1
    }

    fn run(bip: &Bipartite, f: &[usize]) -> Self {
        let total: usize = f.iter().sum();
        let mut net = FlowNetwork::new(2 + bip.nx + bip.ny);
        let xnode = |x: usize| 2 + x;
        let ynode = |y: usize| 2 + bip.nx + y;
        for (x, &fx) in f.iter().enumerate() {
            net.add_edge(0, xnode(x), fx);
        }
        let mut xy_edges = vec![Vec::new(); bip.nx];
        for (x, row) in bip.adj.iter().enumerate() {
            let mut ys = row.clone();
            ys.sort_unstable();
            for y in ys {
                let e = net.add_edge(xnode(x), ynode(y), total + 1);
                xy_edges[x].push((y, e));
            }
        }
        for y in 0..bip.ny {
            net.add_edge(ynode(y), 1, 1);
        }
        let flow = net.max_flow(0, 1);
        Self { net, xy_edges, flow }
    }

    fn leaves(&self, x: usize) -> VertexSet {
        // Flow on a forward arc equals the capacity gained by its reverse arc.
        self.xy_edges[x].iter().filter(|&&(_, e)| self.net.cap[e ^ 1] > 0).map(|&(y, _)| y).collect()
    }
}

fn check_demands(bip: &Bipartite, f: &[usize]) -> Result<()> {
    if f.len() != bip.nx {
        return Err(Error::InvalidArgument(format!("{} demands for {} X-vertices", f.len(), bip.nx)));
    }
    if let Some(x) = f.iter().position(|&d| d == 0) {
        return Err(Error::InvalidArgument(format!("demand f({x}) must be positive")));
    }
    Ok(())
}

/// A subgraph in which every `x ∈ X` has degree `f(x)` and every used
/// `y ∈ Y` has degree 1, or a subset of `X` violating Hall's condition.
pub fn find_star_subgraph(bip: &Bipartite, f: &[usize]) -> Result<StarOutcome> {
    check_demands(bip, f)?;
    let total: usize = f.iter().sum();
    let df = DemandFlow::run(bip, f);
    if df.flow == total {
        let centers = (0..bip.nx).map(|x| (x, df.leaves(x))).collect();
        return Ok(StarOutcome::Star(StarSubgraph { centers }));
    }
    let reach = df.net.reachable_from(df.source());
    let subset: VertexSet = (0..bip.nx).filter(|&x| reach[2 + x]).collect();
    let neighborhood = bip.neighborhood(&subset);
    let demand = subset.iter().map(|x| f[x]).sum();
    let v = HallViolation { subset, neighborhood, demand };
    debug_assert!(v.check(bip, f));
    Ok(StarOutcome::Violation(v))
}

/// The largest subset `A ⊆ X` maximizing `Σ_A f − |N(A)|`, together with
/// that maximum. Every set of maximum deficiency is contained in it.
pub fn max_deficiency_set(bip: &Bipartite, f: &[usize]) -> Result<(VertexSet, usize)> {
    check_demands(bip, f)?;
    let total: usize = f.iter().sum();
    let df = DemandFlow::run(bip, f);
    let reaching = df.net.reaching(df.sink());
    let set: VertexSet = (0..bip.nx).filter(|&x| !reaching[2 + x]).collect();
    Ok((set, total - df.flow))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Half {
    U,
    V,
}

/// What an auxiliary `T`-vertex stands for in `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxOrigin {
    /// Contraction of a nonempty part of `W_i = N_{D_i}(S)`.
    Contracted(VertexSet),
    /// One half of the split singleton component `{w}`, keeping the edges to
    /// `cut_neighbors`.
    Split { vertex: usize, cut_neighbors: VertexSet },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxVertex {
    pub component: usize,
    pub half: Half,
    pub origin: AuxOrigin,
}

/// The bipartite graph `H[S, T]` with two `T`-vertices `u_i, v_i` per
/// component `D_i` of `G − S`. `T`-vertex `2i` is `u_i`, `2i + 1` is `v_i`;
/// `Y`-index `j` is `cut[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxBipartite {
    pub cut: Vec<usize>,
    pub components: Vec<VertexSet>,
    pub t_side: Vec<AuxVertex>,
    pub bip: Bipartite,
}

impl AuxBipartite {
    /// Every aux edge `t-cut[j]` must be realized by a real edge of `G`
    /// from the vertices `t` stands for.
    pub fn check_back_map(&self, g: &Graph) -> bool {
        self.t_side.len() == 2 * self.components.len()
            && self.t_side.iter().enumerate().all(|(t, aux)| {
                self.bip.adj[t].iter().all(|&j| {
                    let s = self.cut[j];
                    match &aux.origin {
                        AuxOrigin::Contracted(w) => w.iter().any(|x| g.has_edge(x, s)),
                        AuxOrigin::Split { vertex, cut_neighbors } => {
                            g.has_edge(*vertex, s) && cut_neighbors.contains(s)
                        }
                    }
                })
            })
    }
}

/// How to divide each component's attachment into the `u`/`v` halves.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Splits {
    /// Nontrivial `D_i`: `{min W_i}` versus the rest. Singleton `{w}`:
    /// its cut edges alternate between `u` and `v` in ascending order.
    #[default]
    Canonical,
    /// Per component, the part assigned to `u`: a subset of `W_i` for
    /// nontrivial components, a subset of `N(w)` for singletons.
    Explicit(Vec<VertexSet>),
}

pub fn build_aux(g: &Graph, s_cut: &VertexSet, splits: &Splits) -> Result<AuxBipartite> {
    let comps = components(g, s_cut);
    if comps.len() < 2 {
        return Err(Error::NotACutset { components: comps.len() });
    }
    build_aux_on(g, s_cut, &comps, splits)
}

/// Auxiliary graph for an arbitrary family of disjoint centers, with
/// partners drawn from `pool`. `W_i` is the set of center vertices with a
/// neighbour in `pool`.
pub fn build_aux_on(g: &Graph, pool: &VertexSet, centers: &[VertexSet], splits: &Splits) -> Result<AuxBipartite> {
    let cut: Vec<usize> = pool.to_vec();
    let mut index = vec![usize::MAX; g.n()];
    for (j, &s) in cut.iter().enumerate() {
        index[s] = j;
    }
    if let Splits::Explicit(parts) = splits {
        if parts.len() != centers.len() {
            return Err(Error::InvalidArgument(format!("{} splits for {} components", parts.len(), centers.len())));
        }
    }
    let mut t_side = Vec::with_capacity(2 * centers.len());
    let mut adj = Vec::with_capacity(2 * centers.len());
    let cut_nbrs = |vs: &VertexSet| -> Vec<usize> {
        pool.iter().filter(|&s| !g.neighbors(s).is_disjoint(vs)).map(|s| index[s]).collect()
    };
    for (i, d) in centers.iter().enumerate() {
        if !d.is_disjoint(pool) || d.is_empty() {
            return Err(Error::InvalidArgument(format!("center {i} is empty or meets the partner pool")));
        }
        if d.len() >= 2 {
            let w: VertexSet = d.iter().filter(|&x| !g.neighbors(x).is_disjoint(pool)).collect();
            match w.len() {
                0 => return Err(Error::Disconnected),
                1 => return Err(Error::CutvertexFound(w.first().expect("one vertex"))),
                _ => {}
            }
            let w1 = match splits {
                Splits::Canonical => VertexSet::singleton(w.first().expect("nonempty")),
                Splits::Explicit(parts) => parts[i].clone(),
            };
            let w2 = w.difference(&w1);
            if w1.is_empty() || w2.is_empty() || !w1.is_subset(&w) {
                return Err(Error::InvalidArgument(format!("split of component {i} must be a proper nonempty part of W")));
            }
            for (half, part) in [(Half::U, w1), (Half::V, w2)] {
                adj.push(cut_nbrs(&part));
                t_side.push(AuxVertex { component: i, half, origin: AuxOrigin::Contracted(part) });
            }
        } else {
            let w = d.first().expect("components are nonempty");
            let nbrs = g.neighbors(w).intersection(pool);
            if nbrs.is_empty() {
                return Err(Error::Disconnected);
            }
            let to_u: VertexSet = match splits {
                Splits::Canonical => nbrs.iter().step_by(2).collect(),
                Splits::Explicit(parts) => {
                    if !parts[i].is_subset(&nbrs) {
                        return Err(Error::InvalidArgument(format!("split of singleton {w} uses non-neighbours")));
                    }
                    parts[i].clone()
                }
            };
            let to_v = nbrs.difference(&to_u);
            for (half, part) in [(Half::U, to_u), (Half::V, to_v)] {
                adj.push(part.iter().map(|s| index[s]).collect());
                t_side.push(AuxVertex { component: i, half, origin: AuxOrigin::Split { vertex: w, cut_neighbors: part } });
            }
        }
    }
    let bip = Bipartite::new(2 * centers.len(), cut.len(), adj)?;
    Ok(AuxBipartite { cut, components: centers.to_vec(), t_side, bip })
}

/// The `(S_i1, S_i2, W_i1, W_i2)` structure of a nontrivial component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartnerSplit {
    pub s1: VertexSet,
    pub s2: VertexSet,
    pub w1: VertexSet,
    pub w2: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPartners {
    pub component: VertexSet,
    /// `S_i`, the partners of the component from the cutset.
    pub partners: VertexSet,
    /// Present exactly when the component has at least two vertices.
    pub split: Option<PartnerSplit>,
}

impl ComponentPartners {
    /// For `s = 1`: partners `x, y` with attachments `a ∼ x`, `b ∼ y` in the
    /// component, `a ≠ b` unless the component is a single vertex.
    pub fn k12_ends(&self, g: &Graph) -> Option<(usize, usize, usize, usize)> {
        match &self.split {
            Some(sp) => {
                let x = sp.s1.first()?;
                let y = sp.s2.first()?;
                let a = g.neighbors(x).intersection(&sp.w1).first()?;
                let b = g.neighbors(y).intersection(&sp.w2).first()?;
                Some((x, a, y, b))
            }
            None => {
                let mut it = self.partners.iter();
                let (x, y) = (it.next()?, it.next()?);
                let w = self.component.first()?;
                Some((x, w, y, w))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedMatching {
    pub s: usize,
    /// One entry per component of `G − S`, in component order.
    pub parts: Vec<ComponentPartners>,
}

impl GeneralizedMatching {
    /// Checks conditions (i)–(iii) directly against `g` and `s_cut`.
    pub fn check(&self, g: &Graph, s_cut: &VertexSet) -> std::result::Result<(), String> {
        self.check_on(g, s_cut, &components(g, s_cut))
    }

    /// As [`check`](Self::check) for explicit centers and partner pool.
    pub fn check_on(&self, g: &Graph, s_cut: &VertexSet, comps: &[VertexSet]) -> std::result::Result<(), String> {
        if comps.len() != self.parts.len() {
            return Err(format!("{} parts for {} components", self.parts.len(), comps.len()));
        }
        let mut used = VertexSet::new();
        for (i, (p, d)) in self.parts.iter().zip(comps).enumerate() {
            if &p.component != d {
                return Err(format!("part {i} names the wrong component"));
            }
            let attach = g.neighborhood(d).intersection(s_cut);
            if !p.partners.is_subset(&attach) {
                return Err(format!("partners of component {i} are not neighbours of it in S"));
            }
            if p.partners.len() != 2 * self.s {
                return Err(format!("component {i} has {} partners, wants {}", p.partners.len(), 2 * self.s));
            }
            if !used.is_disjoint(&p.partners) {
                return Err(format!("partners of component {i} are shared"));
            }
            used.union_with(&p.partners);
            match (&p.split, d.len() >= 2) {
                (None, false) => {}
                (Some(sp), true) => {
                    if sp.s1.len() != self.s || sp.s2.len() != self.s || sp.s1.union(&sp.s2) != p.partners {
                        return Err(format!("component {i}: S_i1/S_i2 is not an equal split of S_i"));
                    }
                    let nd: VertexSet = d.iter().filter(|&x| !g.neighbors(x).is_disjoint(&p.partners)).collect();
                    if !sp.w1.is_disjoint(&sp.w2) || sp.w1.union(&sp.w2) != nd {
                        return Err(format!("component {i}: W_i1/W_i2 does not partition N_D(S_i)"));
                    }
                    for (ss, ww, tag) in [(&sp.s1, &sp.w1, 1), (&sp.s2, &sp.w2, 2)] {
                        if let Some(x) = ss.iter().find(|&x| g.neighbors(x).is_disjoint(ww)) {
                            return Err(format!("component {i}: {x} ∈ S_i{tag} has no neighbour in W_i{tag}"));
                        }
                    }
                }
                _ => return Err(format!("component {i}: split present iff nontrivial")),
            }
        }
        Ok(())
    }
}

/// Generalized `K_{1,2s}`-matching with `s = ⌊t/2⌋`, built from the
/// auxiliary graph with demand `s` on every `T`-vertex.
pub fn generalized_matching(g: &Graph, s_cut: &VertexSet, t: Rational) -> Result<GeneralizedMatching> {
    generalized_matching_with(g, s_cut, t, &Splits::Canonical)
}

pub fn generalized_matching_with(g: &Graph, s_cut: &VertexSet, t: Rational, splits: &Splits) -> Result<GeneralizedMatching> {
    // ⌊t/2⌋ = ⌊⌊t⌋/2⌋ for t ≥ 0.
    let s = (t.numer().div_floor(t.denom()) / 2).max(0) as usize;
    if s < 1 {
        return Err(Error::InvalidArgument(format!("t = {t} gives s = ⌊t/2⌋ < 1")));
    }
    if g.is_complete() {
        return Err(Error::Complete);
    }
    let comps = components(g, s_cut);
    if comps.len() < 2 {
        return Err(Error::NotACutset { components: comps.len() });
    }
    generalized_matching_on(g, s_cut, &comps, s, splits)
}

/// Generalized `K_{1,2s}`-matching for the given centers with partners
/// from `pool`.
pub fn generalized_matching_on(
    g: &Graph,
    pool: &VertexSet,
    centers: &[VertexSet],
    s: usize,
    splits: &Splits,
) -> Result<GeneralizedMatching> {
    if s < 1 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let aux = build_aux_on(g, pool, centers, splits)?;
    let f = vec![s; aux.t_side.len()];
    let star = match find_star_subgraph(&aux.bip, &f)? {
        StarOutcome::Star(st) => st,
        StarOutcome::Violation(v) => return Err(Error::HallLemmaViolation(Box::new(v))),
    };
    let to_cut = |ys: &VertexSet| -> VertexSet { ys.iter().map(|j| aux.cut[j]).collect() };
    let mut parts = Vec::with_capacity(aux.components.len());
    for (i, d) in aux.components.iter().enumerate() {
        let s1 = to_cut(&star.centers[2 * i].1);
        let s2 = to_cut(&star.centers[2 * i + 1].1);
        let partners = s1.union(&s2);
        let split = if d.len() >= 2 {
            let nd: VertexSet = d.iter().filter(|&x| !g.neighbors(x).is_disjoint(&partners)).collect();
            let (AuxOrigin::Contracted(w1), AuxOrigin::Contracted(w2)) =
                (&aux.t_side[2 * i].origin, &aux.t_side[2 * i + 1].origin)
            else {
                unreachable!("nontrivial components are contracted");
            };
            Some(PartnerSplit { s1, s2, w1: nd.intersection(w1), w2: nd.intersection(w2) })
        } else {
            None
        };
        parts.push(ComponentPartners { component: d.clone(), partners, split });
    }
    let gm = GeneralizedMatching { s, parts };
    if let Err(e) = gm.check_on(g, pool, centers) {
        return Err(Error::LemmaViolationCandidate(format!("back-mapped matching is invalid: {e}")));
    }
    Ok(gm)
}

/// Maximum matching of a bipartite graph by augmenting paths; `result[x]`
/// is the partner of `x`, if any.
pub fn max_matching(bip: &Bipartite) -> Vec<Option<usize>> {
    fn augment(x: usize, bip: &Bipartite, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &y in &bip.adj[x] {
            if !seen[y] {
                seen[y] = true;
                if owner[y].is_none_or(|x2| augment(x2, bip, seen, owner)) {
                    owner[y] = Some(x);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; bip.ny];
    for x in 0..bip.nx {
        let mut seen = vec![false; bip.ny];
        augment(x, bip, &mut seen, &mut owner);
    }
    let mut mate = vec![None; bip.nx];
    for (y, o) in owner.iter().enumerate() {
        if let Some(x) = o {
            mate[*x] = Some(y);
        }
    }
    mate
}
