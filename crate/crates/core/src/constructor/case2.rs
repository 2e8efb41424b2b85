use serde::{Deserialize, Serialize};
use serde_json::json;

use super::partition::{non_edge_in, sorted_components, UVPartition};
use super::{clique_path, ham_path_in, traced, Branch, ClaimOutcome, ConstructOptions, FailureReport, ProofTrace, Step, Tracer};
use crate::error::{Error, Result};
use crate::graph::{components, is_clique, Cycle, Graph, PathSeq, VertexSet};
use crate::hamiltonicity::{ham_connected_with_cap, ham_path_ends};
use crate::matching::{
    find_star_subgraph, generalized_matching_on, max_deficiency_set, max_matching, Bipartite, Splits, StarOutcome,
    StarSubgraph,
};
use crate::structure::is_free;
use crate::toughness::{int, min_tough_set_with_cap, rational, toughness_exact_with_cap, Rational, Toughness};

/// Exhaustive subset checks on `S_2` run up to this size.
const SLACK_CHECK_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case2State {
    /// `D_1, …, D_t`, largest first.
    pub components: Vec<VertexSet>,
    pub d1: VertexSet,
    pub s1: VertexSet,
    /// `2|S_1| − |N_{D_1}(S_1)|`.
    pub s1_deficiency: usize,
    pub n_d1_s1: VertexSet,
    pub s2: VertexSet,
    pub s_star: VertexSet,
    /// `K_{1,2}`-matching from `S_2` into `V(D_1) ∖ N_{D_1}(S_1)`, in `G`'s labels.
    pub m: StarSubgraph,
    pub q: VertexSet,
    pub d1_star: VertexSet,
}

impl Case2State {
    pub fn partners(&self, x: usize) -> Option<&VertexSet> {
        self.m.leaves(x)
    }

    /// Re-derives the defining relations between the sets.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        let nd = |t: &VertexSet| g.neighborhood(t).intersection(&self.d1);
        if nd(&self.s1) != self.n_d1_s1 {
            return Err("N_{D_1}(S_1) is stale".into());
        }
        if !self.s1.is_empty() && self.n_d1_s1.len() >= 2 * self.s1.len() {
            return Err("S_1 is not deficient".into());
        }
        if self.s_star != self.n_d1_s1.union(&self.s2) || !self.s1.is_disjoint(&self.s2) {
            return Err("S* is not N_{D_1}(S_1) ∪ S_2".into());
        }
        let avail = self.d1.difference(&self.n_d1_s1);
        let mut leaves = VertexSet::new();
        for (x, l) in &self.m.centers {
            if !self.s2.contains(*x) || l.len() != 2 || !l.is_subset(&avail) || !l.is_subset(g.neighbors(*x)) {
                return Err(format!("star at {x} is malformed"));
            }
            if !leaves.is_disjoint(l) {
                return Err("stars of M overlap".into());
            }
            leaves.union_with(l);
        }
        if self.m.centers.len() != self.s2.len() || leaves != self.q {
            return Err("M does not cover S_2 or Q ≠ V(M) ∖ S_2".into());
        }
        if self.d1_star != avail.difference(&self.q) {
            return Err("D_1* is not D_1 − N_{D_1}(S_1) − Q".into());
        }
        Ok(())
    }
}

fn sub_bipartite(g: &Graph, xs: &[usize], ys: &[usize]) -> Bipartite {
    let adj = xs.iter().map(|&x| (0..ys.len()).filter(|&j| g.has_edge(x, ys[j])).collect()).collect();
    Bipartite::new(xs.len(), ys.len(), adj).expect("well-formed by construction")
}

/// The Case 2 state for `p`, with `D_1` the largest component of `G − S`.
pub fn build_case2_state(g: &Graph, p: &UVPartition) -> std::result::Result<Case2State, FailureReport> {
    let mut tr = Tracer::new(&ConstructOptions::default());
    case2_state(g, p, &mut tr)
}

pub(crate) fn case2_state(g: &Graph, p: &UVPartition, tr: &mut Tracer) -> Step<Case2State> {
    let n = g.n();
    let comps = sorted_components(g, &p.s);
    let d1 = comps.first().cloned().ok_or_else(|| tr.fail("case2", "G − S has no component"))?;
    let s_list = p.s.to_vec();
    let d1_list = d1.to_vec();
    let bip = sub_bipartite(g, &s_list, &d1_list);
    let (def_set, deficiency) =
        max_deficiency_set(&bip, &vec![2; s_list.len()]).map_err(|e| tr.err("S_1: largest deficient set", e))?;
    // Only positive deficiency makes a set qualify.
    let s1: VertexSet = if deficiency > 0 { def_set.iter().map(|i| s_list[i]).collect() } else { VertexSet::new() };
    let n_d1_s1 = g.neighborhood(&s1).intersection(&d1);
    tr.claim(
        "S_1: |N_{D_1}(S_1)| < 2|S_1|",
        s1.is_empty() || n_d1_s1.len() < 2 * s1.len(),
        json!({ "S_1": &s1, "N": &n_d1_s1 }),
    )?;
    let s2 = p.s.difference(&s1);
    let s_star = n_d1_s1.union(&s2);
    let avail = d1.difference(&n_d1_s1);

    if s2.len() <= SLACK_CHECK_MAX {
        let s2v = s2.to_vec();
        let mut bad = None;
        let mut extendable = None;
        for mask in 1u32..1 << s2v.len() {
            let t: VertexSet = (0..s2v.len()).filter(|i| mask >> i & 1 == 1).map(|i| s2v[i]).collect();
            let nt = g.neighborhood(&t).intersection(&avail);
            if nt.len() < 2 * t.len() && bad.is_none() {
                bad = Some(t.clone());
            }
            let union = s1.union(&t);
            if extendable.is_none() && g.neighborhood(&union).intersection(&d1).len() < 2 * union.len() {
                extendable = Some(t);
            }
        }
        tr.claim("S_1: Hall slack on S_2", bad.is_none(), &bad)?;
        // The maximum-deficiency reading of "largest" need not be
        // inclusion-maximal among deficient sets; record which it is.
        tr.set("S_1_inclusion_maximal", extendable.is_none());
    }

    let s2_list = s2.to_vec();
    let avail_list = avail.to_vec();
    let m = if s2_list.is_empty() {
        StarSubgraph { centers: Vec::new() }
    } else {
        let bip = sub_bipartite(g, &s2_list, &avail_list);
        match find_star_subgraph(&bip, &vec![2; s2_list.len()]).map_err(|e| tr.err("lemma2.1: M", e))? {
            StarOutcome::Star(st) => StarSubgraph {
                centers: st
                    .centers
                    .into_iter()
                    .map(|(x, l)| (s2_list[x], l.iter().map(|j| avail_list[j]).collect()))
                    .collect(),
            },
            StarOutcome::Violation(v) => {
                let subset: Vec<usize> = v.subset.iter().map(|i| s2_list[i]).collect();
                return Err(tr
                    .fail("lemma2.1: M", "Hall condition fails, contradicting the maximality of S_1")
                    .with("subset", subset));
            }
        }
    };
    let q = m.leaf_set();
    let d1_star = avail.difference(&q);
    let st = Case2State { components: comps, d1, s1, s1_deficiency: deficiency, n_d1_s1, s2, s_star, m, q, d1_star };
    st.check(g).map_err(|e| tr.fail("case2 state", e))?;

    tr.set("D_1", &st.d1);
    tr.set("S_1", &st.s1);
    tr.set("S_1_deficiency", st.s1_deficiency);
    tr.set("N_D1(S_1)", &st.n_d1_s1);
    tr.set("S_2", &st.s2);
    tr.set("S_star", &st.s_star);
    tr.set("M", &st.m);
    tr.set("Q", &st.q);
    tr.set("D1_star", &st.d1_star);
    let lower = d1_star_lower_bound(n);
    tr.bound("|V(D_1*)| > n/8 - 14", int(st.d1_star.len()), lower, int(st.d1_star.len()) > lower);
    tr.bound("n/8 - 14 >= 1", lower, int(1), lower >= int(1));
    let d1_lower = rational(5 * n as i64, 8) - int(4);
    tr.bound("|V(D_1)| >= 5n/8 - 4", int(st.d1.len()), d1_lower, int(st.d1.len()) >= d1_lower);
    Ok(st)
}

/// `n/8 − 14`, the lower bound on `|V(D_1^*)|`.
pub fn d1_star_lower_bound(n: usize) -> Rational {
    rational(n as i64, 8) - int(14)
}

fn invalid(i: usize, msg: impl std::fmt::Display) -> Error {
    Error::InvalidPath(format!("Q_{}: {msg}", i + 1))
}

/// Turns paths `Q_1, …, Q_k` satisfying the stitching hypotheses into a
/// Hamiltonian cycle of `g`: ends in `S_2` are extended by an `M`-partner,
/// the extended paths and the leftover `S_2` stars are laid out as blocks
/// along the clique `D_1`.
pub fn stitch_claim5(g: &Graph, st: &Case2State, paths: &[Vec<usize>]) -> Result<Cycle> {
    if paths.is_empty() {
        return Err(Error::InvalidArgument("at least one path is required".into()));
    }
    let mut seen = VertexSet::new();
    let mut interiors = VertexSet::new();
    for (i, q) in paths.iter().enumerate() {
        let path = PathSeq::new(g, q.clone()).map_err(|e| invalid(i, e))?;
        if path.len() < 2 {
            return Err(invalid(i, "needs two distinct ends"));
        }
        if !st.s_star.contains(path.first()) || !st.s_star.contains(path.last()) {
            return Err(invalid(i, "an end is not in S*"));
        }
        let inner: VertexSet = q[1..q.len() - 1].iter().copied().collect();
        if !inner.is_disjoint(&st.s_star) {
            return Err(invalid(i, "an interior vertex lies in S*"));
        }
        if !inner.is_disjoint(&st.d1) {
            return Err(invalid(i, "an interior vertex lies in D_1"));
        }
        let vs = path.vertex_set();
        if !seen.is_disjoint(&vs) {
            return Err(invalid(i, "meets an earlier path"));
        }
        seen.union_with(&vs);
        interiors.union_with(&inner);
    }
    let rest = g.vertices().difference(&st.s_star).difference(&st.d1);
    if interiors != rest {
        let missing: Vec<usize> = rest.difference(&interiors).to_vec();
        return Err(Error::InvalidArgument(format!("path interiors must be exactly V(G) − S* − V(D_1); missing {missing:?}")));
    }
    let leaf = |x: usize, k: usize| -> Result<usize> {
        st.partners(x)
            .and_then(|l| l.iter().nth(k))
            .ok_or_else(|| Error::InvalidArgument(format!("{x} ∈ S_2 has no partner")))
    };
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for q in paths {
        let mut p = Vec::with_capacity(q.len() + 2);
        if st.s2.contains(q[0]) {
            p.push(leaf(q[0], 0)?);
        }
        p.extend(q);
        if st.s2.contains(q[q.len() - 1]) {
            p.push(leaf(q[q.len() - 1], 0)?);
        }
        blocks.push(p);
    }
    let mut covered: VertexSet = blocks.iter().flatten().copied().collect();
    for x in st.s2.iter().filter(|&x| !covered.contains(x)) {
        blocks.push(vec![leaf(x, 0)?, x, leaf(x, 1)?]);
    }
    covered = blocks.iter().flatten().copied().collect();
    blocks.extend(st.d1.difference(&covered).iter().map(|v| vec![v]));
    let verts: Vec<usize> = blocks.concat();
    let c = Cycle::new(g, verts)?;
    if c.len() != g.n() {
        return Err(Error::InvalidCycle(format!("stitched cycle has {} of {} vertices", c.len(), g.n())));
    }
    Ok(c)
}

/// Case 2 on its own, from a partition and its prepared state.
pub fn run_case2(g: &Graph, p: &UVPartition, st: &Case2State, opts: &ConstructOptions) -> ProofTrace {
    traced(g, opts, |tr| {
        p.record(tr);
        case2(g, st, tr)
    })
}

fn stitch(g: &Graph, st: &Case2State, paths: &[Vec<usize>], tr: &mut Tracer) -> Step<Cycle> {
    tr.set("Q_paths", paths);
    stitch_claim5(g, st, paths).map_err(|e| tr.err("claim5", e))
}

fn with_ends(x: usize, middle: &[usize], y: usize) -> Vec<usize> {
    let mut q = vec![x];
    q.extend(middle);
    q.push(y);
    q
}

pub(crate) fn case2(g: &Graph, st: &Case2State, tr: &mut Tracer) -> Step<Cycle> {
    let comps_star = components(g, &st.s_star);
    tr.set("c(G-S*)", comps_star.len());
    let r: Vec<VertexSet> = comps_star.into_iter().filter(|c| !c.is_subset(&st.d1)).collect();
    match r.len() {
        0 => Err(tr.fail("case2", "G − S* has no component outside D_1")),
        1 => subcase2_2(g, st, &r[0], tr),
        _ => subcase2_1(g, st, &r, tr),
    }
}

fn subcase2_1(g: &Graph, st: &Case2State, r: &[VertexSet], tr: &mut Tracer) -> Step<Cycle> {
    tr.branch = Some(Branch::Case2_1);
    tr.set("R", r);
    let bad = r.iter().find(|c| !is_clique(g, c));
    tr.claim("subcase2.1: components of G-S* complete", bad.is_none(), bad.map(|c| non_edge_in(g, c)))?;
    let gm = generalized_matching_on(g, &st.s_star, r, 1, &Splits::Canonical).map_err(|e| tr.err("lemma2.5(t=2)", e))?;
    let mut paths = Vec::with_capacity(r.len());
    for part in &gm.parts {
        let (x, a, y, b) = part.k12_ends(g).ok_or_else(|| tr.fail("lemma2.5(t=2)", "a component lacks two partners"))?;
        paths.push(with_ends(x, &clique_path(&part.component, a, b), y));
    }
    stitch(g, st, &paths, tr)
}

/// First `(a_0, x_0, b_0, y_0)` with `a_0 ≠ b_0` in `D_2^*`, `x_0 ≠ y_0` in
/// `S*`, `a_0x_0, b_0y_0 ∈ E(G)`.
fn attachments(g: &Graph, d2: &VertexSet, s_star: &VertexSet) -> Option<(usize, usize, usize, usize)> {
    for a in d2.iter() {
        for x in g.neighbors(a).intersection(s_star).iter() {
            for b in d2.iter().filter(|&b| b != a) {
                if let Some(y) = g.neighbors(b).intersection(s_star).iter().find(|&y| y != x) {
                    return Some((a, x, b, y));
                }
            }
        }
    }
    None
}

fn subcase2_2(g: &Graph, st: &Case2State, d2: &VertexSet, tr: &mut Tracer) -> Step<Cycle> {
    tr.branch = Some(Branch::Case2_2);
    tr.set("D2_star", d2);
    tr.claim("subcase2.2: |V(D_2*)| >= 2", d2.len() >= 2, d2.len())?;
    let (h, map) = g.induced(d2);
    // With D_1* nonempty, any vertex of it is an isolate for patterns in D_2*.
    tr.claims.push(ClaimOutcome {
        id: "D_2* is (P3 ∪ P1)-free".into(),
        passed: is_free(&h, 1),
        witness: json!({ "D1_star_nonempty": !st.d1_star.is_empty() }),
    });
    let (a0, x0, b0, y0) =
        attachments(g, d2, &st.s_star).ok_or_else(|| tr.fail("2-connectivity: a_0, b_0, x_0, y_0", "no two disjoint attachments of D_2* to S*"))?;
    tr.set("a_0", a0);
    tr.set("b_0", b0);
    tr.set("x_0", x0);
    tr.set("y_0", y0);
    let hc = ham_connected_with_cap(&h, tr.dp_cap).map_err(|e| tr.err("D_2* hamiltonian connected", e))?;
    tr.set("D2_star_hamiltonian_connected", hc);
    if hc {
        let p = ham_path_in(g, d2, a0, b0, tr.dp_cap)
            .map_err(|e| tr.err("D_2* hamiltonian connected", e))?
            .ok_or_else(|| tr.fail("D_2* hamiltonian connected", "oracle disagrees on the a_0–b_0 path"))?;
        return stitch(g, st, &[with_ends(x0, &p, y0)], tr);
    }
    let tau = toughness_exact_with_cap(&h, tr.toughness_cap).map_err(|e| tr.err("lemma2.4", e))?.toughness;
    tr.set("tau(D2_star)", tau);
    tr.claim("lemma2.4: tau(D_2*) <= 1", !tau.is_at_least(int(1)) || tau == Toughness::Finite(int(1)), tau.to_string())?;
    let w: VertexSet = min_tough_set_with_cap(&h, tr.toughness_cap)
        .map_err(|e| tr.err("min tough set of D_2*", e))?
        .iter()
        .map(|i| map[i])
        .collect();
    tr.set("W", &w);
    let removed = g.vertices().difference(d2).union(&w);
    let fs = components(g, &removed);
    tr.set("F", &fs);
    let bad = fs.iter().find(|c| !is_clique(g, c));
    tr.claim("components of D_2*-W complete", bad.is_none(), bad)?;
    let lonely = w.iter().find(|&x| fs.iter().filter(|c| !g.neighbors(x).is_disjoint(c)).count() < 2);
    tr.claim("each w in W meets two components of D_2*-W", lonely.is_none(), lonely)?;
    let ends = (a0, x0, b0, y0);
    match fs.len() {
        2 => subcase2_2_1(g, st, d2, &w, &fs, tr),
        k if k >= 3 => subcase2_2_2(g, st, &w, &fs, ends, tr),
        _ => Err(tr.fail("min tough set of D_2*", "W does not disconnect D_2*")),
    }
}

fn subcase2_2_1(g: &Graph, st: &Case2State, d2: &VertexSet, w: &VertexSet, fs: &[VertexSet], tr: &mut Tracer) -> Step<Cycle> {
    tr.branch = Some(Branch::Case2_2_1);
    tr.claim("subcase2.2.1: |W| <= 2", w.len() <= 2, w.len())?;
    let gm = generalized_matching_on(g, &st.s_star, fs, 1, &Splits::Canonical)
        .map_err(|e| tr.err("lemma2.5(t=2) in G-W", e))?;
    let mut quads = Vec::with_capacity(2);
    for part in &gm.parts {
        quads.push(part.k12_ends(g).ok_or_else(|| tr.fail("lemma2.5(t=2) in G-W", "a component lacks two partners"))?);
    }
    tr.set("F_partners", &quads);
    let (h, map) = g.induced(d2);
    let local = |v: usize| map.iter().position(|&x| x == v).expect("inside D_2*");

    if w.len() == 1 || is_clique(g, w) {
        let reach = ham_path_ends(&h, tr.dp_cap).map_err(|e| tr.err("hamiltonian ab-path of D_2*", e))?;
        let mut attach: Vec<(usize, usize)> = Vec::new();
        for &(x1, a1, y1, b1) in &quads {
            attach.push((x1, a1));
            attach.push((y1, b1));
        }
        for a in d2.iter() {
            for x in g.neighbors(a).intersection(&st.s_star).iter() {
                if !attach.contains(&(x, a)) {
                    attach.push((x, a));
                }
            }
        }
        for &(x, a) in &attach {
            for &(y, b) in &attach {
                if x != y && a != b && reach[local(a)].contains(local(b)) {
                    let p = ham_path_in(g, d2, a, b, tr.dp_cap)
                        .map_err(|e| tr.err("hamiltonian ab-path of D_2*", e))?
                        .ok_or_else(|| tr.fail("hamiltonian ab-path of D_2*", "oracle tables disagree"))?;
                    tr.set("ab_path_ends", (x, a, b, y));
                    return stitch(g, st, &[with_ends(x, &p, y)], tr);
                }
            }
        }
        return Err(tr.fail("hamiltonian ab-path of D_2*", "no Hamiltonian path of D_2* joins two distinct attachments"));
    }

    let wv = w.to_vec();
    let (w1, w2) = (wv[0], wv[1]);
    let direct: Vec<Vec<usize>> =
        quads.iter().zip(fs).map(|(&(x, a, y, b), f)| with_ends(x, &clique_path(f, a, b), y)).collect();
    if d2.len() <= 7 {
        let used: VertexSet = quads.iter().flat_map(|&(x, _, y, _)| [x, y]).collect();
        let pool: Vec<usize> = st.s_star.difference(&used).to_vec();
        let bip = sub_bipartite(g, &wv, &pool);
        let star = match find_star_subgraph(&bip, &[2, 2]).map_err(|e| tr.err("x_3, y_3, x_4, y_4", e))? {
            StarOutcome::Star(s) => s,
            StarOutcome::Violation(_) => {
                return Err(tr.fail("x_3, y_3, x_4, y_4", "w_1 and w_2 lack two private neighbours each in S*"));
            }
        };
        let pick = |i: usize| -> Vec<usize> { star.centers[i].1.iter().map(|j| pool[j]).collect() };
        let (p1, p2) = (pick(0), pick(1));
        let mut paths = direct;
        paths.push(vec![p1[0], w1, p1[1]]);
        paths.push(vec![p2[0], w2, p2[1]]);
        return stitch(g, st, &paths, tr);
    }

    let d2v = d2.to_vec();
    let sv = st.s_star.to_vec();
    let mate = max_matching(&sub_bipartite(g, &d2v, &sv));
    let pairs: Vec<(usize, usize)> =
        mate.iter().enumerate().filter_map(|(i, m)| m.map(|j| (d2v[i], sv[j]))).collect();
    tr.set("attachment_pairs", &pairs);
    tr.bound("disjoint attachments of D_2* >= 7", int(pairs.len()), int(7), pairs.len() >= 7);
    let reach = ham_path_ends(&h, tr.dp_cap).map_err(|e| tr.err("hamiltonian cycle of D_2*", e))?;
    for (i, &(ai, xi)) in pairs.iter().enumerate() {
        for &(aj, xj) in &pairs[i + 1..] {
            if g.has_edge(ai, aj) && reach[local(ai)].contains(local(aj)) {
                let p = ham_path_in(g, d2, ai, aj, tr.dp_cap)
                    .map_err(|e| tr.err("hamiltonian cycle of D_2*", e))?
                    .ok_or_else(|| tr.fail("hamiltonian cycle of D_2*", "oracle tables disagree"))?;
                tr.set("cycle_edge", (ai, aj));
                return stitch(g, st, &[with_ends(xi, &p, xj)], tr);
            }
        }
    }
    Err(tr.fail("hamiltonian cycle of D_2*", "no Hamiltonian cycle of D_2* uses an edge between two matched attachments"))
}

/// A path from `a0` to `b0` alternating between the vertices of `w` and
/// `k` clique pieces cut from `comps`; needs `W` complete to the pieces.
fn through_w(w: &VertexSet, comps: &[VertexSet], a0: usize, b0: usize, k: usize) -> Option<Vec<usize>> {
    let mut ws: Vec<usize> = w.iter().filter(|&x| x != a0 && x != b0).collect();
    if w.contains(a0) {
        ws.insert(0, a0);
    }
    if w.contains(b0) {
        ws.push(b0);
    }
    let mut first: Option<Vec<usize>> = None;
    let mut last: Option<Vec<usize>> = None;
    let mut middle: Vec<Vec<usize>> = Vec::new();
    for c in comps {
        let has_a = !w.contains(a0) && c.contains(a0);
        let has_b = !w.contains(b0) && c.contains(b0);
        let others: Vec<usize> = c.iter().filter(|&x| x != a0 && x != b0).collect();
        match (has_a, has_b) {
            (true, true) => {
                first = Some([vec![a0], others].concat());
                last = Some(vec![b0]);
            }
            (true, false) => first = Some([vec![a0], others].concat()),
            (false, true) => last = Some([others, vec![b0]].concat()),
            (false, false) => middle.push(c.to_vec()),
        }
    }
    let mut count = middle.len() + first.is_some() as usize + last.is_some() as usize;
    while count < k {
        if let Some(piece) = middle.iter_mut().find(|p| p.len() >= 2) {
            let v = piece.pop().expect("long piece");
            middle.push(vec![v]);
        } else if let Some(f) = first.as_mut().filter(|f| f.len() >= 2) {
            middle.push(vec![f.pop().expect("long piece")]);
        } else if let Some(l) = last.as_mut().filter(|l| l.len() >= 2) {
            middle.push(vec![l.remove(0)]);
        } else {
            return None;
        }
        count += 1;
    }
    if count != k {
        return None;
    }
    let mut seq = first.unwrap_or_default();
    let mut mid = middle.into_iter();
    for (i, &x) in ws.iter().enumerate() {
        seq.push(x);
        if i + 1 < ws.len() {
            seq.extend(mid.next()?);
        }
    }
    if mid.next().is_some() {
        return None;
    }
    seq.extend(last.unwrap_or_default());
    Some(seq)
}

fn subcase2_2_2(
    g: &Graph,
    st: &Case2State,
    w: &VertexSet,
    fs: &[VertexSet],
    (a0, x0, b0, y0): (usize, usize, usize, usize),
    tr: &mut Tracer,
) -> Step<Cycle> {
    tr.branch = Some(Branch::Case2_2_2);
    let rest: VertexSet = fs.iter().flatten().collect();
    let gap = w.iter().find_map(|x| rest.difference(g.neighbors(x)).first().map(|y| (x, y)));
    tr.claim("W complete to D_2*-W", gap.is_none(), gap)?;

    let mut pool = st.s_star.union(w);
    pool.remove(x0);
    pool.remove(y0);
    let gm4 =
        generalized_matching_on(g, &pool, fs, 2, &Splits::Canonical).map_err(|e| tr.err("lemma2.5(t=4) in G-{x_0,y_0}", e))?;
    // Components keeping a partner pair outside W.
    let mut served: Vec<Option<(usize, usize, usize, usize)>> = Vec::with_capacity(fs.len());
    for part in &gm4.parts {
        let quad = match &part.split {
            Some(sp) => {
                let (s1, s2) = (sp.s1.difference(w), sp.s2.difference(w));
                match (s1.first(), s2.first()) {
                    (Some(x), Some(y)) => {
                        let a = g.neighbors(x).intersection(&sp.w1).first();
                        let b = g.neighbors(y).intersection(&sp.w2).first();
                        a.zip(b).map(|(a, b)| (x, a, y, b))
                    }
                    _ => None,
                }
            }
            None => {
                let ps = part.partners.difference(w).to_vec();
                let v = part.component.first().expect("nonempty component");
                (ps.len() >= 2).then(|| (ps[0], v, ps[1], v))
            }
        };
        served.push(quad);
    }
    let c = fs.len();
    let n_served = served.iter().filter(|q| q.is_some()).count();
    tr.set("F_star", served.iter().enumerate().filter(|(_, q)| q.is_some()).map(|(i, _)| i).collect::<Vec<_>>());
    tr.bound(
        "|F*| >= c(D_2*-W) - floor(|W|/2)",
        int(n_served),
        int(c) - int(w.len() / 2),
        n_served + w.len() / 2 >= c,
    );

    let comp_of = |v: usize| fs.iter().position(|f| f.contains(v));
    let a_out = comp_of(a0);
    let b_out = comp_of(b0);
    let k = w.len() - 1 + a_out.is_some() as usize + b_out.is_some() as usize;
    let same = a_out.is_some() && a_out == b_out;
    let target = k - same as usize;
    let mut f2: Vec<usize> = (0..c).filter(|&i| served[i].is_none() || Some(i) == a_out || Some(i) == b_out).collect();
    tr.set("F2_mandatory", &f2);
    tr.set("F2_target", target);
    if f2.len() > target {
        return Err(tr
            .fail("subcase2.2.2: F_1 selection", "more components must join the W-path than it has room for")
            .with("mandatory", &f2)
            .with("room", target));
    }
    for i in 0..c {
        if f2.len() >= target {
            break;
        }
        if !f2.contains(&i) {
            f2.push(i);
        }
    }
    f2.sort_unstable();
    let f1: Vec<usize> = (0..c).filter(|i| !f2.contains(i)).collect();
    tr.set("F_1", &f1);
    tr.set("F_2", &f2);
    let pieces: Vec<VertexSet> = f2.iter().map(|&i| fs[i].clone()).collect();
    let p = through_w(w, &pieces, a0, b0, k)
        .ok_or_else(|| tr.fail("subcase2.2.2: path through W and F_2", "too few vertices to alternate with W"))?;
    tr.set("P", &p);
    let mut paths = vec![with_ends(x0, &p, y0)];
    for &i in &f1 {
        let (x, a, y, b) = served[i].expect("F_1 ⊆ F*");
        paths.push(with_ends(x, &clique_path(&fs[i], a, b), y));
    }
    stitch(g, st, &paths, tr)
}
