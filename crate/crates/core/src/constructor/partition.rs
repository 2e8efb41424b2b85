use serde::{Deserialize, Serialize};

use serde_json::json;

use super::{ClaimOutcome, Step, Tracer, THEOREM_T};
use crate::error::{Error, Result};
use crate::graph::{components, is_clique, Graph, VertexSet};
use crate::hamiltonicity::degree_sum_guard;
use crate::toughness::{int, rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UVPartition {
    pub u: usize,
    pub v: usize,
    pub s_uv: VertexSet,
    pub s_u: VertexSet,
    pub s_v: VertexSet,
    pub s: VertexSet,
}

impl UVPartition {
    pub(crate) fn record(&self, tr: &mut Tracer) {
        tr.set("u", self.u);
        tr.set("v", self.v);
        tr.set("S_uv", &self.s_uv);
        tr.set("S_u", &self.s_u);
        tr.set("S_v", &self.s_v);
        tr.set("S", &self.s);
    }

    /// Recomputes every defining property from scratch.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        let (u, v) = (self.u, self.v);
        if u == v || g.has_edge(u, v) {
            return Err(format!("{u} and {v} are not a nonadjacent pair"));
        }
        let s_uv: VertexSet = (0..g.n()).filter(|&x| g.has_edge(x, u) || g.has_edge(x, v)).collect();
        if s_uv != self.s_uv {
            return Err("S_uv is not N(u) ∪ N(v)".into());
        }
        let outside = |excl: &VertexSet| -> VertexSet { (0..g.n()).filter(|x| !excl.contains(*x)).collect() };
        let out_uv = outside(&s_uv);
        for x in s_uv.iter() {
            let in_su = g.neighbors(x).intersection(&out_uv) == VertexSet::singleton(u);
            if in_su != self.s_u.contains(x) {
                return Err(format!("membership of {x} in S_u is wrong"));
            }
        }
        let out_v = outside(&s_uv.difference(&self.s_u));
        for x in s_uv.difference(&self.s_u).iter() {
            let in_sv = g.neighbors(x).intersection(&out_v) == VertexSet::singleton(v);
            if in_sv != self.s_v.contains(x) {
                return Err(format!("membership of {x} in S_v is wrong"));
            }
        }
        if self.s != s_uv.difference(&self.s_u.union(&self.s_v)) {
            return Err("S is not S_uv ∖ (S_u ∪ S_v)".into());
        }
        let comps = components(g, &self.s);
        if comps.iter().any(|c| c.contains(u) && c.contains(v)) {
            return Err("u and v share a component of G − S".into());
        }
        Ok(())
    }
}

/// The partition for the lexicographically least nonadjacent pair of
/// minimum degree sum, which must not exceed `n/4 + 5`.
pub fn uv_partition(g: &Graph) -> Result<UVPartition> {
    let guard = degree_sum_guard(g, int(THEOREM_T as usize));
    if guard.holds {
        return Err(if g.is_complete() { Error::Complete } else { Error::DegreeSumApplies });
    }
    let (u, v) = guard.worst_pair.expect("a qualifying pair exists");
    uv_partition_for(g, u, v)
}

/// As [`uv_partition`] without the degree-sum bound.
pub(crate) fn uv_partition_unguarded(g: &Graph) -> Result<UVPartition> {
    let guard = degree_sum_guard(g, int(THEOREM_T as usize));
    let (u, v) = guard.worst_pair.ok_or(Error::Complete)?;
    uv_partition_for(g, u, v)
}

pub fn uv_partition_for(g: &Graph, u: usize, v: usize) -> Result<UVPartition> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: x, n: g.n() });
        }
    }
    if u == v || g.has_edge(u, v) {
        return Err(Error::InvalidArgument(format!("{u} and {v} must be distinct and nonadjacent")));
    }
    let s_uv = g.neighbors(u).union(g.neighbors(v));
    let all = g.vertices();
    let out_uv = all.difference(&s_uv);
    let s_u: VertexSet =
        s_uv.iter().filter(|&x| g.neighbors(x).intersection(&out_uv) == VertexSet::singleton(u)).collect();
    let rest = s_uv.difference(&s_u);
    let out_v = all.difference(&rest);
    let s_v: VertexSet =
        rest.iter().filter(|&x| g.neighbors(x).intersection(&out_v) == VertexSet::singleton(v)).collect();
    let s = rest.difference(&s_v);
    let p = UVPartition { u, v, s_uv, s_u, s_v, s };
    p.check(g).map_err(Error::InvalidArgument)?;
    Ok(p)
}

/// Components of `G − removed`, largest first; ties by smallest member.
pub(crate) fn sorted_components(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut comps = components(g, removed);
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    comps
}

/// A nonadjacent pair inside `s`, if any.
pub(crate) fn non_edge_in(g: &Graph, s: &VertexSet) -> Option<(usize, usize)> {
    s.iter().find_map(|x| s.difference(g.neighbors(x)).iter().find(|&y| y > x).map(|y| (x, y)))
}

/// Claims 1 and 2 by direct enumeration. Every sub-claim is evaluated;
/// 2(iii) only when `c(G − S) ≥ 4`.
pub fn check_claims_1_2(g: &Graph, p: &UVPartition) -> Vec<ClaimOutcome> {
    let mut out = Vec::new();
    let mut push = |id: &str, passed: bool, witness: serde_json::Value| {
        out.push(ClaimOutcome { id: id.to_string(), passed, witness: if passed { serde_json::Value::Null } else { witness } });
    };
    let comps_uv = components(g, &p.s_uv);
    let bad = comps_uv.iter().find(|c| !is_clique(g, c));
    push("claim1", bad.is_none(), json!({ "component": bad, "non_edge": bad.and_then(|c| non_edge_in(g, c)) }));

    let comps = sorted_components(g, &p.s);
    let bad = comps.iter().find(|c| !is_clique(g, c));
    let ok = comps.len() == comps_uv.len() && comps.len() >= 3 && bad.is_none();
    push("claim2(i)", ok, json!({ "c(G-S)": comps.len(), "c(G-S_uv)": comps_uv.len(), "non_clique": bad }));

    let touching = |x: usize| comps.iter().filter(|c| !g.neighbors(x).is_disjoint(c)).count();
    let bad = p.s.iter().find(|&x| touching(x) < 2);
    push("claim2(ii)", bad.is_none(), json!({ "vertex": bad }));

    if comps.len() >= 4 {
        let not_full = |x: usize| comps.iter().filter(|c| !c.is_subset(g.neighbors(x))).count();
        let bad = p.s.iter().find(|&x| not_full(x) > 1);
        push("claim2(iii)", bad.is_none(), json!({ "vertex": bad }));
    }
    out
}

pub(crate) fn record_claims_1_2(g: &Graph, p: &UVPartition, tr: &mut Tracer) -> Step<()> {
    let outcomes = check_claims_1_2(g, p);
    let failed = outcomes.iter().find(|c| !c.passed).cloned();
    tr.claims.extend(outcomes);
    match failed {
        Some(c) => Err(tr.fail(&c.id, format!("{} does not hold", c.id)).with("witness", c.witness)),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseSplit {
    Case1,
    /// `D_0` is the first component of `G − S_uv` whose residual is small.
    Case2 { d0: VertexSet },
}

pub(crate) fn case_threshold(n: usize) -> Rational {
    rational(n as i64, 8) - int(1)
}

/// Case 1 iff `|V(G) ∖ (S_uv ∪ V(D))| > n/8 − 1` for every component `D` of
/// `G − S_uv`.
pub fn case_split(g: &Graph, p: &UVPartition) -> CaseSplit {
    let bound = case_threshold(g.n());
    for d in components(g, &p.s_uv) {
        let residual = g.n() - p.s_uv.len() - d.len();
        if int(residual) <= bound {
            return CaseSplit::Case2 { d0: d };
        }
    }
    CaseSplit::Case1
}
