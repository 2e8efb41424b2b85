use serde_json::json;

use super::partition::{sorted_components, UVPartition};
use super::{clique_path, link_ends, traced, ConstructOptions, ProofTrace, Step, Tracer, THEOREM_T};
use crate::graph::{splice, Cycle, Graph, PathSeq, VertexSet};
use crate::hamiltonicity::{exceeds_lemma_threshold, extend_cycle_with_cap, lemma_threshold};
use crate::matching::{generalized_matching_on, Splits};
use crate::toughness::int;

/// Search budget for the component-linking search.
const LINK_BUDGET: usize = 200_000;

/// Case 1 on its own, starting from a given partition.
pub fn run_case1(g: &Graph, p: &UVPartition, opts: &ConstructOptions) -> ProofTrace {
    traced(g, opts, |tr| {
        tr.branch = Some(super::Branch::Case1);
        case1(g, p, tr)
    })
}

/// Places clique components on a cycle, consecutive components joined
/// through a distinct connector taken from the partners of either of them.
struct Linker<'a> {
    g: &'a Graph,
    comps: &'a [VertexSet],
    partners: &'a [(usize, usize)],
    nodes: usize,
    exhausted: bool,
}

struct Linked {
    order: Vec<usize>,
    connectors: Vec<usize>,
    cycle: Vec<usize>,
}

impl<'a> Linker<'a> {
    fn candidates(&self, cur: usize, next: usize, used: &VertexSet) -> Vec<usize> {
        let (xc, yc) = self.partners[cur];
        let (xn, yn) = self.partners[next];
        let mut out = Vec::with_capacity(4);
        for c in [yc, xc, xn, yn] {
            if !used.contains(c) && !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    fn touches(&self, c: usize, comp: usize) -> bool {
        !self.g.neighbors(c).is_disjoint(&self.comps[comp])
    }

    /// A cycle through every component in `members`, `members[0]` first.
    fn link(&mut self, members: &[usize]) -> Option<Linked> {
        self.nodes = 0;
        self.exhausted = false;
        let mut order = vec![members[0]];
        let mut conns = Vec::new();
        let mut used = VertexSet::new();
        let mut rest: Vec<usize> = members[1..].to_vec();
        self.dfs(&mut order, &mut conns, &mut used, &mut rest)
    }

    fn dfs(&mut self, order: &mut Vec<usize>, conns: &mut Vec<usize>, used: &mut VertexSet, rest: &mut Vec<usize>) -> Option<Linked> {
        self.nodes += 1;
        if self.nodes > LINK_BUDGET {
            self.exhausted = true;
            return None;
        }
        let cur = *order.last().expect("nonempty order");
        if rest.is_empty() {
            let first = order[0];
            for z in self.candidates(cur, first, used) {
                let tail_ok = if order.len() == 1 {
                    false
                } else {
                    link_ends(self.g, &self.comps[cur], conns[conns.len() - 1], z).is_some()
                };
                if tail_ok && link_ends(self.g, &self.comps[first], z, conns[0]).is_some() {
                    return Some(self.assemble(order, conns, z));
                }
            }
            return None;
        }
        for i in 0..rest.len() {
            let next = rest[i];
            for c in self.candidates(cur, next, used) {
                if !self.touches(c, next) {
                    continue;
                }
                // The current component is now fixed between two connectors.
                let ok = match conns.last() {
                    None => self.touches(c, cur),
                    Some(&prev) => link_ends(self.g, &self.comps[cur], prev, c).is_some(),
                };
                if !ok {
                    continue;
                }
                rest.remove(i);
                order.push(next);
                conns.push(c);
                used.insert(c);
                let found = self.dfs(order, conns, used, rest);
                used.remove(c);
                conns.pop();
                order.pop();
                rest.insert(i, next);
                if found.is_some() || self.exhausted {
                    return found;
                }
            }
        }
        None
    }

    fn assemble(&self, order: &[usize], conns: &[usize], z: usize) -> Linked {
        let k = order.len();
        let mut cycle = Vec::new();
        for (pos, &comp) in order.iter().enumerate() {
            let c_in = if pos == 0 { z } else { conns[pos - 1] };
            let c_out = if pos + 1 == k { z } else { conns[pos] };
            let (e, f) = link_ends(self.g, &self.comps[comp], c_in, c_out).expect("checked during the search");
            cycle.extend(clique_path(&self.comps[comp], e, f));
            if pos + 1 < k {
                cycle.push(c_out);
            }
        }
        cycle.push(z);
        let mut connectors = conns.to_vec();
        connectors.push(z);
        Linked { order: order.to_vec(), connectors, cycle }
    }
}

pub(crate) fn case1(g: &Graph, p: &UVPartition, tr: &mut Tracer) -> Step<Cycle> {
    let n = g.n();
    let seven = int(THEOREM_T as usize);
    let bound = lemma_threshold(n, seven);
    let outside_s = g.vertices().difference(&p.s);
    let weak = p.s.iter().find(|&x| !exceeds_lemma_threshold(g.neighbors(x).intersection_len(&outside_s), n, seven));
    tr.claim("claim3", weak.is_none(), json!({ "vertex": weak, "bound": crate::toughness::format_rational(&bound) }))?;

    let comps = sorted_components(g, &p.s);
    tr.set("components", &comps);
    let gm = generalized_matching_on(g, &p.s, &comps, 1, &Splits::Canonical).map_err(|e| tr.err("lemma2.5(t=2)", e))?;
    let mut partners = Vec::with_capacity(comps.len());
    let mut table = Vec::new();
    for part in &gm.parts {
        let (x, a, y, b) = part.k12_ends(g).ok_or_else(|| tr.fail("lemma2.5(t=2)", "a component lacks two partners"))?;
        partners.push((x, y));
        table.push(json!({ "component": part.component, "x": x, "a": a, "y": y, "b": b }));
    }
    tr.set("partners", table);

    let t = comps.len();
    let all: Vec<usize> = (0..t).collect();
    let mut linker = Linker { g, comps: &comps, partners: &partners, nodes: 0, exhausted: false };
    let base = if let Some(l) = linker.link(&all) {
        tr.set("wiring", "chain");
        tr.set("chain_order", &l.order);
        tr.set("chain_connectors", &l.connectors);
        Cycle::new(g, l.cycle).map_err(|e| tr.err("chain", e))?
    } else {
        if linker.exhausted {
            return Err(tr.fail("chain", "component-linking search exhausted its budget"));
        }
        claim4(g, &comps, &partners, &mut linker, tr)?
    };
    tr.set("C", base.verts());

    let mut c = base;
    let mut inserted = Vec::new();
    for x in p.s.iter().filter(|&x| !c.contains(x)).collect::<Vec<_>>() {
        c = extend_cycle_with_cap(g, &c, x, seven, tr.dp_cap).map_err(|e| tr.err("lemma2.3", e).with("vertex", x))?;
        inserted.push(x);
    }
    tr.set("inserted_by_extension", inserted);
    if c.len() != n {
        return Err(tr.fail("case1", "the extended cycle misses vertices"));
    }
    Ok(c)
}

/// No direct closure exists: build `C′` on `D_1, …, D_{t−1}` and bring in
/// `D_t` through its partners.
fn claim4(
    g: &Graph,
    comps: &[VertexSet],
    partners: &[(usize, usize)],
    linker: &mut Linker<'_>,
    tr: &mut Tracer,
) -> Step<Cycle> {
    let t = comps.len();
    let members: Vec<usize> = (0..t - 1).collect();
    let Some(l) = linker.link(&members) else {
        let msg = if linker.exhausted { "search budget exhausted" } else { "no cycle through D_1, …, D_{t−1}" };
        return Err(tr.fail("claim4: C′", msg));
    };
    let c_prime = Cycle::new(g, l.cycle).map_err(|e| tr.err("claim4: C′", e))?;
    tr.set("C_prime", c_prime.verts());
    let (xt, yt) = partners[t - 1];
    let dt = &comps[t - 1];
    for (x_end, y_end) in [(xt, yt), (yt, xt)] {
        let Some((e, f)) = link_ends(g, dt, x_end, y_end) else { continue };
        let mut verts = vec![x_end];
        verts.extend(clique_path(dt, e, f));
        verts.push(y_end);
        let path = PathSeq::new(g, verts).map_err(|e| tr.err("claim4(i)", e))?;
        for (u, w) in c_prime.edges().collect::<Vec<_>>() {
            for (a, b) in [(u, w), (w, u)] {
                if g.has_edge(a, x_end) && g.has_edge(b, y_end) {
                    tr.set("wiring", "claim4(i)");
                    tr.set("claim4_edge", (a, b));
                    return splice(g, &c_prime, (a, b), &path).map_err(|e| tr.err("claim4(i)", e));
                }
            }
        }
    }
    // Claim 4(i) now holds; 4(ii) and its consequence are what remains.
    let full = |x: usize, d: &VertexSet| d.is_subset(g.neighbors(x));
    let both = comps.iter().find(|d| d.len() >= 2 && full(xt, d) && full(yt, d));
    tr.claim("claim4(ii)", both.is_none(), both)?;
    let big = comps.iter().skip(2).find(|d| d.len() >= 2);
    tr.claim("claim4(ii): |D_i| = 1 for i >= 3", big.is_none(), big)?;
    // The closing cycles of Claim 4(ii) join consecutive components through
    // partners of one of them, so the exhaustive linking search above
    // already covers them.
    Err(tr.fail("claim4", "no wiring of D_1, …, D_t exists"))
}
