mod common;

use hamtough::constructor::{
    build_case2_state, case_split, check_claims_1_2, construct, d1_star_lower_bound, stitch_claim5, uv_partition,
    uv_partition_for, Branch, Case2State, CaseSplit, ConstructOptions, ProofTrace, UVPartition,
};
use hamtough::fixtures::{construct_fixtures, fixture};
use hamtough::generate::rng_from_seed;
use hamtough::graph::is_hamiltonian_cycle;
use hamtough::matching::StarSubgraph;
use hamtough::structure::gen_free;
use hamtough::toughness::int;
use hamtough::{components, is_clique, Error, Graph, VertexSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;

fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

fn forced(pair: (usize, usize)) -> ConstructOptions {
    ConstructOptions { skip_guards: true, pair: Some(pair), ..Default::default() }
}

fn run_fixture(name: &str) -> (Graph, ProofTrace) {
    let f = fixture(name).unwrap();
    let exp = f.construct.unwrap();
    let trace = construct(&f.graph, &forced(exp.pair)).unwrap();
    (f.graph, trace)
}

fn ints(v: &Value) -> Vec<usize> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect()
}

#[test]
fn complete_graphs_take_the_identity_cycle() {
    for n in 3..9 {
        let t = construct(&Graph::complete(n), &ConstructOptions::default()).unwrap();
        assert_eq!(t.branch, Some(Branch::Complete));
        assert_eq!(t.cycle().unwrap(), (0..n).collect::<Vec<_>>().as_slice());
    }
}

#[test]
fn input_errors() {
    assert!(matches!(construct(&Graph::complete(2), &ConstructOptions::default()), Err(Error::TooSmall)));
    let pat = Graph::from_edges(5, &[(0, 1), (1, 2)]).unwrap();
    assert!(matches!(construct(&pat, &ConstructOptions::default()), Err(Error::NotFree)));
    let asserted = ConstructOptions { assert_toughness: true, ..Default::default() };
    assert!(matches!(construct(&Graph::cycle(5), &asserted), Err(Error::NotSevenTough(_))));
    assert!(construct(&Graph::complete(9), &asserted).unwrap().toughness.is_some());
}

#[test]
fn dense_free_graphs_stop_at_the_minimum_degree_guard() {
    let g = Graph::complete(20);
    let g = Graph::from_fn(20, |u, v| g.has_edge(u, v) && !(u == 0 && v == 1));
    let t = construct(&g, &ConstructOptions::default()).unwrap();
    assert_eq!(t.branch, Some(Branch::Lemma22));
    assert!(is_hamiltonian_cycle(&g, t.cycle().unwrap()));
    assert!(t.thresholds.contains_key("lemma22: n/(t+1) - 1"));
}

#[test]
fn every_fixture_reaches_its_branch() {
    let fixtures = construct_fixtures();
    assert!(fixtures.len() >= 10);
    let mut seen = std::collections::BTreeSet::new();
    for f in fixtures {
        let exp = f.construct.unwrap();
        let t = construct(&f.graph, &forced(exp.pair)).unwrap();
        assert_eq!(t.branch, Some(exp.branch), "{}", f.name);
        assert_eq!(t.cycle().is_some(), exp.cycle, "{}: {:?}", f.name, t.failure());
        if let Some(c) = t.cycle() {
            assert!(is_hamiltonian_cycle(&f.graph, c), "{}", f.name);
            seen.insert(exp.branch);
        } else {
            let fail = t.failure().unwrap();
            assert!(!fail.claim.is_empty() && fail.branch == Some(exp.branch));
        }
    }
    for b in [Branch::Case1, Branch::Case2_1, Branch::Case2_2, Branch::Case2_2_1, Branch::Case2_2_2] {
        assert!(seen.contains(&b), "no fixture builds a cycle in {b}");
    }
}

#[test]
fn traces_serialize_round_trip() {
    let (_, t) = run_fixture("case2_2_2_pair");
    let json = serde_json::to_string(&t).unwrap();
    let back: ProofTrace = serde_json::from_str(&json).unwrap();
    assert_eq!(back, t);
}

/// `S_1` against enumeration of every subset of `S` on the fixtures that
/// enter Case 2.
#[test]
fn case2_state_matches_enumeration() {
    let mut checked = 0;
    for f in construct_fixtures() {
        let exp = f.construct.unwrap();
        let g = &f.graph;
        let p = uv_partition_for(g, exp.pair.0, exp.pair.1).unwrap();
        if !matches!(case_split(g, &p), CaseSplit::Case2 { .. }) {
            continue;
        }
        let st = build_case2_state(g, &p).unwrap();
        st.check(g).unwrap();
        let comps = components(g, &p.s);
        let d1 = comps.iter().max_by_key(|c| c.len()).unwrap();
        assert_eq!(st.d1.len(), d1.len());
        let s = p.s.to_vec();
        let d = st.d1.to_vec();
        let adj: Vec<Vec<usize>> = s.iter().map(|&x| (0..d.len()).filter(|&j| g.has_edge(x, d[j])).collect()).collect();
        let (def, maximizers) = common::brute_max_deficiency(&adj, &vec![2; s.len()]);
        assert_eq!(def, st.s1_deficiency, "{}", f.name);
        let want: VertexSet = if def == 0 {
            VertexSet::new()
        } else {
            let union = maximizers.iter().fold(0u64, |a, &m| a | m);
            (0..s.len()).filter(|&i| union >> i & 1 == 1).map(|i| s[i]).collect()
        };
        assert_eq!(st.s1, want, "{}", f.name);
        // Hall slack: every nonempty T ⊆ S_2 sees 2|T| vertices outside N(S_1).
        let avail = st.d1.difference(&st.n_d1_s1);
        let s2 = st.s2.to_vec();
        for mask in 1u32..1 << s2.len().min(12) {
            let t: VertexSet = (0..s2.len()).filter(|i| mask >> i & 1 == 1).map(|i| s2[i]).collect();
            assert!(g.neighborhood(&t).intersection(&avail).len() >= 2 * t.len());
        }
        checked += 1;
    }
    assert!(checked >= 6);
}

#[test]
fn c6_partition() {
    let c6 = Graph::cycle(6);
    let p = uv_partition_for(&c6, 0, 3).unwrap();
    assert_eq!(p.s_uv, set(&[1, 2, 4, 5]));
    p.check(&c6).unwrap();
    assert!(uv_partition_for(&c6, 0, 1).is_err());
    assert!(uv_partition_for(&c6, 0, 6).is_err());
    assert!(matches!(uv_partition(&Graph::complete(4)), Err(Error::Complete)));
}

/// `0` and `1` are the nonadjacent pair, `S_uv = {2, 3}` is complete to the
/// rest, and `G − S_uv` is `{0}`, `{1}` and a clique `D` on `4..n`. The
/// residual of `D` is `{0, 1}`.
fn split_instance(n: usize) -> (Graph, UVPartition) {
    let g = Graph::from_fn(n, |a, b| {
        let (a, b) = (a.min(b), a.max(b));
        matches!((a, b), (0, 2) | (1, 3) | (2, 3)) || (a >= 2 && b >= 4) || a >= 4
    });
    let p = uv_partition_for(&g, 0, 1).unwrap();
    assert_eq!(p.s_uv, set(&[2, 3]));
    (g, p)
}

#[test]
fn case_split_boundary() {
    // 24/8 − 1 = 2, so a residual of 2 is small; 23/8 − 1 < 2 is not.
    let (g, p) = split_instance(24);
    assert!(matches!(case_split(&g, &p), CaseSplit::Case2 { .. }));
    let (g, p) = split_instance(23);
    assert_eq!(case_split(&g, &p), CaseSplit::Case1);
}

#[test]
fn claim1_fails_only_on_an_induced_pattern() {
    // In a free graph claim 1 always holds, so use an induced P3 ∪ 2P1:
    // 0 and 1 hang off 5, which leads into the path 2-3-4.
    let g = Graph::from_edges(6, &[(0, 5), (1, 5), (5, 2), (2, 3), (3, 4)]).unwrap();
    assert!(!hamtough::structure::is_free(&g, 2));
    let p = uv_partition_for(&g, 0, 1).unwrap();
    let claims = check_claims_1_2(&g, &p);
    let c1 = claims.iter().find(|c| c.id == "claim1").unwrap();
    assert!(!c1.passed);
    let comp: VertexSet = ints(&c1.witness["component"]).into_iter().collect();
    assert_eq!(comp, set(&[2, 3, 4]));
    assert!(!is_clique(&g, &comp));
    assert!(matches!(construct(&g, &forced((0, 1))), Err(Error::NotFree)));
}

#[test]
fn d1_star_bound() {
    assert_eq!(d1_star_lower_bound(120), int(1));
    assert!(d1_star_lower_bound(112) < int(1));
}

/// `|F_1| = c(D_2^* − W) − (|W| − 1 + [a_0 ∉ W] + [b_0 ∉ W] − [a_0, b_0 share a component])`.
#[test]
fn subcase_2_2_2_selects_the_expected_number_of_components() {
    for name in ["case2_2_2_single", "case2_2_2_pair"] {
        let (_, t) = run_fixture(name);
        let im = &t.intermediates;
        let w = ints(&im["W"]);
        let fs: Vec<Vec<usize>> = im["F"].as_array().unwrap().iter().map(ints).collect();
        let (a0, b0) = (im["a_0"].as_u64().unwrap() as usize, im["b_0"].as_u64().unwrap() as usize);
        let comp = |v: usize| fs.iter().position(|f| f.contains(&v));
        let k = w.len() - 1 + comp(a0).is_some() as usize + comp(b0).is_some() as usize;
        let same = comp(a0).is_some() && comp(a0) == comp(b0);
        assert_eq!(ints(&im["F_1"]).len(), fs.len() - (k - same as usize), "{name}");
        assert_eq!(ints(&im["F_1"]).len() + ints(&im["F_2"]).len(), fs.len());
    }
}

/// A hand-built Case 2 layout: `D_1` a clique, each `S_2` vertex with two
/// private leaves in `D_1`, and paths whose interiors cover everything else.
struct Layout {
    g: Graph,
    st: Case2State,
    paths: Vec<Vec<usize>>,
}

fn layout(seed: u64) -> Layout {
    let mut rng = rng_from_seed(seed);
    let k = rng.gen_range(1..=3);
    let mut next = 0;
    let mut fresh = |c: usize| {
        let v: Vec<usize> = (next..next + c).collect();
        next += c;
        v
    };
    let mut edges = Vec::new();
    let mut s2 = Vec::new();
    let mut s1 = Vec::new();
    let mut n_end = Vec::new();
    let mut paths = Vec::new();
    for _ in 0..k {
        // Each end is an S_2 vertex or a D_1 vertex seen by S_1.
        let kinds = [rng.gen_bool(0.5), rng.gen_bool(0.5)];
        let both_n = !kinds[0] && !kinds[1];
        let inner = fresh(rng.gen_range(1 + both_n as usize..=3));
        let ends = fresh(2);
        let mut q = vec![ends[0]];
        q.extend(&inner);
        q.push(ends[1]);
        for w in q.windows(2) {
            edges.push((w[0], w[1]));
        }
        for (i, &is_s2) in kinds.iter().enumerate() {
            if is_s2 {
                s2.push(ends[i]);
            } else {
                n_end.push(ends[i]);
                s1.push(if i == 0 { inner[0] } else { *inner.last().unwrap() });
            }
        }
        paths.push(q);
    }
    s2.extend(fresh(rng.gen_range(0..=2)));
    let leaves: Vec<Vec<usize>> = s2.iter().map(|_| fresh(2)).collect();
    let spare = fresh(rng.gen_range(0..=3));
    let n = next;
    let mut d1: Vec<usize> = n_end.clone();
    d1.extend(leaves.iter().flatten());
    d1.extend(&spare);
    for (i, a) in d1.iter().enumerate() {
        for b in &d1[i + 1..] {
            edges.push((*a, *b));
        }
    }
    for (x, l) in s2.iter().zip(&leaves) {
        edges.push((*x, l[0]));
        edges.push((*x, l[1]));
    }
    // Scramble labels so the layout does not follow vertex order.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    edges.sort_unstable();
    edges.dedup();
    let g = Graph::from_edges(n, &edges).unwrap().relabel(&perm);
    let map = |v: &[usize]| -> VertexSet { v.iter().map(|&x| perm[x]).collect() };
    let s1 = map(&s1);
    let n_d1_s1 = map(&n_end);
    let s2s = map(&s2);
    let d1s = map(&d1);
    let m = StarSubgraph {
        centers: {
            let mut c: Vec<(usize, VertexSet)> = s2.iter().zip(&leaves).map(|(x, l)| (perm[*x], map(l))).collect();
            c.sort_by_key(|(x, _)| *x);
            c
        },
    };
    let q = m.leaf_set();
    let st = Case2State {
        components: vec![d1s.clone()],
        d1: d1s.clone(),
        s1_deficiency: 2 * s1.len() - n_d1_s1.len(),
        s1,
        s_star: n_d1_s1.union(&s2s),
        n_d1_s1,
        s2: s2s,
        d1_star: map(&spare),
        m,
        q,
    };
    let paths = paths.iter().map(|p| p.iter().map(|&x| perm[x]).collect()).collect();
    Layout { g, st, paths }
}

#[test]
fn stitching_rejects_bad_paths() {
    let l = layout(7);
    l.st.check(&l.g).unwrap();
    assert!(stitch_claim5(&l.g, &l.st, &[]).is_err());
    // Dropping a path leaves its interior uncovered.
    if l.paths.len() > 1 {
        assert!(stitch_claim5(&l.g, &l.st, &l.paths[1..]).is_err());
    }
    let mut twice = l.paths.clone();
    twice.push(l.paths[0].clone());
    assert!(stitch_claim5(&l.g, &l.st, &twice).is_err());
    let mut short = l.paths.clone();
    short[0].truncate(1);
    assert!(stitch_claim5(&l.g, &l.st, &short).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn stitching_builds_a_hamiltonian_cycle(seed in any::<u64>()) {
        let l = layout(seed);
        prop_assert!(l.g.n() <= 40);
        prop_assert!(l.st.check(&l.g).is_ok());
        let c = stitch_claim5(&l.g, &l.st, &l.paths).unwrap();
        prop_assert!(is_hamiltonian_cycle(&l.g, c.verts()));
        // Reversing a path describes the same hypotheses.
        let mut rev = l.paths.clone();
        rev[0].reverse();
        let c = stitch_claim5(&l.g, &l.st, &rev).unwrap();
        prop_assert!(is_hamiltonian_cycle(&l.g, c.verts()));
    }

    /// Partitions of random free graphs agree with a naive recomputation.
    #[test]
    fn partition_invariants(n in 6usize..=16, p in 0.3f64..0.9, seed in any::<u64>()) {
        let g = gen_free(n, p, 2, seed);
        let pair = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !g.has_edge(u, v));
        let Some((u, v)) = pair else { return Ok(()) };
        let part = uv_partition_for(&g, u, v).unwrap();
        let adj = common::matrix(&g);
        let s_uv: VertexSet = (0..n).filter(|&x| adj[x][u] || adj[x][v]).collect();
        prop_assert_eq!(&part.s_uv, &s_uv);
        let outside = |x: usize, excl: &VertexSet| -> Vec<usize> {
            (0..n).filter(|&y| adj[x][y] && !excl.contains(y)).collect()
        };
        for x in s_uv.iter() {
            prop_assert_eq!(part.s_u.contains(x), outside(x, &s_uv) == vec![u]);
        }
        let rest = s_uv.difference(&part.s_u);
        for x in rest.iter() {
            prop_assert_eq!(part.s_v.contains(x), outside(x, &rest) == vec![v]);
        }
        prop_assert_eq!(part.s_u.union(&part.s_v).union(&part.s), s_uv.clone());
        prop_assert!(part.s_u.is_disjoint(&part.s_v) && part.s.is_disjoint(&part.s_u));
        // u and v lie in different components of G − S.
        let keep = common::full_mask(n) & !common::mask_of(part.s.iter());
        let mut reach = 1u64 << u;
        loop {
            let grown = (0..n)
                .filter(|&x| keep >> x & 1 == 1 && (0..n).any(|y| reach >> y & 1 == 1 && adj[x][y]))
                .fold(reach, |r, x| r | 1 << x);
            if grown == reach {
                break;
            }
            reach = grown;
        }
        prop_assert_eq!(reach >> v & 1, 0);
        let claims = check_claims_1_2(&g, &part);
        let c1 = claims.iter().find(|c| c.id == "claim1").unwrap();
        prop_assert_eq!(c1.passed, components(&g, &s_uv).iter().all(|c| is_clique(&g, c)));
        prop_assert!(c1.passed);
    }
}
