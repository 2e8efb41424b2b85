//! The Hamiltonicity argument for 7-tough `(P3 ∪ 2P1)`-free graphs as an
//! executable pipeline. Every branch, claim and intermediate object is
//! recorded in a [`ProofTrace`]; a claim that fails yields a
//! [`FailureReport`] instead of a cycle.

mod case1;
mod case2;
mod partition;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, VertexSet};
use crate::hamiltonicity::{degree_sum_guard, ham_cycle_with, ham_path_between_with, lemma22_guard, lemma_threshold, Engine, DEFAULT_DP_CAP};
use crate::structure::is_free;
use crate::toughness::{format_rational, int, toughness_exact_with_cap, Rational, Toughness, DEFAULT_CAP};

pub use case1::run_case1;
pub use case2::{build_case2_state, d1_star_lower_bound, run_case2, stitch_claim5, Case2State};
pub use partition::{case_split, check_claims_1_2, uv_partition, uv_partition_for, CaseSplit, UVPartition};

/// The toughness the theorem assumes.
pub const THEOREM_T: i64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Complete,
    Lemma22,
    DegreeSum,
    Case1,
    Case2_1,
    /// `D_2^*` is Hamiltonian connected and one path suffices.
    Case2_2,
    Case2_2_1,
    Case2_2_2,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Complete => "complete",
            Branch::Lemma22 => "lemma22",
            Branch::DegreeSum => "degree_sum",
            Branch::Case1 => "case1",
            Branch::Case2_1 => "case2_1",
            Branch::Case2_2 => "case2_2",
            Branch::Case2_2_1 => "case2_2_1",
            Branch::Case2_2_2 => "case2_2_2",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named claim evaluated by direct enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub witness: Value,
}

/// A numeric bound from the argument, recorded but not enforced: at small
/// orders the asymptotic inequalities are expected to fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub id: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureReport {
    /// The branch being executed when the failure occurred.
    pub branch: Option<Branch>,
    /// The claim or step whose hypothesis failed.
    pub claim: String,
    pub message: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub witnesses: BTreeMap<String, Value>,
}

impl FailureReport {
    pub fn new(claim: impl Into<String>, message: impl Into<String>) -> Self {
        Self { branch: None, claim: claim.into(), message: message.into(), witnesses: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, value: impl Serialize) -> Self {
        self.witnesses.insert(name.to_string(), serde_json::to_value(value).expect("serializable witness"));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceResult {
    Cycle(Vec<usize>),
    FailureReport(FailureReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub n: usize,
    pub m: usize,
    pub branch: Option<Branch>,
    /// Exact threshold values used by guards and case distinctions.
    pub thresholds: BTreeMap<String, String>,
    pub claims: Vec<ClaimOutcome>,
    pub bounds: Vec<BoundCheck>,
    /// Named sets, vertices and paths, keyed by their role.
    pub intermediates: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub toughness: Option<Toughness>,
    pub result: TraceResult,
}

impl ProofTrace {
    pub fn cycle(&self) -> Option<&[usize]> {
        match &self.result {
            TraceResult::Cycle(c) => Some(c),
            TraceResult::FailureReport(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&FailureReport> {
        match &self.result {
            TraceResult::FailureReport(f) => Some(f),
            TraceResult::Cycle(_) => None,
        }
    }

    /// A failure on an input verified to be 7-tough contradicts the theorem.
    pub fn is_violation_candidate(&self) -> bool {
        self.failure().is_some() && self.toughness.as_ref().is_some_and(|t| t.is_at_least(int(THEOREM_T as usize)))
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimOutcome> {
        self.claims.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Verify `τ(G) ≥ 7` exactly before constructing.
    pub assert_toughness: bool,
    /// Go straight to the case analysis, bypassing the complete, Lemma 2.2
    /// and degree-sum branches. Used to exercise the cases on small inputs.
    pub skip_guards: bool,
    /// Use this nonadjacent pair instead of the minimizing one.
    pub pair: Option<(usize, usize)>,
    pub toughness_cap: usize,
    pub dp_cap: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self { assert_toughness: false, skip_guards: false, pair: None, toughness_cap: DEFAULT_CAP, dp_cap: DEFAULT_DP_CAP }
    }
}

pub(crate) type Step<T> = std::result::Result<T, FailureReport>;

/// Mutable trace state threaded through the pipeline.
pub(crate) struct Tracer {
    pub(crate) branch: Option<Branch>,
    pub(crate) thresholds: BTreeMap<String, String>,
    pub(crate) claims: Vec<ClaimOutcome>,
    pub(crate) bounds: Vec<BoundCheck>,
    pub(crate) intermediates: BTreeMap<String, Value>,
    pub(crate) dp_cap: usize,
    pub(crate) toughness_cap: usize,
}

impl Tracer {
    fn new(opts: &ConstructOptions) -> Self {
        Self {
            branch: None,
            thresholds: BTreeMap::new(),
            claims: Vec::new(),
            bounds: Vec::new(),
            intermediates: BTreeMap::new(),
            dp_cap: opts.dp_cap,
            toughness_cap: opts.toughness_cap,
        }
    }

    pub(crate) fn threshold(&mut self, name: &str, value: Rational) -> Rational {
        self.thresholds.insert(name.to_string(), format_rational(&value));
        value
    }

    pub(crate) fn set(&mut self, name: &str, value: impl Serialize) {
        self.intermediates.insert(name.to_string(), serde_json::to_value(value).expect("serializable intermediate"));
    }

    /// Records a claim; a failing claim becomes the returned report.
    pub(crate) fn claim(&mut self, id: &str, passed: bool, witness: impl Serialize) -> Step<()> {
        let witness = serde_json::to_value(witness).expect("serializable witness");
        self.claims.push(ClaimOutcome { id: id.to_string(), passed, witness: witness.clone() });
        if passed {
            Ok(())
        } else {
            Err(self.fail(id, format!("{id} does not hold")).with("witness", witness))
        }
    }

    pub(crate) fn bound(&mut self, id: &str, lhs: Rational, rhs: Rational, holds: bool) {
        self.bounds.push(BoundCheck { id: id.to_string(), lhs: format_rational(&lhs), rhs: format_rational(&rhs), holds });
    }

    pub(crate) fn fail(&self, claim: &str, message: impl Into<String>) -> FailureReport {
        FailureReport { branch: self.branch, ..FailureReport::new(claim, message) }
    }

    /// Converts a library error from step `claim` into a report.
    pub(crate) fn err(&self, claim: &str, e: Error) -> FailureReport {
        let report = self.fail(claim, e.to_string());
        match e {
            Error::HallLemmaViolation(v) => report.with("hall_violation", *v),
            _ => report,
        }
    }
}

/// Runs the pipeline on `g`. Input errors (too small, not free, toughness
/// below 7 when asserted) are `Err`; claim failures are a `FailureReport`
/// inside the trace.
pub fn construct(g: &Graph, opts: &ConstructOptions) -> Result<ProofTrace> {
    if g.n() < 3 {
        return Err(Error::TooSmall);
    }
    if !is_free(g, 2) {
        return Err(Error::NotFree);
    }
    let toughness = if opts.assert_toughness {
        let cert = toughness_exact_with_cap(g, opts.toughness_cap)?;
        if !cert.toughness.is_at_least(int(THEOREM_T as usize)) {
            return Err(Error::NotSevenTough(cert.toughness.to_string()));
        }
        Some(cert.toughness)
    } else {
        None
    };
    let mut trace = traced(g, opts, |tr| {
        let c = pipeline(g, opts, tr)?;
        if c.len() != g.n() {
            return Err(tr.fail("hamiltonian", "the constructed cycle is not spanning"));
        }
        Ok(c)
    });
    trace.toughness = toughness;
    Ok(trace)
}

fn pipeline(g: &Graph, opts: &ConstructOptions, tr: &mut Tracer) -> Step<Cycle> {
    let seven = int(THEOREM_T as usize);
    if !opts.skip_guards {
        if g.is_complete() {
            tr.branch = Some(Branch::Complete);
            return Cycle::new(g, (0..g.n()).collect()).map_err(|e| tr.err("complete", e));
        }
        tr.threshold("lemma22: n/(t+1) - 1", lemma_threshold(g.n(), seven));
        if lemma22_guard(g, seven) {
            tr.branch = Some(Branch::Lemma22);
            tr.set("min_degree", g.min_degree());
            return oracle_cycle(g, tr, "lemma22 oracle");
        }
        let guard = degree_sum_guard(g, seven);
        tr.threshold("degree_sum: 2n/(t+1) + t - 2", guard.threshold);
        if guard.holds {
            tr.branch = Some(Branch::DegreeSum);
            tr.set("min_nonadjacent_degree_sum", guard.worst_sum);
            return oracle_cycle(g, tr, "degree_sum oracle");
        }
        // With δ ≤ n/8 − 1 the order bound n ≥ 8δ + 8 always holds, and
        // 8δ + 8 ≥ 120 would follow from 14-connectivity.
        let delta = int(g.min_degree());
        let lower = int(8) * delta + int(8);
        tr.bound("n >= 8*delta + 8", int(g.n()), lower, int(g.n()) >= lower);
        tr.bound("8*delta + 8 >= 120", lower, int(120), lower >= int(120));
    } else if g.is_complete() {
        return Err(tr.fail("uv_partition", "complete graphs have no nonadjacent pair"));
    }
    let p = match opts.pair {
        Some((u, v)) => uv_partition_for(g, u, v),
        None if opts.skip_guards => partition::uv_partition_unguarded(g),
        None => uv_partition(g),
    }
    .map_err(|e| tr.err("uv_partition", e))?;
    p.record(tr);
    partition::record_claims_1_2(g, &p, tr)?;
    tr.threshold("case_split: n/8 - 1", partition::case_threshold(g.n()));
    match case_split(g, &p) {
        CaseSplit::Case1 => {
            tr.branch = Some(Branch::Case1);
            case1::case1(g, &p, tr)
        }
        CaseSplit::Case2 { d0 } => {
            tr.set("D_0", &d0);
            let st = case2::case2_state(g, &p, tr)?;
            case2::case2(g, &st, tr)
        }
    }
}

/// Runs `body` with a fresh tracer and packages the outcome.
pub(crate) fn traced(g: &Graph, opts: &ConstructOptions, body: impl FnOnce(&mut Tracer) -> Step<Cycle>) -> ProofTrace {
    let mut tr = Tracer::new(opts);
    let result = match body(&mut tr) {
        Ok(c) => TraceResult::Cycle(c.into_verts()),
        Err(f) => TraceResult::FailureReport(f),
    };
    ProofTrace {
        n: g.n(),
        m: g.m(),
        branch: tr.branch,
        thresholds: tr.thresholds,
        claims: tr.claims,
        bounds: tr.bounds,
        intermediates: tr.intermediates,
        toughness: None,
        result,
    }
}

/// A Hamiltonian path of the clique `comp` from `a` to `b` (`a = b` for a
/// single vertex).
pub(crate) fn clique_path(comp: &VertexSet, a: usize, b: usize) -> Vec<usize> {
    let mut p = vec![a];
    p.extend(comp.iter().filter(|&x| x != a && x != b));
    if b != a {
        p.push(b);
    }
    p
}

/// Ends `e ∼ c_in`, `f ∼ c_out` of a Hamiltonian path through the clique
/// `comp`; distinct unless `comp` is a single vertex.
pub(crate) fn link_ends(g: &Graph, comp: &VertexSet, c_in: usize, c_out: usize) -> Option<(usize, usize)> {
    let ins = g.neighbors(c_in).intersection(comp);
    let outs = g.neighbors(c_out).intersection(comp);
    if comp.len() == 1 {
        let w = comp.first()?;
        return (ins.contains(w) && outs.contains(w)).then_some((w, w));
    }
    ins.iter().find_map(|e| outs.iter().find(|&f| f != e).map(|f| (e, f)))
}

/// A Hamiltonian `a`–`b` path of `G[set]`, in `G`'s labels.
pub(crate) fn ham_path_in(g: &Graph, set: &VertexSet, a: usize, b: usize, dp_cap: usize) -> Result<Option<Vec<usize>>> {
    if a == b {
        return Ok((set.len() == 1 && set.contains(a)).then(|| vec![a]));
    }
    let (h, map) = g.induced(set);
    let idx = |x: usize| map.iter().position(|&y| y == x).expect("endpoint inside the set");
    let engine = if h.n() <= dp_cap { Engine::Dp } else { Engine::Backtrack };
    let res = ham_path_between_with(&h, idx(a), idx(b), engine, usize::MAX)?;
    Ok(res.path().map(|p| p.verts().iter().map(|&i| map[i]).collect()))
}

fn oracle_cycle(g: &Graph, tr: &Tracer, claim: &str) -> Step<Cycle> {
    let engine = if g.n() <= tr.dp_cap { Engine::Dp } else { Engine::Backtrack };
    let res = ham_cycle_with(g, engine, if engine == Engine::Dp { tr.dp_cap } else { usize::MAX })
        .map_err(|e| tr.err(claim, e))?;
    res.cycle().cloned().ok_or_else(|| tr.fail(claim, "the guard holds but the oracle finds no Hamiltonian cycle"))
}

