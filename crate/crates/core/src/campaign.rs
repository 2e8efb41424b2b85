//! Seeded experiment campaigns. Every instance is drawn from its own RNG,
//! seeded by [`derive_seed`] from the campaign seed and the instance index,
//! so the stream does not depend on scheduling. Records come back in index
//! order.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constructor::{construct, ConstructOptions, THEOREM_T};
use crate::error::{Error, Result};
use crate::generate::{derive_seed, erdos_renyi, random_bipartite, random_permutation, rng_from_seed, InstanceRng};
use crate::graph::{components, is_hamiltonian_cycle, Cycle, Graph, VertexSet};
use crate::hamiltonicity::{
    exceeds_lemma_threshold, extend_cycle_with_cap, ham_connected_with_cap, ham_cycle_with, Engine, DEFAULT_DP_CAP,
};
use crate::io::to_graph6;
use crate::matching::{find_star_subgraph, generalized_matching, Bipartite, StarOutcome};
use crate::structure::{gen_free, is_free};
use crate::toughness::{int, toughness_exact_with_cap, Toughness, DEFAULT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    /// Free graphs: 7-tough ones must get a cycle from `construct`, and
    /// nonhamiltonian ones must be less than 7-tough.
    TheoremCheck,
    /// Star subgraphs against exhaustive Hall checks.
    Lemma21,
    /// `(P3 ∪ P1)`-free graphs with `τ > 1` are Hamiltonian connected.
    Lemma24,
    /// Generalized `K_{1,2}`-matchings on 2-tough graphs.
    Lemma25,
    ExtendCycle,
    /// Minimum toughness of nonhamiltonian free graphs, per order.
    ThresholdProbe,
    /// Held–Karp against backtracking.
    EngineAgreement,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 7] = [
        CampaignKind::TheoremCheck,
        CampaignKind::Lemma21,
        CampaignKind::Lemma24,
        CampaignKind::Lemma25,
        CampaignKind::ExtendCycle,
        CampaignKind::ThresholdProbe,
        CampaignKind::EngineAgreement,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CampaignKind::TheoremCheck => "theorem_check",
            CampaignKind::Lemma21 => "lemma21",
            CampaignKind::Lemma24 => "lemma24",
            CampaignKind::Lemma25 => "lemma25",
            CampaignKind::ExtendCycle => "extend_cycle",
            CampaignKind::ThresholdProbe => "threshold_probe",
            CampaignKind::EngineAgreement => "engine_agreement",
        }
    }
}

impl std::str::FromStr for CampaignKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown campaign kind {s:?}")))
    }
}

impl std::fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub kind: CampaignKind,
    pub n_min: usize,
    pub n_max: usize,
    pub samples: usize,
    pub density_min: f64,
    pub density_max: f64,
    pub seed: u64,
    pub toughness_cap: usize,
    pub dp_cap: usize,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
    /// Draws per instance before it is skipped, for kinds with a premise.
    pub attempts: usize,
    /// Toughness levels `extend_cycle` cycles through.
    pub t_values: Vec<usize>,
    /// `lemma21`: the largest `|X|` and `|Y|`, and the largest demand.
    pub x_max: usize,
    pub y_max: usize,
    pub f_max: usize,
}

impl CampaignConfig {
    /// Defaults sized for each kind's property.
    pub fn new(kind: CampaignKind) -> Self {
        let base = Self {
            kind,
            n_min: 4,
            n_max: 12,
            samples: 100,
            density_min: 0.2,
            density_max: 0.9,
            seed: 0,
            toughness_cap: DEFAULT_CAP,
            dp_cap: DEFAULT_DP_CAP,
            jobs: 0,
            attempts: 500,
            t_values: vec![1, 2],
            x_max: 7,
            y_max: 14,
            f_max: 3,
        };
        match kind {
            CampaignKind::TheoremCheck => Self { n_min: 6, n_max: 16, density_min: 0.3, density_max: 1.0, ..base },
            CampaignKind::Lemma24 => Self { n_min: 3, n_max: 10, density_min: 0.3, density_max: 1.0, ..base },
            CampaignKind::Lemma25 => Self { n_min: 5, n_max: 14, density_min: 0.6, density_max: 0.95, ..base },
            CampaignKind::ExtendCycle => Self { n_min: 5, n_max: 16, density_min: 0.4, density_max: 0.95, ..base },
            CampaignKind::ThresholdProbe => Self { n_min: 5, n_max: 14, density_min: 0.1, density_max: 0.9, ..base },
            CampaignKind::EngineAgreement => Self { n_min: 1, n_max: 14, density_min: 0.1, density_max: 0.9, ..base },
            CampaignKind::Lemma21 => base,
        }
    }

    /// Parses the `key = value` config format. `kind` is required; every
    /// other key overrides the kind's default.
    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Partial {
            kind: CampaignKind,
            n_min: Option<usize>,
            n_max: Option<usize>,
            samples: Option<usize>,
            density_min: Option<f64>,
            density_max: Option<f64>,
            seed: Option<u64>,
            toughness_cap: Option<usize>,
            dp_cap: Option<usize>,
            jobs: Option<usize>,
            attempts: Option<usize>,
            t_values: Option<Vec<usize>>,
            x_max: Option<usize>,
            y_max: Option<usize>,
            f_max: Option<usize>,
        }
        let p: Partial = toml::from_str(text).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        let mut c = Self::new(p.kind);
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = p.$f { c.$f = v; } )* };
        }
        take!(n_min, n_max, samples, density_min, density_max, seed, toughness_cap, dp_cap, jobs, attempts, t_values, x_max, y_max, f_max);
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.n_min > self.n_max {
            return bad("n_min exceeds n_max");
        }
        if !(0.0..=1.0).contains(&self.density_min) || !(self.density_min..=1.0).contains(&self.density_max) {
            return bad("densities must satisfy 0 <= density_min <= density_max <= 1");
        }
        if self.attempts == 0 {
            return bad("attempts must be positive");
        }
        if self.kind == CampaignKind::ExtendCycle && (self.t_values.is_empty() || self.t_values.contains(&0)) {
            return bad("t_values must be nonempty and positive");
        }
        if self.kind == CampaignKind::Lemma21 && (self.x_max == 0 || self.x_max > 20 || self.f_max == 0) {
            return bad("lemma21 needs 1 <= x_max <= 20 and f_max >= 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Violation,
    /// Over a cap, or no instance met the premise within `attempts` draws.
    Skipped,
}

/// One CSV row. Everything but `wall_ms` is a function of the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignRecord {
    pub index: usize,
    pub seed: u64,
    pub graph_hash: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    /// `p/q`, `inf`, or empty when not computed.
    pub toughness: String,
    pub p3p1_free: Option<bool>,
    pub p3_2p1_free: Option<bool>,
    /// Whether the hypothesis of the checked property held.
    pub premise: bool,
    pub verdict: String,
    pub oracle: String,
    pub branch: String,
    pub detail: String,
    pub attempts: usize,
    pub status: Status,
    pub wall_ms: f64,
}

impl CampaignRecord {
    /// The record as a CSV line minus the wall time.
    pub fn verdict_line(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        let mut r = self.clone();
        r.wall_ms = 0.0;
        w.serialize(&r).expect("records serialize");
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub kind: CampaignKind,
    pub seed: u64,
    pub samples: usize,
    pub records: usize,
    pub premise_held: usize,
    pub passed: usize,
    pub violations: usize,
    pub skipped: usize,
    pub violation_indices: Vec<usize>,
    /// `threshold_probe` and `theorem_check`: least toughness among
    /// nonhamiltonian instances, per order.
    pub min_nonhamiltonian_toughness: BTreeMap<usize, String>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone)]
pub struct CampaignOutput {
    pub records: Vec<CampaignRecord>,
    pub summary: CampaignSummary,
}

impl CampaignOutput {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.records {
            out.serialize(r).map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        }
        out.flush().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        Ok(())
    }

    /// Every record's [`CampaignRecord::verdict_line`], concatenated.
    pub fn verdict_columns(&self) -> String {
        self.records.iter().map(CampaignRecord::verdict_line).collect()
    }

    pub fn has_violations(&self) -> bool {
        self.summary.violations > 0
    }
}

pub fn graph_hash(g: &Graph) -> String {
    hex::encode(Sha256::digest(to_graph6(g).as_bytes()))
}

/// Toughness with the usual convention that a disconnected graph has
/// toughness 0.
fn toughness_of(g: &Graph, cap: usize) -> Result<Toughness> {
    match toughness_exact_with_cap(g, cap) {
        Ok(c) => Ok(c.toughness),
        Err(Error::Disconnected) => Ok(Toughness::Finite(int(0))),
        Err(e) => Err(e),
    }
}

struct Row {
    g: Option<Graph>,
    toughness: Option<Toughness>,
    premise: bool,
    verdict: String,
    oracle: String,
    branch: String,
    detail: String,
    attempts: usize,
    status: Status,
}

impl Row {
    fn new(g: Option<Graph>, attempts: usize) -> Self {
        Self {
            g,
            toughness: None,
            premise: false,
            verdict: String::new(),
            oracle: String::new(),
            branch: String::new(),
            detail: String::new(),
            attempts,
            status: Status::Pass,
        }
    }

    fn skipped(g: Option<Graph>, attempts: usize, why: impl Into<String>) -> Self {
        Self { verdict: "skipped".into(), detail: why.into(), status: Status::Skipped, ..Self::new(g, attempts) }
    }

    fn judge(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Violation };
        self
    }
}

fn skip_on_cap<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn draw_n(cfg: &CampaignConfig, rng: &mut InstanceRng) -> usize {
    rng.gen_range(cfg.n_min..=cfg.n_max)
}

fn draw_density(cfg: &CampaignConfig, rng: &mut InstanceRng) -> f64 {
    if cfg.density_max > cfg.density_min {
        rng.gen_range(cfg.density_min..cfg.density_max)
    } else {
        cfg.density_min
    }
}

/// Runs the campaign on `cfg.jobs` threads.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignOutput> {
    cfg.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let records: Vec<CampaignRecord> = pool.install(|| (0..cfg.samples).into_par_iter().map(|i| run_instance(cfg, i)).collect());
    let summary = summarize(cfg, &records, start.elapsed().as_secs_f64() * 1e3);
    Ok(CampaignOutput { records, summary })
}

fn summarize(cfg: &CampaignConfig, records: &[CampaignRecord], wall_ms: f64) -> CampaignSummary {
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let mut min_nonham: BTreeMap<usize, (Toughness, String)> = BTreeMap::new();
    if matches!(cfg.kind, CampaignKind::ThresholdProbe | CampaignKind::TheoremCheck) {
        for r in records.iter().filter(|r| r.status != Status::Skipped && r.oracle == "nonhamiltonian") {
            let t: Toughness = r.toughness.parse().expect("toughness strings round-trip");
            let e = min_nonham.entry(r.n).or_insert((t, r.toughness.clone()));
            if t < e.0 {
                *e = (t, r.toughness.clone());
            }
        }
    }
    CampaignSummary {
        kind: cfg.kind,
        seed: cfg.seed,
        samples: cfg.samples,
        records: records.len(),
        premise_held: records.iter().filter(|r| r.premise).count(),
        passed: count(Status::Pass),
        violations: count(Status::Violation),
        skipped: count(Status::Skipped),
        violation_indices: records.iter().filter(|r| r.status == Status::Violation).map(|r| r.index).collect(),
        min_nonhamiltonian_toughness: min_nonham.into_iter().map(|(n, (_, s))| (n, s)).collect(),
        wall_ms,
    }
}

/// A single instance; exposed so a failing row can be replayed alone.
pub fn run_instance(cfg: &CampaignConfig, index: usize) -> CampaignRecord {
    let seed = derive_seed(cfg.seed, index as u64);
    let mut rng = rng_from_seed(seed);
    let start = Instant::now();
    let row = match cfg.kind {
        CampaignKind::TheoremCheck => theorem_check(cfg, &mut rng),
        CampaignKind::Lemma21 => lemma21(cfg, &mut rng),
        CampaignKind::Lemma24 => lemma24(cfg, &mut rng),
        CampaignKind::Lemma25 => lemma25(cfg, &mut rng),
        CampaignKind::ExtendCycle => extend(cfg, index, &mut rng),
        CampaignKind::ThresholdProbe => threshold_probe(cfg, &mut rng),
        CampaignKind::EngineAgreement => engines(cfg, &mut rng),
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let (graph_hash, graph6, n, m, p3p1, p3_2p1) = match &row.g {
        Some(g) => {
            let free = cfg.kind != CampaignKind::Lemma21;
            (
                self::graph_hash(g),
                to_graph6(g),
                g.n(),
                g.m(),
                free.then(|| is_free(g, 1)),
                free.then(|| is_free(g, 2)),
            )
        }
        None => (String::new(), String::new(), 0, 0, None, None),
    };
    CampaignRecord {
        index,
        seed,
        graph_hash,
        graph6,
        n,
        m,
        toughness: row.toughness.map(|t| t.to_string()).unwrap_or_default(),
        p3p1_free: p3p1,
        p3_2p1_free: p3_2p1,
        premise: row.premise,
        verdict: row.verdict,
        oracle: row.oracle,
        branch: row.branch,
        detail: row.detail,
        attempts: row.attempts,
        status: row.status,
        wall_ms,
    }
}

fn free_instance(cfg: &CampaignConfig, k: usize, rng: &mut InstanceRng) -> Graph {
    let n = draw_n(cfg, rng);
    let d = draw_density(cfg, rng);
    gen_free(n, d, k, rng.gen())
}

fn hamiltonian(g: &Graph, cap: usize) -> Result<bool> {
    if g.n() < 3 {
        return Ok(false);
    }
    Ok(ham_cycle_with(g, Engine::Dp, cap)?.found)
}

fn theorem_check(cfg: &CampaignConfig, rng: &mut InstanceRng) -> Row {
    let g = free_instance(cfg, 2, rng);
    let seven = int(THEOREM_T as usize);
    let (tough, ham) = match skip_on_cap(toughness_of(&g, cfg.toughness_cap)).and_then(|t| {
        skip_on_cap(hamiltonian(&g, cfg.dp_cap)).map(|h| (t, h))
    }) {
        Ok(v) => v,
        Err(why) => return Row::skipped(Some(g), 1, why),
    };
    let mut row = Row::new(Some(g.clone()), 1);
    row.toughness = Some(tough);
    row.oracle = if ham { "hamiltonian" } else { "nonhamiltonian" }.into();
    row.premise = tough.is_at_least(seven) && g.n() >= 3;
    if !row.premise {
        row.verdict = "not_7_tough".into();
        let ok = ham || !tough.is_at_least(seven);
        return row.judge(ok);
    }
    let opts = ConstructOptions { toughness_cap: cfg.toughness_cap, dp_cap: cfg.dp_cap, ..Default::default() };
    match construct(&g, &opts) {
        Ok(trace) => {
            row.branch = trace.branch.map(|b| b.to_string()).unwrap_or_default();
            match (trace.cycle(), trace.failure()) {
                (Some(c), _) => {
                    row.verdict = "cycle".into();
                    let valid = is_hamiltonian_cycle(&g, c);
                    row.judge(valid && ham)
                }
                (None, Some(f)) => {
                    row.verdict = "failure_report".into();
                    row.detail = f.claim.clone();
                    row.judge(false)
                }
                (None, None) => unreachable!("a trace is a cycle or a failure"),
            }
        }
        Err(e @ Error::OverCap { .. }) => Row::skipped(Some(g), 1, e.to_string()),
        Err(e) => {
            row.verdict = "error".into();
            row.detail = e.to_string();
            row.judge(false)
        }
    }
}

fn threshold_probe(cfg: &CampaignConfig, rng: &mut InstanceRng) -> Row {
    let g = free_instance(cfg, 2, rng);
    let res = skip_on_cap(toughness_of(&g, cfg.toughness_cap))
        .and_then(|t| skip_on_cap(hamiltonian(&g, cfg.dp_cap)).map(|h| (t, h)));
    let (tough, ham) = match res {
        Ok(v) => v,
        Err(why) => return Row::skipped(Some(g), 1, why),
    };
    let mut row = Row::new(Some(g), 1);
    row.toughness = Some(tough);
    row.premise = !ham;
    row.oracle = if ham { "hamiltonian" } else { "nonhamiltonian" }.into();
    let seven = tough.is_at_least(int(THEOREM_T as usize));
    row.verdict = if seven { "tough_ge_7" } else { "tough_lt_7" }.into();
    row.judge(ham || !seven)
}

/// Exhaustive Hall check: the first violating subset in mask order.
fn hall_violation(bip: &Bipartite, f: &[usize]) -> Option<VertexSet> {
    (1u32..1 << bip.nx).find_map(|mask| {
        let sub: VertexSet = (0..bip.nx).filter(|x| mask >> x & 1 == 1).collect();
        let demand: usize = sub.iter().map(|x| f[x]).sum();
        (bip.neighborhood(&sub).len() < demand).then_some(sub)
    })
}

fn lemma21(cfg: &CampaignConfig, rng: &mut InstanceRng) -> Row {
    let nx = rng.gen_range(1..=cfg.x_max);
    let ny = rng.gen_range(0..=cfg.y_max);
    let p = draw_density(cfg, rng);
    let adj = random_bipartite(nx, ny, p, rng);
    let f: Vec<usize> = (0..nx).map(|_| rng.gen_range(1..=cfg.f_max)).collect();
    let g = Graph::from_fn(nx + ny, |a, b| a < nx && b >= nx && adj[a].contains(&(b - nx)));
    let bip = Bipartite::new(nx, ny, adj).expect("generated indices are in range");
    let mut row = Row::new(Some(g), 1);
    row.premise = true;
    row.detail = f.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
    let brute = hall_violation(&bip, &f);
    row.oracle = if brute.is_none() { "hall_holds" } else { "hall_fails" }.into();
    let ok = match find_star_subgraph(&bip, &f) {
        Ok(StarOutcome::Star(st)) => {
            row.verdict = "star".into();
            brute.is_none() && st.check(&bip, &f).is_ok()
        }
        Ok(StarOutcome::Violation(v)) => {
            row.verdict = "violation".into();
            brute.is_some() && v.check(&bip, &f)
        }
        Err(e) => {
            row.verdict = "error".into();
            row.detail = e.to_string();
            false
        }
    };
    row.judge(ok)
}

fn lemma24(cfg: &CampaignConfig, rng: &mut InstanceRng) -> Row {
    for attempt in 1..=cfg.attempts {
        let g = free_instance(cfg, 1, rng);
        if g.n() < 3 || !g.is_connected() {
            continue;
        }
        let tough = match toughness_exact_with_cap(&g, cfg.toughness_cap) {
            Ok(c) => c.toughness,
            Err(e) => return Row::skipped(Some(g), attempt, e.to_string()),
        };
        if !(tough > Toughness::Finite(int(1))) {
            continue;
        }
        let mut row = Row::new(Some(g.clone()), attempt);
        row.toughness = Some(tough);
        row.premise = true;
        return match ham_connected_with_cap(&g, cfg.dp_cap) {
            Ok(hc) => {
                row.verdict = if hc { "ham_connected" } else { "not_ham_connected" }.into();
                row.oracle = "all_pairs".into();
                row.judge(hc)
            }
            Err(e) => Row::skipped(Some(g), attempt, e.to_string()),
        };
    }
    Row::skipped(None, cfg.attempts, "no connected instance with toughness > 1")
}

fn lemma25(cfg: &CampaignConfig, rng: &mut InstanceRng) -> Row {
    for attempt in 1..=cfg.attempts {
        let n = draw_n(cfg, rng);
        let d = draw_density(cfg, rng);
        let g = erdos_renyi(n, d, rng);
        if !g.is_connected() || g.is_complete() {
            continue;
        }
        let tough = match toughness_exact_with_cap(&g, cfg.toughness_cap) {
            Ok(c) => c.toughness,
            Err(e) => return Row::skipped(Some(g), attempt, e.to_string()),
        };
        if !tough.is_at_least(int(2)) {
            continue;
        }
        // One cutset, uniform over all cutsets.
        let cuts: Vec<VertexSet> = (0u64..1 << n)
            .map(|m| (0..n).filter(|v| m >> v & 1 == 1).collect::<VertexSet>())
            .filter(|s| components(&g, s).len() >= 2)
            .collect();
        let s = cuts[rng.gen_range(0..cuts.len())].clone();
        let mut row = Row::new(Some(g.clone()), attempt);
        row.toughness = Some(tough);
        row.premise = true;
        row.detail = format!("S={:?}", s.to_vec());
        let ok = match generalized_matching(&g, &s, int(2)) {
            Ok(gm) => match gm.check(&g, &s) {
                Ok(()) => {
                    row.verdict = "valid".into();
                    true
                }
                Err(why) => {
                    row.verdict = "invalid".into();
                    row.detail = why;
                    false
                }
            },
            Err(e) => {
                row.verdict = match e {
                    Error::LemmaViolationCandidate(_) | Error::HallLemmaViolation(_) => "violation_candidate",
                    _ => "error",
                }
                .into();
                row.detail = e.to_string();
                false
            }
        };
        return row.judge(ok);
    }
    Row::skipped(None, cfg.attempts, "no 2-tough instance")
}

/// A cycle avoiding `x = perm[0]` on a prefix of the permutation, longest
/// first, on which `x` clears the threshold.
fn cycle_for(g: &Graph, rng: &mut InstanceRng, t: usize, cap: usize) -> Result<Option<(Cycle, usize)>> {
    let n = g.n();
    let perm = random_permutation(n, rng);
    let x = perm[0];
    for k in (3..n).rev() {
        let s: VertexSet = perm[1..=k].iter().copied().collect();
        if !exceeds_lemma_threshold(g.neighbors(x).intersection_len(&s), n, int(t)) {
            continue;
        }
        let (h, map) = g.induced(&s);
        if let Some(c) = ham_cycle_with(&h, Engine::Dp, cap)?.cycle() {
            let verts = c.verts().iter().map(|&i| map[i]).collect();
            return Ok(Some((Cycle::new(g, verts)?, x)));
        }
    }
    Ok(None)
}

fn extend(cfg: &CampaignConfig, index: usize, rng: &mut InstanceRng) -> Row {
    let t = cfg.t_values[index % cfg.t_values.len()];
    for attempt in 1..=cfg.attempts {
        let n = draw_n(cfg, rng);
        let d = draw_density(cfg, rng);
        let g = erdos_renyi(n, d, rng);
        if n < 4 || !g.is_connected() {
            continue;
        }
        let tough = match toughness_exact_with_cap(&g, cfg.toughness_cap) {
            Ok(c) => c.toughness,
            Err(e) => return Row::skipped(Some(g), attempt, e.to_string()),
        };
        if !tough.is_at_least(int(t)) {
            continue;
        }
        let (c, x) = match cycle_for(&g, rng, t, cfg.dp_cap) {
            Ok(Some(v)) => v,
            Ok(None) => continue,
            Err(e) => return Row::skipped(Some(g), attempt, e.to_string()),
        };
        let mut row = Row::new(Some(g.clone()), attempt);
        row.toughness = Some(tough);
        row.premise = true;
        row.detail = format!("t={t} x={x} C={:?}", c.verts());
        let mut want = c.vertex_set();
        want.insert(x);
        let ok = match extend_cycle_with_cap(&g, &c, x, int(t), cfg.dp_cap) {
            Ok(out) => {
                row.verdict = "extended".into();
                out.vertex_set() == want && out.len() == want.len()
            }
            Err(e @ Error::OverCap { .. }) => return Row::skipped(Some(g), attempt, e.to_string()),
            Err(e) => {
                row.verdict = "error".into();
                row.detail = format!("{}; {e}", row.detail);
                false
            }
        };
        return row.judge(ok);
    }
    Row::skipped(None, cfg.attempts, format!("no {t}-tough instance with a qualifying cycle"))
}

fn engines(cfg: &CampaignConfig, rng: &mut InstanceRng) -> Row {
    let n = draw_n(cfg, rng);
    let d = draw_density(cfg, rng);
    let g = erdos_renyi(n, d, rng);
    let dp = ham_cycle_with(&g, Engine::Dp, cfg.dp_cap);
    let bt = ham_cycle_with(&g, Engine::Backtrack, cfg.dp_cap);
    let (dp, bt) = match (dp, bt) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Row::skipped(Some(g), 1, e.to_string()),
    };
    let mut row = Row::new(Some(g.clone()), 1);
    row.premise = true;
    let word = |f: bool| if f { "hamiltonian" } else { "nonhamiltonian" };
    row.verdict = word(dp.found).into();
    row.oracle = word(bt.found).into();
    let witnesses_ok = [&dp, &bt].iter().all(|r| r.cycle().is_none_or(|c| is_hamiltonian_cycle(&g, c.verts())));
    row.judge(dp.found == bt.found && witnesses_ok)
}
