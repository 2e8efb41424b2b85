//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always shown.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hamtough::campaign::{run_campaign, CampaignConfig, CampaignKind, CampaignOutput, Status};
use hamtough::constructor::{construct, Branch, ConstructOptions};
use hamtough::fixtures::figure1;
use hamtough::graph::is_hamiltonian_cycle;
use hamtough::hamiltonicity::ham_cycle;
use hamtough::toughness::{int, toughness_exact, Toughness};
use hamtough::Graph;

struct Verdict {
    id: u8,
    ok: bool,
    note: String,
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn criterion1() -> Verdict {
    let start = Instant::now();
    let g = figure1();
    let t = toughness_exact(&g).map(|c| c.toughness);
    let ham = ham_cycle(&g).map(|r| r.found);
    let el = start.elapsed();
    let ok = t == Ok(Toughness::Finite(int(1))) && ham == Ok(false) && el < Duration::from_secs(1);
    let t = t.map(|t| t.to_string()).unwrap_or_else(|e| e.to_string());
    Verdict { id: 1, ok, note: format!("figure1: n={} m={} toughness={t} hamiltonian={ham:?} in {}", g.n(), g.m(), secs(el)) }
}

fn criterion2() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 3..=12 {
        let g = Graph::complete(n);
        let inf = toughness_exact(&g).map(|c| c.toughness) == Ok(Toughness::Infinite);
        let built = construct(&g, &ConstructOptions::default())
            .map(|t| t.branch == Some(Branch::Complete) && t.cycle().is_some_and(|c| is_hamiltonian_cycle(&g, c)));
        if !inf || built != Ok(true) {
            bad.push(n);
        }
    }
    let el = start.elapsed();
    Verdict {
        id: 2,
        ok: bad.is_empty() && el < Duration::from_secs(1),
        note: format!("K_3..K_12: failing orders {bad:?} in {}", secs(el)),
    }
}

/// The campaigns behind criteria 3–8, seeded.
fn configs() -> Vec<(u8, CampaignConfig, usize, Duration)> {
    let c = |kind, samples, n_min, n_max, d_min, d_max, seed| CampaignConfig {
        samples,
        n_min,
        n_max,
        density_min: d_min,
        density_max: d_max,
        seed,
        ..CampaignConfig::new(kind)
    };
    let min = |m: u64| Duration::from_secs(60 * m);
    vec![
        (3, CampaignConfig { x_max: 7, y_max: 14, ..c(CampaignKind::Lemma21, 1000, 1, 1, 0.1, 0.9, 2103) }, 1000, Duration::from_secs(30)),
        (4, c(CampaignKind::Lemma25, 220, 5, 14, 0.6, 0.95, 2105), 200, min(5)),
        (5, c(CampaignKind::Lemma24, 320, 3, 10, 0.3, 1.0, 2104), 300, min(10)),
        (6, CampaignConfig { t_values: vec![1, 2], ..c(CampaignKind::ExtendCycle, 520, 5, 16, 0.4, 0.95, 2103) }, 500, min(5)),
        (7, c(CampaignKind::TheoremCheck, 800, 16, 18, 0.96, 1.0, 2107), 500, min(15)),
        (7, c(CampaignKind::ThresholdProbe, 600, 5, 18, 0.1, 1.0, 2117), 0, min(15)),
        (8, c(CampaignKind::EngineAgreement, 500, 1, 14, 0.1, 0.9, 2108), 500, min(2)),
    ]
}

fn judge(id: u8, cfg: &CampaignConfig, need: usize, limit: Duration, out: &CampaignOutput, el: Duration) -> Verdict {
    let s = &out.summary;
    let held = out.records.iter().filter(|r| r.premise && r.status == Status::Pass).count();
    let mut ok = s.violations == 0 && held >= need && el < limit && s.records == cfg.samples;
    let mut extra = String::new();
    match cfg.kind {
        CampaignKind::TheoremCheck => {
            let reports = out.records.iter().filter(|r| r.verdict == "failure_report").count();
            ok &= reports == 0;
            extra = format!(", failure reports {reports}");
        }
        CampaignKind::ThresholdProbe => {
            let nonham = out.records.iter().filter(|r| r.oracle == "nonhamiltonian").count();
            extra = format!(", nonhamiltonian {nonham}, least toughness per n {:?}", s.min_nonhamiltonian_toughness);
        }
        CampaignKind::Lemma25 => {
            let cands = out.records.iter().filter(|r| r.verdict == "violation_candidate").count();
            ok &= cands == 0;
            extra = format!(", violation candidates {cands}");
        }
        _ => {}
    }
    Verdict {
        id,
        ok,
        note: format!(
            "{}: {} records, {} with premise passing (need {need}), {} violations, {} skipped{extra} in {}",
            cfg.kind,
            s.records,
            held,
            s.violations,
            s.skipped,
            secs(el)
        ),
    }
}

fn main() -> ExitCode {
    let mut verdicts = vec![criterion1(), criterion2()];
    let mut first_runs = Vec::new();
    let mut grouped: Vec<Verdict> = Vec::new();
    for (id, cfg, need, limit) in configs() {
        let start = Instant::now();
        let out = run_campaign(&cfg).expect("valid config");
        let v = judge(id, &cfg, need, limit, &out, start.elapsed());
        match grouped.last_mut() {
            Some(prev) if prev.id == id => {
                prev.ok &= v.ok;
                prev.note = format!("{}; {}", prev.note, v.note);
            }
            _ => grouped.push(v),
        }
        first_runs.push((cfg, out.verdict_columns()));
    }
    verdicts.extend(grouped);

    let mut diverged = Vec::new();
    let mut bytes = 0;
    for (cfg, cols) in &first_runs {
        let again = run_campaign(cfg).expect("valid config").verdict_columns();
        bytes += cols.len();
        if &again != cols {
            diverged.push(cfg.kind.as_str());
        }
    }
    verdicts.push(Verdict {
        id: 9,
        ok: diverged.is_empty(),
        note: format!("reran {} campaigns, {bytes} bytes of verdict columns, diverged {diverged:?}", first_runs.len()),
    });

    for v in &verdicts {
        println!("{} criterion {}: {}", if v.ok { "PASS" } else { "FAIL" }, v.id, v.note);
    }
    if verdicts.iter().all(|v| v.ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
