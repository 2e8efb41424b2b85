use hamtough::campaign::{graph_hash, run_campaign, run_instance, CampaignConfig, CampaignKind, Status};
use hamtough::io::parse_graph6;
use hamtough::toughness::toughness_exact;
use hamtough::{Graph, Toughness};

fn small(kind: CampaignKind, samples: usize, seed: u64) -> CampaignConfig {
    CampaignConfig { samples, seed, ..CampaignConfig::new(kind) }
}

#[test]
fn config_parses_key_value_text() {
    let cfg = CampaignConfig::from_toml("kind = \"lemma25\"\nsamples = 7\nseed = 42\ndensity_max = 0.8\n").unwrap();
    assert_eq!(cfg.kind, CampaignKind::Lemma25);
    assert_eq!((cfg.samples, cfg.seed, cfg.density_max), (7, 42, 0.8));
    assert_eq!(cfg.n_max, CampaignConfig::new(CampaignKind::Lemma25).n_max);

    assert!(CampaignConfig::from_toml("samples = 3").is_err(), "kind is required");
    assert!(CampaignConfig::from_toml("kind = \"lemma25\"\nbogus = 1").is_err());
    assert!(CampaignConfig::from_toml("kind = \"nope\"").is_err());
    assert!(CampaignConfig::from_toml("kind = \"lemma24\"\nn_min = 9\nn_max = 4").is_err());
    for kind in CampaignKind::ALL {
        assert_eq!(kind.as_str().parse::<CampaignKind>().unwrap(), kind);
    }
}

#[test]
fn summary_counts_match_rows() {
    for kind in CampaignKind::ALL {
        let samples = if kind == CampaignKind::TheoremCheck { 6 } else { 25 };
        let out = run_campaign(&small(kind, samples, 3)).unwrap();
        let s = &out.summary;
        assert_eq!(s.records, out.records.len());
        assert_eq!(s.records, samples);
        assert_eq!(s.passed + s.violations + s.skipped, s.records, "{kind}");
        assert_eq!(s.violations, 0, "{kind}: {:?}", s.violation_indices);
        assert!(out.records.iter().enumerate().all(|(i, r)| r.index == i));
    }
}

#[test]
fn records_are_independent_of_thread_count_and_replayable() {
    let mut cfg = small(CampaignKind::ExtendCycle, 30, 11);
    cfg.jobs = 1;
    let one = run_campaign(&cfg).unwrap();
    cfg.jobs = 3;
    let three = run_campaign(&cfg).unwrap();
    assert_eq!(one.verdict_columns(), three.verdict_columns());
    assert_eq!(run_instance(&cfg, 17).verdict_line(), one.records[17].verdict_line());
    cfg.seed = 12;
    assert_ne!(run_campaign(&cfg).unwrap().verdict_columns(), one.verdict_columns());
}

#[test]
fn rows_describe_their_graphs() {
    let out = run_campaign(&small(CampaignKind::ThresholdProbe, 20, 5)).unwrap();
    for r in &out.records {
        let g: Graph = parse_graph6(&r.graph6).unwrap();
        assert_eq!((g.n(), g.m()), (r.n, r.m));
        assert_eq!(graph_hash(&g), r.graph_hash);
        assert_eq!(r.p3_2p1_free, Some(true));
        let want = match toughness_exact(&g) {
            Ok(c) => c.toughness,
            Err(_) => Toughness::Finite(hamtough::toughness::int(0)),
        };
        assert_eq!(r.toughness, want.to_string());
        assert_eq!(r.status, Status::Pass);
    }
}

#[test]
fn csv_has_a_header_and_one_line_per_record() {
    let out = run_campaign(&small(CampaignKind::Lemma21, 12, 9)).unwrap();
    let mut buf = Vec::new();
    out.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("index,seed,graph_hash,graph6,n,m,toughness,"));
    assert_eq!(lines.count(), 12);
    let json = serde_json::to_string(&out.summary).unwrap();
    assert!(json.contains("\"skipped\":0"));
}

#[test]
fn caps_skip_instead_of_failing() {
    let mut cfg = small(CampaignKind::ThresholdProbe, 10, 2);
    cfg.n_min = 12;
    cfg.n_max = 12;
    cfg.toughness_cap = 10;
    let out = run_campaign(&cfg).unwrap();
    assert_eq!(out.summary.skipped, 10);
    assert!(!out.has_violations());
}
