use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hamtough::campaign::{run_campaign, CampaignConfig, CampaignKind};
use hamtough::constructor::{construct, ConstructOptions};
use hamtough::hamiltonicity::{ham_connected_with_cap, ham_cycle_with, Engine, DEFAULT_DP_CAP, MAX_DP_CAP};
use hamtough::io::{parse_edge_list, parse_graph6, to_graph6, write_edge_list};
use hamtough::matching::generalized_matching;
use hamtough::structure::{find_pattern, gen_free};
use hamtough::toughness::{is_t_tough_with_cap, parse_rational, toughness_exact_with_cap, DEFAULT_CAP};
use hamtough::{Error, Graph, VertexSet};
use serde_json::{json, Value};

const EXIT_FAILURE_REPORT: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "hamtough", version, about = "Toughness, Hamiltonicity and cycle construction for (P3 ∪ 2P1)-free graphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Graph format for input files and generated output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
    /// Seed for `gen` and `campaign` [default: 0, or the config's].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest order for exact toughness [default: 24].
    #[arg(long, global = true, env = "HAMTOUGH_CAP")]
    cap: Option<usize>,
    /// Largest order for the Held–Karp engine [default: 22].
    #[arg(long, global = true, env = "HAMTOUGH_DP_CAP")]
    dp_cap: Option<usize>,
    /// Worker threads for campaigns; 0 uses every core.
    #[arg(long, global = true, env = "HAMTOUGH_JOBS")]
    jobs: Option<usize>,
    /// Write the full proof trace (construct) or campaign summary as JSON.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Dp,
    Backtrack,
    Both,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search for an induced P3 ∪ kP1.
    FreeCheck {
        input: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        k: u8,
    },
    /// Exact toughness with a minimum witness cutset.
    Toughness { input: PathBuf },
    /// Decide whether the graph is t-tough, t given as p/q.
    ToughDecide {
        input: PathBuf,
        #[arg(long)]
        t: String,
    },
    /// Hamiltonian cycle search.
    Hamilton {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Dp)]
        engine: EngineArg,
    },
    /// Whether every pair of vertices is joined by a Hamiltonian path.
    HamConnected { input: PathBuf },
    /// Generalized K_{1,2s}-matching for a cutset, s = ⌊t/2⌋.
    Matching {
        input: PathBuf,
        /// Cutset vertices, comma separated.
        #[arg(long, value_delimiter = ',')]
        cut: Vec<usize>,
        #[arg(long, default_value = "2")]
        t: String,
    },
    /// Run the self-checking cycle constructor.
    Construct {
        input: PathBuf,
        /// Verify 7-toughness exactly first; a failure is then a violation.
        #[arg(long)]
        assert_tough: bool,
        /// Skip the complete, minimum-degree and degree-sum branches.
        #[arg(long)]
        skip_guards: bool,
        /// Nonadjacent pair for the partition, as u,v.
        #[arg(long, value_delimiter = ',')]
        pair: Option<Vec<usize>>,
    },
    /// Generate random (P3 ∪ kP1)-free graphs.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        k: u8,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Run a seeded campaign; rows go to --out as CSV, the summary to --trace or stderr.
    Campaign(CampaignArgs),
    /// List the named fixtures, or print one.
    Fixtures { name: Option<String> },
}

#[derive(Args)]
struct CampaignArgs {
    /// Config file of `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    density_min: Option<f64>,
    #[arg(long)]
    density_max: Option<f64>,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path, format: Format) -> Result<Graph> {
    let text = read_input(path)?;
    Ok(match format {
        Format::Edgelist => parse_edge_list(&text)?,
        Format::Graph6 => parse_graph6(text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or(""))?,
    })
}

fn render(g: &Graph, format: Format) -> String {
    match format {
        Format::Edgelist => write_edge_list(g),
        Format::Graph6 => format!("{}\n", to_graph6(g)),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).map_err(Into::into),
    }
}

fn emit_json(out: &Option<PathBuf>, v: &Value) -> Result<()> {
    emit(out, &format!("{}\n", serde_json::to_string_pretty(v)?))
}

fn set_of(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    let cap = g.cap.unwrap_or(DEFAULT_CAP);
    let dp_cap = g.dp_cap.unwrap_or(DEFAULT_DP_CAP);
    if dp_cap > MAX_DP_CAP {
        bail!("--dp-cap {dp_cap} exceeds the maximum of {MAX_DP_CAP}");
    }
    match cli.cmd {
        Cmd::FreeCheck { input, k } => {
            let graph = load(&input, g.format)?;
            let w = find_pattern(&graph, k as usize);
            emit_json(&g.out, &json!({ "free": w.is_none(), "k": k, "witness": w }))?;
        }
        Cmd::Toughness { input } => {
            let graph = load(&input, g.format)?;
            let cert = toughness_exact_with_cap(&graph, cap)?;
            let c = hamtough::components(&graph, &cert.witness).len();
            emit_json(&g.out, &json!({ "toughness": cert.toughness, "witness": cert.witness, "components": c }))?;
        }
        Cmd::ToughDecide { input, t } => {
            let graph = load(&input, g.format)?;
            let t = parse_rational(&t)?;
            let d = is_t_tough_with_cap(&graph, t, cap)?;
            emit_json(&g.out, &json!({ "t": hamtough::toughness::format_rational(&t), "tough": d.tough, "counterexample": d.counterexample }))?;
        }
        Cmd::Hamilton { input, engine } => {
            let graph = load(&input, g.format)?;
            let engines: &[Engine] = match engine {
                EngineArg::Dp => &[Engine::Dp],
                EngineArg::Backtrack => &[Engine::Backtrack],
                EngineArg::Both => &[Engine::Dp, Engine::Backtrack],
            };
            let results = engines.iter().map(|&e| ham_cycle_with(&graph, e, dp_cap)).collect::<Result<Vec<_>, _>>()?;
            let agree = results.windows(2).all(|w| w[0].found == w[1].found);
            let cycle = results.iter().find_map(|r| r.cycle().map(|c| c.verts().to_vec()));
            emit_json(&g.out, &json!({ "hamiltonian": results[0].found, "cycle": cycle, "engines_agree": agree }))?;
            if !agree {
                return Ok(EXIT_VIOLATION);
            }
        }
        Cmd::HamConnected { input } => {
            let graph = load(&input, g.format)?;
            emit_json(&g.out, &json!({ "hamiltonian_connected": ham_connected_with_cap(&graph, dp_cap)? }))?;
        }
        Cmd::Matching { input, cut, t } => {
            let graph = load(&input, g.format)?;
            let s = set_of(&cut);
            match generalized_matching(&graph, &s, parse_rational(&t)?) {
                Ok(gm) => {
                    let valid = gm.check(&graph, &s);
                    let ok = valid.is_ok();
                    emit_json(&g.out, &json!({ "matching": gm, "valid": ok, "problem": valid.err() }))?;
                    if !ok {
                        return Ok(EXIT_VIOLATION);
                    }
                }
                Err(e @ (Error::LemmaViolationCandidate(_) | Error::HallLemmaViolation(_))) => {
                    emit_json(&g.out, &json!({ "violation_candidate": e.to_string() }))?;
                    return Ok(EXIT_VIOLATION);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Cmd::Construct { input, assert_tough, skip_guards, pair } => {
            let graph = load(&input, g.format)?;
            if pair.as_ref().is_some_and(|p| p.len() != 2) {
                bail!("--pair takes exactly two vertices, as u,v");
            }
            let opts = ConstructOptions {
                assert_toughness: assert_tough,
                skip_guards,
                pair: pair.map(|p| (p[0], p[1])),
                toughness_cap: cap,
                dp_cap,
            };
            let trace = construct(&graph, &opts)?;
            if let Some(path) = &g.trace {
                fs::write(path, serde_json::to_string_pretty(&trace)?)?;
            }
            emit_json(
                &g.out,
                &json!({ "branch": trace.branch, "cycle": trace.cycle(), "failure": trace.failure(), "toughness": trace.toughness }),
            )?;
            if trace.is_violation_candidate() {
                return Ok(EXIT_VIOLATION);
            }
            if trace.failure().is_some() {
                return Ok(EXIT_FAILURE_REPORT);
            }
        }
        Cmd::Gen { n, density, k, count } => {
            let text: Vec<String> = (0..count)
                .map(|i| render(&gen_free(n, density, k as usize, hamtough::generate::derive_seed(g.seed.unwrap_or(0), i as u64)), g.format))
                .collect();
            emit(&g.out, &text.join(if g.format == Format::Edgelist { "\n" } else { "" }))?;
        }
        Cmd::Campaign(args) => {
            let mut cfg = match (&args.config, &args.kind) {
                (Some(path), _) => CampaignConfig::from_toml(&read_input(path)?)?,
                (None, Some(kind)) => CampaignConfig::new(kind.parse::<CampaignKind>()?),
                (None, None) => bail!("campaign needs --config or --kind"),
            };
            if let Some(kind) = &args.kind {
                cfg.kind = kind.parse()?;
            }
            macro_rules! over {
                ($($f:ident),*) => { $( if let Some(v) = args.$f { cfg.$f = v; } )* };
            }
            over!(samples, n_min, n_max, density_min, density_max);
            macro_rules! global {
                ($($f:ident => $to:ident),*) => { $( if let Some(v) = g.$f { cfg.$to = v; } )* };
            }
            global!(seed => seed, jobs => jobs, cap => toughness_cap, dp_cap => dp_cap);
            let out = run_campaign(&cfg)?;
            let mut csv = Vec::new();
            out.write_csv(&mut csv)?;
            emit(&g.out, std::str::from_utf8(&csv)?)?;
            let summary = serde_json::to_string_pretty(&out.summary)?;
            match &g.trace {
                Some(p) => fs::write(p, summary)?,
                None => eprintln!("{summary}"),
            }
            if out.has_violations() {
                return Ok(EXIT_VIOLATION);
            }
        }
        Cmd::Fixtures { name } => match name {
            Some(name) => {
                let f = hamtough::fixtures::fixture(&name).with_context(|| format!("no fixture named {name:?}"))?;
                emit(&g.out, &render(&f.graph, g.format))?;
            }
            None => {
                let list: Vec<Value> = hamtough::fixtures::fixtures()
                    .into_iter()
                    .map(|f| {
                        let construct = f.construct.map(|c| json!({ "pair": [c.pair.0, c.pair.1], "branch": c.branch, "cycle": c.cycle }));
                        json!({ "name": f.name, "n": f.graph.n(), "m": f.graph.m(), "description": f.description, "construct": construct })
                    })
                    .collect();
                emit_json(&g.out, &Value::Array(list))?;
            }
        },
    }
    Ok(0)
}

fn main() -> ExitCode {
    // Exit code 2 means a failure report, so usage errors map to 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
