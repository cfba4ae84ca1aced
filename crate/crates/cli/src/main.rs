//! `oturan`: command-line front end for the oriented Turán toolkit.
//!
//! Exit codes: 0 success, 1 negative result, 2 invalid input, 3 size cap
//! exceeded, 4 search budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use oriented_turan_core::containment::{all_orientations_contain, all_tournaments_contain, UniversalCheck};
use oriented_turan_core::digraph::{decode, decode_large, decode_undirected, encode, encode_large};
use oriented_turan_core::extremal::{
    build_construction, oracle_exo, verify_against_formula, Budget, Construction, ExtremalRecord,
};
use oriented_turan_core::homomorphism::{compressibility, CompressibilityResult};
use oriented_turan_core::regularize::{dense_bipartite_host, faks_pipeline, PipelineConfig};
use oriented_turan_core::{BipartiteDigraph, Error, OrientedGraph, PatternSpec};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "oturan",
    version,
    about = "Oriented Turán numbers: oracle, constructions and embeddings"
)]
struct Cli {
    /// Worker threads for the oracle and the universal checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compressibility z(F) of a pattern file.
    Compress { pattern_file: PathBuf },
    /// Exhaustive oriented Turán number exo(n, F).
    Exo(ExoArgs),
    /// Build a lower-bound construction and print it as .og.
    Construct(ConstructArgs),
    /// Find a copy of an antidirected pattern in a host via the embedding pipeline.
    Embed(EmbedArgs),
    /// Write a random dense antidirected host as .og.
    RandomHost {
        #[arg(long)]
        side: usize,
        #[arg(long, default_value_t = 0.9)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Check that every tournament or every orientation contains a pattern.
    CheckHypothesis {
        #[command(subcommand)]
        which: Hypothesis,
    },
}

#[derive(Args)]
struct PatternArg {
    /// Named pattern, e.g. dpath4, c3, ttour3, star:1,2, m2, adpath4, oc4,
    /// prop23, prop23m, p3plusarc, thm32.
    #[arg(long, conflicts_with = "pattern_file", required_unless_present = "pattern_file")]
    pattern: Option<String>,
    /// Pattern as an .og file.
    #[arg(long)]
    pattern_file: Option<PathBuf>,
}

impl PatternArg {
    fn spec(&self) -> Result<PatternSpec, Error> {
        match (&self.pattern, &self.pattern_file) {
            (Some(name), _) => name.parse(),
            (None, Some(path)) => Ok(PatternSpec::Custom {
                graph: decode(&read(path)?)?,
            }),
            (None, None) => Err(Error::BadParams("a pattern is required".into())),
        }
    }
}

#[derive(Args)]
struct ExoArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    pattern: PatternArg,
    /// Compare against the closed form (and the paired construction).
    #[arg(long)]
    verify_formula: bool,
    /// With --verify-formula, report every order from this one up to n.
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    max_seconds: Option<f64>,
}

#[derive(Args)]
struct ConstructArgs {
    /// turan, cyclepower, star, thm32, prop26 or prop27.
    name: String,
    #[arg(long)]
    n: usize,
    /// Number of parts for turan.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Tournament file whose arcs orient the parts of turan.
    #[arg(long)]
    base: Option<PathBuf>,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    host: PathBuf,
    /// Antidirected pattern as an .og file.
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    seed: u64,
    /// Bucket parameter of the almost-regular stage (needed for r = 1).
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    max_retries: Option<usize>,
}

#[derive(Subcommand)]
enum Hypothesis {
    /// Every k-vertex tournament contains the pattern.
    AllTournaments {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Every orientation of an undirected host contains the pattern.
    AllOrientations {
        #[arg(long)]
        host: PathBuf,
        #[command(flatten)]
        pattern: PatternArg,
    },
}

/// What a command produced: text for people, JSON for machines.
struct Output {
    text: String,
    json: serde_json::Value,
    negative: bool,
}

impl Output {
    fn new<T: Serialize>(text: String, value: &T) -> Result<Self, Error> {
        Ok(Self {
            text,
            json: to_json(value)?,
            negative: false,
        })
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<serde_json::Value, Error> {
    serde_json::to_value(value).map_err(|e| Error::InvariantViolation(e.to_string()))
}

fn read(path: &Path) -> Result<String, Error> {
    Ok(fs::read_to_string(path)?)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge { .. } => 3,
        Error::BudgetExceeded { .. } => 4,
        Error::Stage { source, .. } => exit_code(source),
        _ => 2,
    }
}

fn compress(path: &Path) -> Result<Output, Error> {
    let f = decode(&read(path)?)?;
    let z = compressibility(&f)?;
    let text = match &z {
        CompressibilityResult::Finite { k, witness } => {
            let mut s = format!("z = {k}\n");
            if *k > 2 {
                s.push_str(&format!("{}-vertex tournament with no homomorphic image:\n", k - 1));
                s.push_str(&encode(witness));
            }
            s
        }
        CompressibilityResult::Infinite => "z = infinite\n".to_string(),
    };
    Output::new(text, &z)
}

fn record_text(r: &ExtremalRecord) -> String {
    let formula = r.formula_value.map_or("-".to_string(), |v| v.to_string());
    format!(
        "{:>3}  {:<12}  {:>5}  {:>7}  {}\n",
        r.n,
        r.pattern.name(),
        r.value,
        formula,
        r.witness_code
    )
}

fn exo(args: &ExoArgs) -> Result<Output, Error> {
    let spec = args.pattern.spec()?;
    let budget = Budget {
        max_nodes: args.max_nodes,
        max_time: args.max_seconds.map(Duration::from_secs_f64),
    };
    if args.verify_formula {
        let from = args.from.unwrap_or(args.n);
        if from > args.n {
            return Err(Error::BadParams(format!("--from {from} is above --n {}", args.n)));
        }
        let report = verify_against_formula(&spec, from..=args.n, &budget)?;
        return Output::new(report.to_text(), &report);
    }
    let record = oracle_exo(args.n, &spec, &budget)?;
    let header = format!(
        "{:>3}  {:<12}  {:>5}  {:>7}  witness\n",
        "n", "pattern", "exo", "formula"
    );
    let text = format!("{header}{}{}", record_text(&record), encode(&record.witness));
    Output::new(text, &record)
}

fn construct(args: &ConstructArgs) -> Result<Output, Error> {
    let need =
        |v: Option<usize>, flag: &str| v.ok_or_else(|| Error::BadParams(format!("{} needs --{flag}", args.name)));
    let c = match args.name.as_str() {
        "turan" => Construction::Turan {
            r: need(args.r, "r")?,
            base: args
                .base
                .as_deref()
                .map(|p| read(p).and_then(|t| decode(&t)))
                .transpose()?,
        },
        "cyclepower" => Construction::CyclePower { q: need(args.q, "q")? },
        "star" => Construction::Star {
            p: need(args.p, "p")?,
            q: need(args.q, "q")?,
        },
        "thm32" => Construction::Thm32,
        "prop26" => Construction::Prop26,
        "prop27" => Construction::Prop27,
        other => return Err(Error::BadParams(format!("unknown construction {other:?}"))),
    };
    let g = build_construction(&c, args.n)?;
    #[derive(Serialize)]
    struct Built<'a> {
        construction: &'a Construction,
        n: usize,
        arcs: usize,
        graph: &'a OrientedGraph,
    }
    let built = Built {
        construction: &c,
        n: args.n,
        arcs: g.arc_count(),
        graph: &g,
    };
    Output::new(encode(&g), &built)
}

fn embed(args: &EmbedArgs) -> Result<Output, Error> {
    let host = decode_large(&read(&args.host)?)?;
    let pattern = BipartiteDigraph::from_antidirected(&decode(&read(&args.pattern)?)?)?;
    let mut cfg = PipelineConfig::new(args.r, args.seed);
    cfg.t_override = args.t;
    if let Some(k) = args.max_retries {
        cfg.max_retries = k;
    }
    let report = faks_pipeline(&host, &pattern, &cfg)?;
    let json = to_json(&report)?;
    let text = serde_json::to_string_pretty(&json).map_err(|e| Error::InvariantViolation(e.to_string()))? + "\n";
    Ok(Output {
        text,
        json,
        negative: report.embedding.is_none(),
    })
}

fn universal(check: UniversalCheck) -> Result<Output, Error> {
    let mut text = format!("{}\n", check.holds);
    if let Some(g) = &check.counterexample {
        text.push_str("counterexample:\n");
        text.push_str(&encode(g));
    }
    let mut out = Output::new(text, &check)?;
    out.negative = !check.holds;
    Ok(out)
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Compress { pattern_file } => compress(pattern_file),
        Command::Exo(args) => exo(args),
        Command::Construct(args) => construct(args),
        Command::Embed(args) => embed(args),
        Command::RandomHost { side, density, seed } => {
            if !(0.0..=1.0).contains(density) {
                return Err(Error::BadParams(format!("density {density} is not in [0, 1]")));
            }
            let g = dense_bipartite_host(*side, *density, *seed)?;
            Ok(Output {
                text: encode_large(&g),
                json: serde_json::Value::String(encode_large(&g)),
                negative: false,
            })
        }
        Command::CheckHypothesis { which } => match which {
            Hypothesis::AllTournaments { k, pattern } => {
                universal(all_tournaments_contain(*k, &pattern.spec()?.expand()?)?)
            }
            Hypothesis::AllOrientations { host, pattern } => {
                let host = decode_undirected(&read(host)?)?;
                universal(all_orientations_contain(&host, &pattern.spec()?.expand()?)?)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
    {
        eprintln!("oturan: {e}");
        return ExitCode::from(2);
    }
    let embed_cmd = matches!(cli.command, Command::Embed(_));
    match run(&cli) {
        Ok(out) => {
            if cli.json && !embed_cmd {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            if out.negative {
                if embed_cmd {
                    eprintln!("oturan: no embedding found");
                }
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if let Error::BudgetExceeded { best } = &e {
                eprintln!("oturan: budget exhausted; best lower bound exo >= {}", best.value);
                if cli.json {
                    if let Ok(v) = to_json(best.as_ref()) {
                        println!("{v}");
                    }
                } else {
                    print!("{}{}", record_text(best), encode(&best.witness));
                }
            } else {
                eprintln!("oturan: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
