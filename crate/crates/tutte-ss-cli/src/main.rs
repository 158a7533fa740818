//! `tutte-ss`: exact Tutte polynomials of the Sierpinski and
//! Hanoi-Towers graph families, with verification and benchmarking.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 verification
//! failure, 3 resource cap exceeded.

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use tutte_ss::evaluations::{self, IsingValue};
use tutte_ss::exactmath::Rational;
use tutte_ss::graphs::{build_contracted, build_hanoi, build_sierpinski};
use tutte_ss::{recursion, Error, Family, DEFAULT_TERM_CAP};

use tutte_ss_cli::bench::{self, BenchMode};
use tutte_ss_cli::{json, verify};

#[derive(Parser)]
#[command(
    name = "tutte-ss",
    version,
    about = "Exact Tutte polynomials of Sierpinski and Hanoi-Towers graphs"
)]
struct Cli {
    /// Worker threads for the verification suite (output bytes do not
    /// depend on this; 1 is the reproducibility-friendly default).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for the randomized identity spot checks in `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sierpinski,
    Hanoi,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Sierpinski => Family::Sierpinski,
            FamilyArg::Hanoi => Family::Hanoi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeMode {
    /// The whole polynomial.
    Symbolic,
    /// The corner triple t2, t1, t0.
    Triple,
    /// The division-free triple t2, n, m.
    Reduced,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    Complexity,
    Connected,
    Forests,
    Acyclic,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Chromatic,
    Reliability,
    Ising,
    Hyperbola,
    Growth,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchModeArg {
    Point,
    Symbolic,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFamilyArg {
    Sierpinski,
    Hanoi,
    Contracted,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a family polynomial or its corner triple as canonical JSON.
    Compute {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value_t = ComputeMode::Symbolic)]
        mode: ComputeMode,
    },
    /// Evaluate one counting specialization, the full cross-validated
    /// report, or an arbitrary rational point "x,y".
    Evaluate {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum)]
        what: Option<WhatArg>,
        /// Rational point like "2,2" or "-1/2,7/3".
        #[arg(long)]
        point: Option<String>,
        /// Output format for --what all.
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Chromatic, reliability, Ising, hyperbola, or growth outputs.
    Special {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        family: FamilyArg,
        /// Level for chromatic, reliability, ising, and hyperbola.
        #[arg(long)]
        level: Option<u32>,
        /// Rational Ising temperature parameter like "3/2" (t = e^(betaJ)).
        #[arg(long)]
        t: Option<String>,
        /// Series length for growth.
        #[arg(long, default_value_t = 10)]
        max_level: u32,
    },
    /// Run the oracle-vs-recursion verification suite; exits 2 on any
    /// failed check.
    Verify {
        #[arg(long, default_value_t = 2)]
        max_level: u32,
    },
    /// Time point or symbolic computation per level, CSV on stdout.
    Bench {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        max_level: u32,
        #[arg(long, value_enum, default_value_t = BenchModeArg::Point)]
        mode: BenchModeArg,
    },
    /// Emit a graph's vertices, labeled edges, and corners as JSON.
    Graph {
        #[arg(long, value_enum)]
        family: GraphFamilyArg,
        #[arg(long)]
        level: u32,
        /// Keep the loops of the Hanoi Schreier graph.
        #[arg(long)]
        loops: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(1);
    }
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::ResourceCap { .. })
        | Some(Error::TooLarge { .. })
        | Some(Error::TooManyEdges { .. }) => 3,
        _ => 1,
    }
}

/// Symbolic term cap, overridable through TUTTE_SS_TERM_CAP.
fn term_cap() -> anyhow::Result<usize> {
    match std::env::var("TUTTE_SS_TERM_CAP") {
        Ok(raw) => {
            let cap: usize = raw
                .trim()
                .parse()
                .map_err(|_| anyhow!("TUTTE_SS_TERM_CAP must be a positive integer"))?;
            if cap == 0 {
                bail!("TUTTE_SS_TERM_CAP must be a positive integer");
            }
            Ok(cap)
        }
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TERM_CAP),
        Err(e) => Err(anyhow!(e)).context("reading TUTTE_SS_TERM_CAP"),
    }
}

fn parse_rational(raw: &str) -> anyhow::Result<Rational> {
    raw.trim()
        .parse::<Rational>()
        .map_err(|e| anyhow!("invalid rational {raw:?}: {e}"))
}

fn parse_point(raw: &str) -> anyhow::Result<(Rational, Rational)> {
    let Some((xs, ys)) = raw.split_once(',') else {
        bail!("--point expects \"x,y\" with rational coordinates");
    };
    Ok((parse_rational(xs)?, parse_rational(ys)?))
}

fn print_json(value: &serde_json::Value) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn dispatch(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Cmd::Compute {
            family,
            level,
            mode,
        } => cmd_compute(family.into(), level, mode),
        Cmd::Evaluate {
            family,
            level,
            what,
            point,
            format,
        } => cmd_evaluate(family.into(), level, what, point, format),
        Cmd::Special {
            kind,
            family,
            level,
            t,
            max_level,
        } => cmd_special(kind, family.into(), level, t, max_level),
        Cmd::Verify { max_level } => cmd_verify(max_level, cli.seed),
        Cmd::Bench {
            family,
            max_level,
            mode,
        } => cmd_bench(family.into(), max_level, mode),
        Cmd::Graph {
            family,
            level,
            loops,
        } => cmd_graph(family, level, loops),
    }
}

fn cmd_compute(family: Family, level: u32, mode: ComputeMode) -> anyhow::Result<u8> {
    let cap = term_cap()?;
    let reduced = recursion::reduced_with_cap(family, level, cap)?;
    let value = match mode {
        ComputeMode::Symbolic => json::total_json(family, level, &reduced.total()),
        ComputeMode::Triple => json::full_triple_json(&reduced.expand()),
        ComputeMode::Reduced => json::reduced_triple_json(&reduced),
    };
    print_json(&value)?;
    Ok(0)
}

fn cmd_evaluate(
    family: Family,
    level: u32,
    what: Option<WhatArg>,
    point: Option<String>,
    format: FormatArg,
) -> anyhow::Result<u8> {
    match (what, point) {
        (Some(_), Some(_)) | (None, None) => {
            bail!("pass exactly one of --what and --point")
        }
        (None, Some(raw)) => {
            if matches!(format, FormatArg::Csv) {
                bail!("--format csv applies only to --what all");
            }
            let (x, y) = parse_point(&raw)?;
            let pt = recursion::eval_triple_at_point(family, level, &x, &y)?;
            print_json(&json::point_json(family, level, &x, &y, &pt.value))?;
        }
        (Some(WhatArg::All), None) => {
            let report = evaluations::evaluation_report(family, level)?;
            match format {
                FormatArg::Json => print_json(&json::report_json(&report))?,
                FormatArg::Csv => print!("{}", json::report_csv(&report)),
            }
        }
        (Some(what), None) => {
            if matches!(format, FormatArg::Csv) {
                bail!("--format csv applies only to --what all");
            }
            let (name, value) = match what {
                WhatArg::Complexity => ("complexity", evaluations::complexity(family, level)?),
                WhatArg::Connected => (
                    "connectedSpanning",
                    evaluations::connected_spanning_subgraphs(family, level)?,
                ),
                WhatArg::Forests => ("forests", evaluations::spanning_forests(family, level)?),
                WhatArg::Acyclic => (
                    "acyclicOrientations",
                    evaluations::acyclic_orientations(family, level)?,
                ),
                WhatArg::All => unreachable!("handled above"),
            };
            print_json(&json::value_json(family, level, name, &value))?;
        }
    }
    Ok(0)
}

fn require_level(level: Option<u32>, kind: &str) -> anyhow::Result<u32> {
    level.ok_or_else(|| anyhow!("--kind {kind} needs --level"))
}

fn cmd_special(
    kind: KindArg,
    family: Family,
    level: Option<u32>,
    t: Option<String>,
    max_level: u32,
) -> anyhow::Result<u8> {
    let cap = term_cap()?;
    if t.is_some() && !matches!(kind, KindArg::Ising) {
        bail!("--t applies only to --kind ising");
    }
    match kind {
        KindArg::Chromatic => {
            let level = require_level(level, "chromatic")?;
            let poly = evaluations::chromatic_with_cap(family, level, cap)?;
            print_json(&serde_json::json!({
                "family": family.name(),
                "level": level,
                "kind": "chromatic",
                "polynomial": json::unipoly_json(&poly, "λ"),
            }))?;
        }
        KindArg::Reliability => {
            let level = require_level(level, "reliability")?;
            let poly = evaluations::reliability_with_cap(family, level, cap)?;
            print_json(&serde_json::json!({
                "family": family.name(),
                "level": level,
                "kind": "reliability",
                "polynomial": json::unipoly_json(&poly, "p"),
            }))?;
        }
        KindArg::Ising => {
            let level = require_level(level, "ising")?;
            match t {
                None => {
                    let z = evaluations::ising_partition_with_cap(family, level, cap)?;
                    print_json(&serde_json::json!({
                        "family": family.name(),
                        "level": level,
                        "kind": "ising",
                        "polynomial": json::unipoly_json(&z, "t"),
                    }))?;
                }
                Some(raw) => {
                    let t = parse_rational(&raw)?;
                    let value = evaluations::ising_partition_value(family, level, &t)?;
                    let mut out = serde_json::json!({
                        "family": family.name(),
                        "level": level,
                        "kind": "ising",
                        "t": t.to_string(),
                        "partitionValue": value.to_string(),
                    });
                    if t > Rational::from_integer(BigInt::from(1)) {
                        let (form, rendered) =
                            match evaluations::ising_product_formula(family, level, &t)? {
                                IsingValue::Exact(v) => ("exact", v.to_string()),
                                IsingValue::Approximate(v) => {
                                    ("approximate", v.to_decimal_string(40))
                                }
                            };
                        out["productForm"] = serde_json::json!(form);
                        out["productValue"] = serde_json::json!(rendered);
                    }
                    print_json(&out)?;
                }
            }
        }
        KindArg::Hyperbola => {
            let level = require_level(level, "hyperbola")?;
            let (a, b) = evaluations::hyperbola_ab_with_cap(family, level, cap)?;
            print_json(&serde_json::json!({
                "family": family.name(),
                "level": level,
                "kind": "hyperbola",
                "a": json::rationalfn_json(&a),
                "b": json::rationalfn_json(&b),
            }))?;
        }
        KindArg::Growth => {
            if level.is_some() {
                bail!("--kind growth uses --max-level, not --level");
            }
            let series = evaluations::growth_constant_series(family, max_level)?;
            let mut out = String::from("family,level,value\n");
            for entry in &series.entries {
                out.push_str(&format!(
                    "{},{},{}\n",
                    family.name(),
                    entry.level,
                    entry.log_complexity_over_v.to_decimal_string(50)
                ));
            }
            print!("{out}");
        }
    }
    Ok(0)
}

fn cmd_verify(max_level: u32, seed: u64) -> anyhow::Result<u8> {
    if max_level == 0 {
        bail!("--max-level must be at least 1");
    }
    let cap = term_cap()?;
    let outcomes = verify::run_suite(max_level, seed, cap);
    let mut failed = 0usize;
    for o in &outcomes {
        if o.passed {
            println!("PASS {}", o.name);
        } else {
            failed += 1;
            println!("FAIL {}: {}", o.name, o.detail);
        }
    }
    println!("{} checks, {} failed", outcomes.len(), failed);
    Ok(if failed > 0 { 2 } else { 0 })
}

fn cmd_bench(family: Family, max_level: u32, mode: BenchModeArg) -> anyhow::Result<u8> {
    let cap = term_cap()?;
    let mode = match mode {
        BenchModeArg::Point => BenchMode::Point,
        BenchModeArg::Symbolic => BenchMode::Symbolic,
    };
    let rows = bench::run_bench(family, max_level, mode, cap)?;
    print!("{}", bench::to_csv(&rows));
    Ok(0)
}

fn cmd_graph(family: GraphFamilyArg, level: u32, loops: bool) -> anyhow::Result<u8> {
    if loops && !matches!(family, GraphFamilyArg::Hanoi) {
        bail!("--loops applies only to --family hanoi");
    }
    let (name, (graph, corners)) = match family {
        GraphFamilyArg::Sierpinski => ("sierpinski", build_sierpinski(level)?),
        GraphFamilyArg::Hanoi => ("hanoi", build_hanoi(level, loops)?),
        GraphFamilyArg::Contracted => ("contracted", build_contracted(level)?),
    };
    print_json(&json::graph_json(name, level, &graph, &corners))?;
    Ok(0)
}
