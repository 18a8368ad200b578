use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use rice_core::cantor::{decode_k, encode_tuple};
use rice_core::cubes::{CubesConfig, CubesFrontierState, CubesStatus, ENUMERATION_ORDER};
use rice_core::demos::{demo_decidable, demo_rice};
use rice_core::dio_search::{bounded_solvable, SearchOutcome};
use rice_core::h10c::{h10c_to_poly, parse_constraints, reduce, H10cInst};
use rice_core::poly::Poly;

const EXIT_EXHAUSTED: u8 = 2;

#[derive(Parser)]
#[command(name = "rice")]
#[command(
    about = "Diophantine search, tuple codecs, constraint reductions and the two-witness separator demo"
)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial at a point or at a tuple code
    Eval {
        /// Polynomial file (`-` for stdin)
        #[arg(long)]
        poly: PathBuf,
        /// Comma-separated naturals, e.g. 1,0,0
        #[arg(long, conflicts_with_all = ["code", "arity"])]
        vars: Option<String>,
        /// Evaluate at decode_k(arity, code)
        #[arg(long, requires = "code")]
        arity: Option<usize>,
        #[arg(long, requires = "arity")]
        code: Option<BigUint>,
    },
    /// Search tuple codes 0..=fuel for the least zero
    Solve {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        fuel: u64,
    },
    /// Cantor tuple codec
    Codec {
        #[command(subcommand)]
        op: CodecOp,
    },
    /// Reduce a constraint file to a single instance (JSON)
    Encode {
        #[arg(long)]
        constraints: PathBuf,
    },
    /// Lift an instance (JSON) to a signed polynomial
    Bridge {
        #[arg(long)]
        inst: PathBuf,
    },
    /// Separator values for the halt/diverge witness pair under a bounded termination probe
    RiceDemo {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        arity: usize,
        #[arg(long, default_value_t = 1000)]
        probe_fuel: u64,
        /// Budget of the separate search used to classify the result
        #[arg(long, default_value_t = 100_000)]
        status_fuel: u64,
    },
    /// Search x^2 - y^2 - z^2 = 1
    DemoDecidable {
        #[arg(long, default_value_t = 1000)]
        budget: u64,
    },
    /// Three-cubes frontier search with checkpointing
    DemoCubes {
        #[arg(long)]
        max_k: BigUint,
        /// Codes 0..=budget are tried for each k
        #[arg(long)]
        budget: BigUint,
        /// Checkpoint file
        #[arg(long)]
        state: Option<PathBuf>,
        /// Continue from the checkpoint in --state
        #[arg(long, requires = "state")]
        resume: bool,
        /// Stop after checking this many codes in total
        #[arg(long)]
        max_steps: Option<u64>,
        /// Wall-clock limit in seconds
        #[arg(long)]
        time_limit: Option<f64>,
        /// Codes between checkpoints and progress lines
        #[arg(long, default_value_t = 1_000_000)]
        checkpoint_every: u64,
    },
}

#[derive(Subcommand)]
enum CodecOp {
    /// Encode naturals into one tuple code
    Encode { values: Vec<BigUint> },
    /// Decode a tuple code into `arity` naturals
    Decode {
        #[arg(long)]
        arity: usize,
        code: BigUint,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_poly(path: &Path) -> Result<Poly> {
    Poly::parse(&read_input(path)?)
        .with_context(|| format!("parsing polynomial {}", path.display()))
}

fn warn_arity(p: &Poly, arity: usize) {
    if let Err(e) = p.check_arity(arity) {
        eprintln!("warning: {e}; evaluation truncates to the common prefix");
    }
}

fn list(values: &[BigUint]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Eval {
            poly,
            vars,
            arity,
            code,
        } => {
            let p = read_poly(&poly)?;
            let point = match (vars, arity, code) {
                (Some(v), _, _) => v
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim()
                            .parse::<BigUint>()
                            .with_context(|| format!("bad natural `{s}`"))
                    })
                    .collect::<Result<Vec<_>>>()?,
                (None, Some(ar), Some(n)) => decode_k(ar, &n),
                _ => bail!("give either --vars or --arity with --code"),
            };
            warn_arity(&p, point.len());
            println!("{}", p.eval(&point));
        }
        Command::Solve { arity, poly, fuel } => {
            let p = read_poly(&poly)?;
            warn_arity(&p, arity);
            match bounded_solvable(arity, &p, fuel) {
                SearchOutcome::Found(n) => {
                    println!("found {n} decoded={}", list(&decode_k(arity, &n.into())));
                }
                SearchOutcome::Exhausted(b) => {
                    println!("exhausted {b}");
                    return Ok(ExitCode::from(EXIT_EXHAUSTED));
                }
            }
        }
        Command::Codec { op } => match op {
            CodecOp::Encode { values } => println!("{}", encode_tuple(&values)),
            CodecOp::Decode { arity, code } => println!("{}", list(&decode_k(arity, &code))),
        },
        Command::Encode { constraints } => {
            let cs = parse_constraints(&read_input(&constraints)?)
                .with_context(|| format!("parsing {}", constraints.display()))?;
            println!("{}", reduce(&cs).to_json());
        }
        Command::Bridge { inst } => {
            let instance = H10cInst::parse(&read_input(&inst)?)
                .with_context(|| format!("parsing instance {}", inst.display()))?;
            println!("{}", h10c_to_poly(&instance));
        }
        Command::RiceDemo {
            poly,
            arity,
            probe_fuel,
            status_fuel,
        } => {
            let p = read_poly(&poly)?;
            warn_arity(&p, arity);
            let r = demo_rice(&p, arity, probe_fuel, status_fuel);
            println!("probe fuel: {}", r.probe_fuel);
            println!("a_D = {}", r.a_d);
            println!("b_D = {}", r.b_d);
            println!("delta_D = {}", r.delta);
            match r.status {
                SearchOutcome::Found(m) => println!("bounded search: found {m}"),
                SearchOutcome::Exhausted(b) => println!("bounded search: exhausted {b}"),
            }
            println!("classification: {}", r.classification);
        }
        Command::DemoDecidable { budget } => {
            let r = demo_decidable(budget);
            println!("polynomial: x^2 - y^2 - z^2 - 1 (arity 3)");
            println!("tuples checked: {}", r.tuples_checked);
            match (r.outcome, r.decoded) {
                (SearchOutcome::Found(n), Some(t)) => {
                    println!(
                        "found {n} decoded=({})",
                        t.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                }
                _ => {
                    println!("exhausted {budget}");
                    return Ok(ExitCode::from(EXIT_EXHAUSTED));
                }
            }
        }
        Command::DemoCubes {
            max_k,
            budget,
            state,
            resume,
            max_steps,
            time_limit,
            checkpoint_every,
        } => {
            return demo_cubes(
                CubesConfig {
                    max_k,
                    per_k_budget: budget,
                },
                state.as_deref(),
                resume,
                max_steps,
                time_limit.map(Duration::from_secs_f64),
                checkpoint_every.max(1),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn demo_cubes(
    cfg: CubesConfig,
    state_path: Option<&Path>,
    resume: bool,
    max_steps: Option<u64>,
    time_limit: Option<Duration>,
    chunk: u64,
) -> Result<ExitCode> {
    let mut st = match state_path {
        Some(path) if resume && path.exists() => {
            let st = CubesFrontierState::load(path)
                .with_context(|| format!("loading checkpoint {}", path.display()))?;
            println!(
                "resumed at k={} code={} ({} solutions so far)",
                st.k,
                st.counter,
                st.solutions.len()
            );
            st
        }
        _ => CubesFrontierState::new(),
    };
    println!("enumeration: {ENUMERATION_ORDER}; skipping k = 4, 5 (mod 9)");

    let start = Instant::now();
    let mut remaining = max_steps;
    let status = loop {
        let leg = remaining.map_or(chunk, |r| r.min(chunk));
        let status = st.run_with(&cfg, Some(leg), |s| {
            let [x, y, z] = &s.triple;
            println!("k={} code={} ({x}, {y}, {z})", s.k, s.code);
        });
        if let Some(path) = state_path {
            st.save(path)
                .with_context(|| format!("writing checkpoint {}", path.display()))?;
        }
        if status != CubesStatus::Paused {
            break status;
        }
        if let Some(r) = remaining.as_mut() {
            *r -= leg;
            if *r == 0 {
                break status;
            }
        }
        if time_limit.is_some_and(|t| start.elapsed() >= t) {
            break status;
        }
        eprintln!("progress: k={} code={}", st.k, st.counter);
    };

    match status {
        CubesStatus::Complete => {
            println!(
                "complete through k={} ({} solutions)",
                cfg.max_k,
                st.solutions.len()
            );
            Ok(ExitCode::SUCCESS)
        }
        CubesStatus::Stalled { k } => {
            println!(
                "stalled at k={k}: no solution among codes 0..={}",
                cfg.per_k_budget
            );
            Ok(ExitCode::from(EXIT_EXHAUSTED))
        }
        CubesStatus::Paused => {
            println!("paused at k={} code={}", st.k, st.counter);
            Ok(ExitCode::from(EXIT_EXHAUSTED))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
