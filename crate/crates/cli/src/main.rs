//! Command-line surface for the support-variety engine.
//!
//! Subcommands: classify an ideal, enumerate the fiber of a GCD graph, dump
//! a Taylor graph, test point membership, build family ideals, and re-run
//! the classification suites.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use support_varieties::error::Error;
use support_varieties::families::{expected_variety, make_family, FamilySpec};
use support_varieties::fiber::enumerate_fiber;
use support_varieties::gcd::GcdGraph;
use support_varieties::ideal::{IdealJson, Mask, SquareFreeIdeal};
use support_varieties::taylor::TaylorGraph;
use support_varieties::variety::{classify, membership, ClassifyConfig, Verdict};
use support_varieties::verify;

#[derive(Parser)]
#[command(name = "supvar", about = "support varieties of square-free monomial ideals", version)]
struct Cli {
    #[command(flatten)]
    run: RunFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunFlags {
    /// Primes for rank evaluation and sampling.
    #[arg(long, global = true, env = "SUPVAR_PRIMES", value_delimiter = ',', default_values_t = vec![2u64, 3, 101, 32003])]
    primes: Vec<u64>,

    /// Sample points per prime for corroboration.
    #[arg(long, global = true, env = "SUPVAR_SAMPLES", default_value_t = 200)]
    samples: usize,

    /// Random seed for all sampling.
    #[arg(long, global = true, env = "SUPVAR_SEED", default_value_t = 42)]
    seed: u64,

    /// Largest generator count admitted to dense rank computation.
    #[arg(long, global = true, env = "SUPVAR_RANK_CAP", default_value_t = 12)]
    rank_cap: usize,

    /// Cap on enumerated simple cycles and cycle families.
    #[arg(long, global = true, env = "SUPVAR_CYCLE_CAP", default_value_t = 100_000)]
    cycle_cap: usize,

    /// Output format.
    #[arg(long, global = true, env = "SUPVAR_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "SUPVAR_JOBS", default_value_t = 0)]
    jobs: usize,

    /// Read input from a file instead of stdin.
    #[arg(long = "in", global = true)]
    input: Option<std::path::PathBuf>,

    /// Write output to a file instead of stdout.
    #[arg(long = "out", global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the support variety of an ideal (ideal JSON on stdin).
    Classify,
    /// Enumerate all ideals whose GCD graph matches the input graph JSON
    /// `{"n":6,"edges":[[1,2],...]}`; one ideal JSON per line.
    Enumerate {
        /// Stop after this many ideals.
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
    /// Print the Taylor graph of an ideal (ideal JSON on stdin).
    Taylor,
    /// Decide membership of a point in the support variety.
    Membership {
        /// Comma-separated coordinates, one per generator.
        #[arg(long, value_delimiter = ',')]
        point: Vec<u64>,
        /// Prime modulus.
        #[arg(long)]
        prime: u64,
    },
    /// Emit a family ideal and its expected variety.
    Family {
        #[command(subcommand)]
        which: FamilyCommand,
    },
    /// Re-run a classification suite and print a pass/fail table.
    VerifyTheorem {
        #[command(subcommand)]
        which: TheoremCommand,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Edge ideal of the n-cycle.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Cycle edge ideal plus singleton variables.
    CycleFiber {
        #[arg(long)]
        n: usize,
        /// Generators whose singleton variable is present, e.g. 1,3.
        #[arg(long, value_delimiter = ',', default_value = "")]
        singletons: Vec<usize>,
    },
    /// Double broom with a and b leaves.
    Db {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        with_f2: bool,
    },
    /// Whiskered triangle with a and b leaves.
    Wt {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        with_f2: bool,
    },
    /// Stacked simplex ideal on 2n generators.
    Delta {
        #[arg(long)]
        n: usize,
    },
    /// Dashed-free representative of one of the graphs 27..=35.
    TypeB {
        #[arg(long)]
        graph: usize,
    },
}

#[derive(Subcommand)]
enum TheoremCommand {
    /// Six-generator classification: one representative per graph 1..=41
    /// plus the dashed-present cases; --full-fiber sweeps graphs 27..=41.
    A {
        #[arg(long)]
        full_fiber: bool,
    },
    /// Cycle edge ideals over a range of n.
    B {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Double brooms and whiskered triangles up to (max_a, max_b).
    Dbwt {
        #[arg(long, default_value_t = 3)]
        max_a: usize,
        #[arg(long, default_value_t = 3)]
        max_b: usize,
    },
    /// Stacked simplex ideals for the listed n.
    Delta {
        #[arg(long, value_delimiter = ',', default_values_t = vec![3usize, 4])]
        n: Vec<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.run.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.run.jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::FaceBudgetExceeded(_)
        | Error::EdgeBudgetExceeded(_)
        | Error::MatrixTooLarge { .. }
        | Error::CycleCapExceeded(_)
        | Error::OverlappingCyclesUnsupported(_) => 3,
        _ => 2,
    }
}

fn config_of(flags: &RunFlags) -> ClassifyConfig {
    ClassifyConfig {
        primes: flags.primes.clone(),
        samples_per_prime: flags.samples,
        seed: flags.seed,
        rank_cap_n: flags.rank_cap,
        cycle_cap: flags.cycle_cap,
    }
}

fn read_input(flags: &RunFlags) -> Result<String, Error> {
    let mut buf = String::new();
    match &flags.input {
        Some(path) => {
            buf = std::fs::read_to_string(path)
                .map_err(|e| Error::BadInput(format!("{}: {e}", path.display())))?;
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::BadInput(e.to_string()))?;
        }
    }
    Ok(buf)
}

fn write_output(flags: &RunFlags, text: &str) -> Result<(), Error> {
    match &flags.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::BadInput(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::BadInput(e.to_string()))
        }
    }
}

fn parse_ideal(flags: &RunFlags) -> Result<SquareFreeIdeal, Error> {
    SquareFreeIdeal::from_json_str(read_input(flags)?.trim())
}

#[derive(serde::Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let flags = &cli.run;
    let config = config_of(flags);
    match &cli.command {
        Command::Classify => {
            let ideal = parse_ideal(flags)?;
            let report = classify(&ideal, &config)?;
            let text = match flags.format {
                Format::Text => {
                    let mut s = format!("verdict: {}\n", report.verdict_kind());
                    match &report.verdict {
                        Verdict::Exact(e) => {
                            s.push_str(&format!("variety: {}\n", e.render(report.n)))
                        }
                        Verdict::Bounded { lower, upper } => {
                            for e in lower {
                                s.push_str(&format!("lower: {}\n", e.render(report.n)));
                            }
                            for e in upper {
                                s.push_str(&format!("upper: {}\n", e.render(report.n)));
                            }
                        }
                        Verdict::SampledOnly => {}
                    }
                    s.push_str(&format!("disagreements: {}\n", report.disagreements));
                    s
                }
                _ => format!("{}\n", serde_json::to_string(&report.to_json()).unwrap()),
            };
            write_output(flags, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { cap } => {
            let spec: GraphJson = serde_json::from_str(read_input(flags)?.trim())
                .map_err(|e| Error::BadInput(e.to_string()))?;
            let graph = GcdGraph::from_edges(spec.n, &spec.edges);
            let fiber = enumerate_fiber(&graph, *cap)?;
            let mut text = String::new();
            for ideal in &fiber.ideals {
                text.push_str(&ideal.to_json_string());
                text.push('\n');
            }
            if fiber.truncated {
                eprintln!("truncated at cap {cap}");
            }
            write_output(flags, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Taylor => {
            let ideal = parse_ideal(flags)?;
            let taylor = TaylorGraph::build(&ideal)?;
            let text = match flags.format {
                Format::Dot => taylor.to_dot(),
                _ => format!("{}\n", taylor.to_json()),
            };
            write_output(flags, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Membership { point, prime } => {
            let ideal = parse_ideal(flags)?;
            if point.len() != ideal.n() {
                return Err(Error::BadInput(format!(
                    "point has {} coordinates, ideal has {} generators",
                    point.len(),
                    ideal.n()
                )));
            }
            let inside = membership(&ideal, point, *prime, config.rank_cap_n)?;
            write_output(flags, &format!("{inside}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Family { which } => {
            let spec = family_spec(which)?;
            let ideal = make_family(&spec)?;
            let expected = expected_variety(&spec)?;
            let body = serde_json::json!({
                "ideal": IdealJson::from(&ideal),
                "expected": expected.render(ideal.n()),
            });
            write_output(flags, &format!("{}\n", serde_json::to_string(&body).unwrap()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTheorem { which } => {
            let rows = match which {
                TheoremCommand::A { full_fiber } => {
                    let mut rows = verify::theorem_six_generators(&config)?;
                    if *full_fiber {
                        let sweep_config = ClassifyConfig {
                            samples_per_prime: config.samples_per_prime.min(24),
                            ..config.clone()
                        };
                        for k in 27..=41 {
                            let (row, _) = verify::full_fiber_check(k, &sweep_config)?;
                            rows.push(row);
                        }
                    }
                    rows
                }
                TheoremCommand::B { n_min, n_max } => {
                    verify::theorem_cycles(*n_min, *n_max, &config)?
                }
                TheoremCommand::Dbwt { max_a, max_b } => {
                    verify::theorem_brooms(*max_a, *max_b, &config)?
                }
                TheoremCommand::Delta { n } => verify::theorem_stacked(n, &config)?,
            };
            let mut text = String::new();
            let mut all_pass = true;
            for row in &rows {
                text.push_str(&row.line());
                text.push('\n');
                all_pass &= row.pass;
            }
            text.push_str(&format!(
                "{}: {} checks\n",
                if all_pass { "PASS" } else { "FAIL" },
                rows.len()
            ));
            write_output(flags, &text)?;
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn family_spec(which: &FamilyCommand) -> Result<FamilySpec, Error> {
    Ok(match which {
        FamilyCommand::Cycle { n } => FamilySpec::CycleEdgeIdeal(*n),
        FamilyCommand::CycleFiber { n, singletons } => {
            let mut mask: Mask = 0;
            for &s in singletons {
                if s == 0 || s > *n {
                    return Err(Error::BadInput("singleton outside 1..n".into()));
                }
                mask |= 1 << (s - 1);
            }
            FamilySpec::CycleFiber { n: *n, singletons: mask }
        }
        FamilyCommand::Db { a, b, with_f2 } => {
            FamilySpec::DoubleBroom { a: *a, b: *b, with_f2: *with_f2 }
        }
        FamilyCommand::Wt { a, b, with_f2 } => {
            FamilySpec::WhiskeredTriangle { a: *a, b: *b, with_f2: *with_f2 }
        }
        FamilyCommand::Delta { n } => FamilySpec::DeltaN(*n),
        FamilyCommand::TypeB { graph } => FamilySpec::TypeB(*graph),
    })
}
