use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use slc::algorithms::{
    solve_auto_with, solve_enumeration_with_budget, solve_lp_rounding_general,
    solve_lp_rounding_k2, solve_modified_list_scheduling, solve_ptas_with_budget,
    solve_single_constraint, solve_single_machine, AutoConfig, DEFAULT_ENUMERATION_BUDGET,
};
use slc::bench::{self, RatiosConfig};
use slc::generate::{generate, Family, GenerateConfig};
use slc::io::{read_instance, read_solution, serialize_instance, serialize_solution};
use slc::oracle::{solve_exact_with, OracleConfig};
use slc::{verify_solution, Instance, Result, SlcError, SolveReport, Status};

const EXIT_SOLVED: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_INVALID: u8 = 3;

#[derive(Parser)]
#[command(
    name = "slc",
    version,
    about = "Scheduling with processing times under linear constraints"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file and write a solution file.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        /// Accuracy for the PTAS. Required by `ptas`, optional for `auto`.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Work budget for the enumeration, PTAS and oracle solvers.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Check a solution file against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Write a random instance that is feasible by construction.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Number of rows. Ignored by the identity family.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Identity)]
        family: FamilyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a benchmark suite and write CSV.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Auto,
    Oracle,
    SingleMachine,
    SingleConstraint,
    Enumeration,
    Ptas,
    Mls,
    LpK2,
    LpGeneral,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Identity,
    Blend,
    Interval,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Identity => Family::Identity,
            FamilyArg::Blend => Family::Blend,
            FamilyArg::Interval => Family::Interval,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Table4,
    Ratios,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_SOLVED
            });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Solve {
            instance,
            algorithm,
            epsilon,
            output,
            budget,
        } => cmd_solve(&instance, algorithm, epsilon, output.as_deref(), budget),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
        Command::Generate {
            n,
            m,
            k,
            family,
            seed,
            output,
        } => {
            let inst = generate(&GenerateConfig {
                n,
                m,
                k,
                family: family.into(),
                seed,
            })?;
            emit(output.as_deref(), serialize_instance(&inst).as_bytes())?;
            Ok(EXIT_SOLVED)
        }
        Command::Bench { suite, out } => {
            let mut buf = Vec::new();
            match suite {
                Suite::Table4 => bench::write_csv(&mut buf, &bench::table4()?)?,
                Suite::Ratios => {
                    bench::write_csv(&mut buf, &bench::ratios(&RatiosConfig::default())?)?
                }
            }
            emit(out.as_deref(), &buf)?;
            Ok(EXIT_SOLVED)
        }
    }
}

fn cmd_solve(
    path: &Path,
    algorithm: Algorithm,
    epsilon: Option<f64>,
    output: Option<&Path>,
    budget: Option<u128>,
) -> Result<u8> {
    let inst = read_instance(path)?;
    let report = solve(&inst, algorithm, epsilon, budget)?;
    emit(output, serialize_solution(&report).as_bytes())?;
    if output.is_some() {
        match report.makespan() {
            Some(c) => println!("{} {:?} makespan {c}", report.algorithm, report.status),
            None => println!("{} {:?}", report.algorithm, report.status),
        }
    }
    Ok(match report.status {
        Status::Infeasible => EXIT_INFEASIBLE,
        _ => EXIT_SOLVED,
    })
}

fn solve(
    inst: &Instance,
    algorithm: Algorithm,
    epsilon: Option<f64>,
    budget: Option<u128>,
) -> Result<SolveReport> {
    let budget_or_default = budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    match algorithm {
        Algorithm::Auto => solve_auto_with(
            inst,
            &AutoConfig {
                epsilon,
                enumeration_budget: budget_or_default,
                ..AutoConfig::default()
            },
        ),
        Algorithm::Oracle => {
            let mut config = OracleConfig::default();
            if let Some(b) = budget {
                config.max_partitions = b;
            }
            solve_exact_with(inst, &config)
        }
        Algorithm::SingleMachine => solve_single_machine(inst),
        Algorithm::SingleConstraint => solve_single_constraint(inst),
        Algorithm::Enumeration => solve_enumeration_with_budget(inst, budget_or_default),
        Algorithm::Ptas => {
            let eps = epsilon.ok_or_else(|| {
                SlcError::InvalidArgument("--algorithm ptas requires --epsilon".into())
            })?;
            solve_ptas_with_budget(inst, eps, budget_or_default)
        }
        Algorithm::Mls => solve_modified_list_scheduling(inst),
        Algorithm::LpK2 => solve_lp_rounding_k2(inst),
        Algorithm::LpGeneral => solve_lp_rounding_general(inst),
    }
}

fn cmd_verify(instance: &Path, solution: &Path) -> Result<u8> {
    let inst = read_instance(instance)?;
    let report = read_solution(solution)?.to_report()?;
    let Some(sol) = report.solution else {
        println!("no schedule to verify: status {:?}", report.status);
        return Ok(EXIT_INFEASIBLE);
    };
    let verdict = verify_solution(&inst, &sol.times, &sol.schedule);
    if verdict.is_ok() {
        println!("ok");
        Ok(EXIT_SOLVED)
    } else {
        for v in &verdict.violations {
            println!("{v}");
        }
        Ok(EXIT_INVALID)
    }
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(bytes)?;
            w.flush()?;
        }
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}
