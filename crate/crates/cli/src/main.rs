//! `radmom`: sample test functions, apply grid operators, dump the inverse
//! kernel, run verification suites and the non-Hermiticity demos.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 malformed input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use radmom::grid::format_g17;
use radmom::opmatrix::OperatorMatrix;
use radmom::radialops::{self, zinv_kernel, zinv_kernel_cell};
use radmom::transforms::dst_apply;
use radmom::verify::{run_suite, Suite};
use radmom::{Error, FunctionDescriptor, RadialGrid, SampledFunction};

#[derive(Parser)]
#[command(name = "radmom", version, about = "Radial momentum operator toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a builtin function on a grid and write CSV.
    Sample {
        #[arg(long = "fn", value_parser = parse_descriptor)]
        function: FunctionDescriptor,
        #[arg(long, value_parser = parse_grid)]
        grid: RadialGrid,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a grid operator to a sampled CSV.
    Apply {
        #[arg(long)]
        op: ApplyOp,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump an integral kernel sampled at node pairs as matrix CSV.
    Kernel {
        #[arg(long)]
        op: KernelOp,
        #[arg(long, value_parser = parse_grid)]
        grid: RadialGrid,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: SuiteArg,
        /// Replace every tolerance of the suite.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Run a non-Hermiticity demonstration.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// Shift samples toward the origin and report the lost norm.
    Shift(ShiftArgs),
    /// Check the solutions of -i chi' = +-i chi.
    Deficiency {
        /// Check radius for the norms.
        #[arg(long, default_value_t = 40.0)]
        radius: f64,
    },
}

#[derive(Args)]
struct ShiftArgs {
    #[arg(long)]
    a: f64,
    #[arg(long = "fn", value_parser = parse_descriptor)]
    function: FunctionDescriptor,
    #[arg(long, value_parser = parse_grid)]
    grid: RadialGrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApplyOp {
    Fs,
    Zplus,
    Zinv,
    Pplus,
    Pr2,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelOp {
    Zinv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Involution,
    Hilbert,
    Sqrt,
    Inverse,
    Fracint,
    Positivity,
    Nonhermitian,
    Specfun,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Involution => Suite::Involution,
            SuiteArg::Hilbert => Suite::Hilbert,
            SuiteArg::Sqrt => Suite::Sqrt,
            SuiteArg::Inverse => Suite::Inverse,
            SuiteArg::Fracint => Suite::Fracint,
            SuiteArg::Positivity => Suite::Positivity,
            SuiteArg::Nonhermitian => Suite::Nonhermitian,
            SuiteArg::Specfun => Suite::Specfun,
            SuiteArg::All => Suite::All,
        }
    }
}

fn parse_descriptor(s: &str) -> Result<FunctionDescriptor, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_grid(s: &str) -> Result<RadialGrid, String> {
    let (r, n) = s.split_once(',').ok_or("grid must be R,N")?;
    let r: f64 = r.trim().parse().map_err(|_| format!("bad radius '{r}'"))?;
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| format!("bad node count '{n}'"))?;
    RadialGrid::new(r, n).map_err(|e| e.to_string())
}

enum Failure {
    Verification,
    Usage(String),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedInput(_) | Error::IncompatibleOperands(_) => {
                Failure::Malformed(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn apply(op: ApplyOp, input: &SampledFunction) -> Result<SampledFunction, Error> {
    match op {
        ApplyOp::Fs => Ok(dst_apply(input)),
        ApplyOp::Zplus => radialops::zplus_discrete(input),
        ApplyOp::Zinv => radialops::zinv_apply(input),
        ApplyOp::Pplus => radialops::pplus_apply(input),
        ApplyOp::Pr2 => radialops::pr2_apply(input),
    }
}

fn kernel_matrix(grid: &RadialGrid) -> Result<OperatorMatrix, Error> {
    let nodes = grid.nodes();
    let half = 0.5 * grid.spacing();
    let mut entries = Vec::with_capacity(nodes.len() * nodes.len());
    for &r in &nodes {
        for &u in &nodes {
            entries.push(if r == u {
                zinv_kernel_cell(r, half)
            } else {
                zinv_kernel(r, u)?
            });
        }
    }
    OperatorMatrix::from_entries(*grid, entries, "zinv-kernel")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sample {
            function,
            grid,
            out,
        } => emit(&out, &grid.sample(&function).to_csv()),
        Command::Apply { op, input, out } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", input.display())))?;
            let samples = SampledFunction::from_csv(&text)?;
            emit(&out, &apply(op, &samples)?.to_csv())
        }
        Command::Kernel {
            op: KernelOp::Zinv,
            grid,
            out,
        } => emit(&out, &kernel_matrix(&grid)?.to_csv()),
        Command::Verify { suite, tol, json } => {
            if let Some(t) = tol {
                if !(t >= 0.0) {
                    return Err(Failure::Usage(format!(
                        "tolerance must be nonnegative, got {t}"
                    )));
                }
            }
            let report = run_suite(suite.into(), tol);
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_table());
            }
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Demo {
            demo: Demo::Shift(args),
        } => {
            let report = radialops::shift_demo(&args.function, &args.grid, args.a)?;
            println!("norm_before={}", format_g17(report.norm_before));
            println!("norm_after={}", format_g17(report.norm_after));
            println!("loss={}", format_g17(report.discrete_loss()));
            println!("analytic_loss={}", format_g17(report.analytic_loss));
            Ok(())
        }
        Command::Demo {
            demo: Demo::Deficiency { radius },
        } => {
            for sign in [1i8, -1] {
                let r = radialops::deficiency_check(sign, radius)?;
                println!(
                    "sign={:+} residual={} norm_sq={} norm_sq_2R={} normalizable={}",
                    sign,
                    format_g17(r.residual),
                    format_g17(r.norm_sq),
                    format_g17(r.norm_sq_doubled),
                    r.norm_finite
                );
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
