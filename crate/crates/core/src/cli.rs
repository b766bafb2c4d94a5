//! The `gjla` command line.
//!
//! Exit codes: 0 on success, 1 when the answer is "absent" (singular matrix
//! for `inverse`) or a `verify` check fails, 2 on usage or input errors.
//! Inconsistent systems are data, so `solve` exits 0 and prints
//! `INCONSISTENT`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::apps::{det, fundamental_subspaces, inverse, nullity};
use crate::bench::{bench_run, to_csv, BenchOp, BenchSpec};
use crate::field::{field_laws_check, Field, FieldKind, Gf2Field, RationalField, RealField};
use crate::io::{format_matrix, format_solution, format_subspaces, parse_matrix, parse_vector};
use crate::matrix::Matrix;
use crate::rref::{is_rref, Elimination, OpCount};
use crate::solver::{solve, verify_solution, SolutionReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ABSENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gjla", version, about = "Gauss-Jordan elimination over GF(2), rationals and reals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Scalar field: gf2, rat or real.
    #[arg(long, value_parser = parse_field_kind)]
    field: FieldKind,
    /// Zero threshold for the real field.
    #[arg(long)]
    eps: Option<f64>,
    /// Write results here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Matrix file.
    #[arg(long)]
    input: PathBuf,
    /// Print elementary operation counts after the result.
    #[arg(long)]
    count_ops: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced row echelon form.
    Rref {
        #[command(flatten)]
        args: MatrixArgs,
        /// Also print the transform P with P * A = rref.
        #[arg(long)]
        track: bool,
    },
    Rank {
        #[command(flatten)]
        args: MatrixArgs,
    },
    Det {
        #[command(flatten)]
        args: MatrixArgs,
    },
    /// Inverse, or SINGULAR with exit code 1.
    Inverse {
        #[command(flatten)]
        args: MatrixArgs,
    },
    /// General solution of A x = b.
    Solve {
        #[command(flatten)]
        args: MatrixArgs,
        /// Right-hand side file with header `n 1`.
        #[arg(long)]
        rhs: PathBuf,
    },
    /// Bases of the row, column, null and left null spaces.
    Bases {
        #[command(flatten)]
        args: MatrixArgs,
    },
    /// Time an operation on seeded random square matrices.
    Bench {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_bench_op)]
        op: BenchOp,
        /// Strictly increasing sizes, e.g. 64,128,256.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the CSV table to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Integer entries up to 10^20 in absolute value (rat only).
        #[arg(long)]
        big_int: bool,
        /// Skip operation counting.
        #[arg(long)]
        no_count: bool,
        /// Per-cell time limit in seconds; slower cells print `-`.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Check elimination invariants on a matrix, a solution, or the field laws.
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, required_unless_present = "laws")]
        input: Option<PathBuf>,
        #[arg(long, requires = "input")]
        rhs: Option<PathBuf>,
        /// Randomized field axiom check instead of a matrix check.
        #[arg(long, conflicts_with = "input")]
        laws: bool,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_field_kind(s: &str) -> Result<FieldKind, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_bench_op(s: &str) -> Result<BenchOp, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

type CliResult<T> = Result<T, String>;

/// What a command produced: text for the output stream and an exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn cli_main<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let output = field_args(&cli.command).output.clone();
    match execute(&cli.command) {
        Ok(outcome) => {
            let written = match &output {
                Some(path) => fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn field_args(cmd: &Command) -> &FieldArgs {
    match cmd {
        Command::Rref { args, .. }
        | Command::Rank { args }
        | Command::Det { args }
        | Command::Inverse { args }
        | Command::Solve { args, .. }
        | Command::Bases { args } => &args.field,
        Command::Bench { field, .. } | Command::Verify { field, .. } => field,
    }
}

fn execute(cmd: &Command) -> CliResult<Outcome> {
    let fa = field_args(cmd);
    if fa.eps.is_some() && fa.field != FieldKind::Real {
        return Err("--eps only applies to --field real".into());
    }
    if let Command::Bench {
        field,
        op,
        sizes,
        reps,
        seed,
        csv,
        big_int,
        no_count,
        timeout,
    } = cmd
    {
        let mut spec = BenchSpec::new(*op, field.field, sizes.clone());
        spec.epsilon = field.eps.unwrap_or(crate::field::DEFAULT_EPSILON);
        spec.reps = *reps;
        spec.seed = *seed;
        spec.big_int = *big_int;
        spec.count_ops = !*no_count;
        spec.timeout = timeout.map(Duration::from_secs_f64);
        let rows = bench_run(&spec).map_err(|e| e.to_string())?;
        let table = to_csv(&rows);
        if let Some(path) = csv {
            fs::write(path, &table).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        let code = if rows.iter().all(|r| r.verified) {
            EXIT_OK
        } else {
            EXIT_ABSENT
        };
        return Ok(Outcome { text: table, code });
    }
    match fa.field {
        FieldKind::Gf2 => run(&Gf2Field, cmd),
        FieldKind::Rat => run(&RationalField, cmd),
        FieldKind::Real => {
            let field = match fa.eps {
                Some(eps) => RealField::new(eps).map_err(|e| e.to_string())?,
                None => RealField::default(),
            };
            run(&field, cmd)
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_matrix<F: Field>(field: &F, path: &Path) -> CliResult<Matrix<F::Elem>> {
    parse_matrix(&read(path)?, field).map_err(|e| format!("{}: {e}", path.display()))
}

fn ops_line(ops: &OpCount) -> String {
    format!(
        "OPS interchanges={} scalings={} row_adds={} entry_ops={} total={}\n",
        ops.interchanges,
        ops.scalings,
        ops.row_adds,
        ops.entry_ops,
        ops.total()
    )
}

fn run<F: Field>(field: &F, cmd: &Command) -> CliResult<Outcome> {
    let err = |e: crate::Error| e.to_string();
    match cmd {
        Command::Rref { args, track } => {
            let a = load_matrix(field, &args.input)?;
            let mut e = Elimination::new(field);
            if *track {
                e = e.track_transform();
            }
            if args.count_ops {
                e = e.count_ops();
            }
            let run = e.run(&a);
            let mut text = format_matrix(&run.rref, field);
            if let Some(p) = &run.transform {
                text.push_str("TRANSFORM\n");
                text.push_str(&format_matrix(p, field));
            }
            if let Some(ops) = &run.ops {
                text.push_str(&ops_line(ops));
            }
            Ok(Outcome::ok(text))
        }
        Command::Rank { args } => {
            let a = load_matrix(field, &args.input)?;
            let mut e = Elimination::new(field);
            if args.count_ops {
                e = e.count_ops();
            }
            let run = e.run(&a);
            let mut text = format!("{}\n", run.rank);
            if let Some(ops) = &run.ops {
                text.push_str(&ops_line(ops));
            }
            Ok(Outcome::ok(text))
        }
        Command::Det { args } => {
            let a = load_matrix(field, &args.input)?;
            let d = det(field, &a).map_err(err)?;
            let mut text = format!("{}\n", field.format(&d));
            if args.count_ops {
                text.push_str(&ops_line(&crate::bench::count_ops(field, BenchOp::Det, &a)));
            }
            Ok(Outcome::ok(text))
        }
        Command::Inverse { args } => {
            let a = load_matrix(field, &args.input)?;
            let inv = inverse(field, &a).map_err(err)?;
            let (mut text, code) = match inv {
                Some(p) => (format_matrix(&p, field), EXIT_OK),
                None => ("SINGULAR\n".to_string(), EXIT_ABSENT),
            };
            if args.count_ops {
                text.push_str(&ops_line(&crate::bench::count_ops(field, BenchOp::Inverse, &a)));
            }
            Ok(Outcome { text, code })
        }
        Command::Solve { args, rhs } => {
            let a = load_matrix(field, &args.input)?;
            let b = parse_vector(&read(rhs)?, field).map_err(|e| format!("{}: {e}", rhs.display()))?;
            let s = solve(field, &a, &b).map_err(err)?;
            let mut text = format_solution(&s, field);
            if args.count_ops {
                text.push_str(&ops_line(&crate::bench::count_ops(field, BenchOp::Solve, &a)));
            }
            Ok(Outcome::ok(text))
        }
        Command::Bases { args } => {
            let a = load_matrix(field, &args.input)?;
            Ok(Outcome::ok(format_subspaces(&fundamental_subspaces(field, &a), field)))
        }
        Command::Verify {
            input,
            rhs,
            laws,
            samples,
            seed,
            ..
        } => {
            if *laws {
                let report = field_laws_check(field, *samples, *seed);
                let code = if report.is_clean() { EXIT_OK } else { EXIT_ABSENT };
                return Ok(Outcome {
                    text: report.to_string(),
                    code,
                });
            }
            let path = input.as_ref().ok_or("verify needs --input or --laws")?;
            let a = load_matrix(field, path)?;
            let report = match rhs {
                Some(rhs) => {
                    let b = parse_vector(&read(rhs)?, field).map_err(|e| format!("{}: {e}", rhs.display()))?;
                    let s = solve(field, &a, &b).map_err(err)?;
                    verify_solution(field, &a, &b, &s, *seed)
                }
                None => verify_matrix(field, &a),
            };
            let code = if report.passed() { EXIT_OK } else { EXIT_ABSENT };
            Ok(Outcome {
                text: report.to_string(),
                code,
            })
        }
        Command::Bench { .. } => unreachable!("bench is dispatched before field selection"),
    }
}

/// Invariant checks of one elimination run on `a`.
fn verify_matrix<F: Field>(field: &F, a: &Matrix<F::Elem>) -> SolutionReport {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(crate::solver::Check { name, passed, detail })
    };
    let run = Elimination::new(field).track_transform().track_determinant().run(a);
    let rref = run.rref.map(|x| field.snap(x));
    push("output is in reduced row echelon form", is_rref(field, &rref), String::new());

    let again = crate::rref::gauss_jordan(field, &rref);
    push(
        "elimination is idempotent",
        again.rref.approx_eq(field, &rref) && again.rank == run.rank,
        String::new(),
    );

    let p = run.transform.as_ref().expect("tracked");
    let pa = p.mat_mul(field, a).expect("P is m x m");
    let residual_ok = pa
        .entries()
        .iter()
        .zip(run.rref.entries())
        .all(|(x, y)| field.is_negligible(&field.sub(x, y)));
    push("P * A equals rref", residual_ok, String::new());

    let nul = nullity(field, a);
    push(
        "rank + nullity equals columns",
        run.rank + nul == a.ncols(),
        format!("{} + {nul} vs {}", run.rank, a.ncols()),
    );

    if a.is_square() && field.is_exact() {
        let d = det(field, a).expect("square");
        let dt = det(field, &a.transpose()).expect("square");
        push(
            "det A equals det A^T",
            d == dt,
            format!("{} vs {}", field.format(&d), field.format(&dt)),
        );
    }
    SolutionReport { checks }
}
