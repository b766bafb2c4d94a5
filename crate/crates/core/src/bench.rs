//! Benchmark harness: seeded random matrices, median wall-clock timings and
//! elementary operation counts.
//!
//! Random matrices come from `ChaCha8Rng::seed_from_u64(seed)`, drawing
//! entries row by row with [`Field::sample`]. ChaCha8 output is specified
//! independently of platform, so a `(m, n, field, seed)` tuple names the same
//! matrix everywhere.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use dashu_int::IBig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apps::{det, inverse};
use crate::error::{Error, Result};
use crate::field::{BigRational, Field, FieldKind, Gf2Field, RationalField, RealField};
use crate::matrix::{Matrix, Vector};
use crate::rref::{is_rref, Elimination, OpCount};
use crate::solver::{solve, verify_solution};

/// Bound on the absolute value of entries drawn by [`random_big_int_matrix`].
pub const BIG_INT_BOUND: i128 = 100_000_000_000_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BenchOp {
    Rref,
    Det,
    Inverse,
    Solve,
}

impl BenchOp {
    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Rref => "rref",
            BenchOp::Det => "det",
            BenchOp::Inverse => "inverse",
            BenchOp::Solve => "solve",
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rref" => Ok(BenchOp::Rref),
            "det" => Ok(BenchOp::Det),
            "inverse" => Ok(BenchOp::Inverse),
            "solve" => Ok(BenchOp::Solve),
            other => Err(Error::Domain(format!(
                "unknown benchmark operation `{other}` (expected rref, det, inverse or solve)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSpec {
    pub op: BenchOp,
    pub field: FieldKind,
    /// Zero threshold for the real field.
    pub epsilon: f64,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    /// Draw integer entries up to 10^20 in absolute value (rational field only).
    pub big_int: bool,
    /// Count elementary operations on every repetition.
    pub count_ops: bool,
    /// Cells whose repetition exceeds this are reported as `-`.
    pub timeout: Option<Duration>,
}

impl BenchSpec {
    pub fn new(op: BenchOp, field: FieldKind, sizes: Vec<usize>) -> Self {
        BenchSpec {
            op,
            field,
            epsilon: crate::field::DEFAULT_EPSILON,
            sizes,
            reps: 3,
            seed: 0,
            big_int: false,
            count_ops: true,
            timeout: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() || self.sizes[0] == 0 {
            return Err(Error::Domain("sizes must be a non-empty list of positive integers".into()));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("sizes must be strictly increasing".into()));
        }
        if self.reps == 0 {
            return Err(Error::Domain("reps must be at least 1".into()));
        }
        if self.big_int && self.field != FieldKind::Rat {
            return Err(Error::Domain("--big-int applies to the rat field only".into()));
        }
        Ok(())
    }
}

/// One cell of a benchmark table. `None` timings print as `-`.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub op: BenchOp,
    pub field: FieldKind,
    pub n: usize,
    pub median_seconds: Option<f64>,
    pub op_count: Option<u64>,
    /// The computed result passed its independent check.
    pub verified: bool,
}

pub fn random_matrix<F: Field>(field: &F, m: usize, n: usize, seed: u64) -> Result<Matrix<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(m, n, |_, _| field.sample(&mut rng))
}

/// Integer rationals uniform in `[-10^20, 10^20]`.
pub fn random_big_int_matrix(m: usize, n: usize, seed: u64) -> Result<Matrix<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(m, n, |_, _| {
        BigRational::from_integer(IBig::from(rng.gen_range(-BIG_INT_BOUND..=BIG_INT_BOUND)))
    })
}

fn random_vector<F: Field>(field: &F, n: usize, seed: u64) -> Result<Vector<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Vector::new((0..n).map(|_| field.sample(&mut rng)).collect())
}

fn add_counts(a: OpCount, b: OpCount) -> OpCount {
    OpCount {
        interchanges: a.interchanges + b.interchanges,
        scalings: a.scalings + b.scalings,
        row_adds: a.row_adds + b.row_adds,
        entry_ops: a.entry_ops + b.entry_ops,
    }
}

/// Elementary operation count of `op` on `a`.
///
/// `rref` and `det` are one elimination; `inverse` is one elimination
/// replayed on the identity; `solve` is the tracked runs on `A` and `A^T`.
pub fn count_ops<F: Field>(field: &F, op: BenchOp, a: &Matrix<F::Elem>) -> OpCount {
    let e = Elimination::new(field).count_ops();
    let ops = |run: crate::rref::EliminationRun<F::Elem>| run.ops.expect("counting enabled");
    match op {
        BenchOp::Rref => ops(e.run(a)),
        BenchOp::Det => ops(e.track_determinant().run(a)),
        BenchOp::Inverse => ops(e.track_transform().run(a)),
        BenchOp::Solve => add_counts(
            ops(e.track_transform().run(a)),
            ops(e.track_transform().run(&a.transpose())),
        ),
    }
}

/// Compute `op` once and check the answer independently of the timing path.
fn run_and_verify<F: Field>(field: &F, op: BenchOp, a: &Matrix<F::Elem>, rhs: Option<&Vector<F::Elem>>) -> bool {
    match op {
        BenchOp::Rref => {
            let r = crate::rref::gauss_jordan(field, a);
            is_rref(field, &r.snapped(field).rref)
        }
        BenchOp::Det => {
            let Ok(d) = det(field, a) else { return false };
            if field.is_exact() {
                det(field, &a.transpose()).is_ok_and(|t| t == d)
            } else {
                crate::rref::gauss_jordan_det(field, a)
                    .is_ok_and(|t| is_rref(field, &t.rref.map(|x| field.snap(x))))
            }
        }
        BenchOp::Inverse => match inverse(field, a) {
            Ok(Some(p)) => {
                let Ok(prod) = a.mat_mul(field, &p) else { return false };
                let id = Matrix::identity(field, a.nrows()).expect("n >= 1");
                prod.entries()
                    .iter()
                    .zip(id.entries())
                    .all(|(x, y)| field.is_negligible(&field.sub(x, y)))
            }
            Ok(None) => crate::apps::rank(field, a) < a.nrows(),
            Err(_) => false,
        },
        BenchOp::Solve => {
            let b = rhs.expect("solve benchmarks carry a right-hand side");
            solve(field, a, b).is_ok_and(|s| s.is_consistent() && verify_solution(field, a, b, &s, 0).passed())
        }
    }
}

fn time_op<F: Field>(field: &F, op: BenchOp, a: &Matrix<F::Elem>, rhs: Option<&Vector<F::Elem>>) -> Duration {
    let start = Instant::now();
    match op {
        BenchOp::Rref => {
            std::hint::black_box(crate::rref::gauss_jordan(field, a));
        }
        BenchOp::Det => {
            std::hint::black_box(det(field, a).ok());
        }
        BenchOp::Inverse => {
            std::hint::black_box(inverse(field, a).ok());
        }
        BenchOp::Solve => {
            std::hint::black_box(solve(field, a, rhs.expect("rhs present")).ok());
        }
    }
    start.elapsed()
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    }
}

fn bench_cell<F: Field>(field: &F, spec: &BenchSpec, n: usize, a: Matrix<F::Elem>) -> Result<BenchRow> {
    let rhs = match spec.op {
        // b = A x0 keeps the system consistent
        BenchOp::Solve => {
            let x0 = random_vector(field, n, spec.seed.wrapping_add(1))?;
            Some(a.mat_vec_mul(field, &x0)?)
        }
        _ => None,
    };
    let verified = run_and_verify(field, spec.op, &a, rhs.as_ref());
    let mut row = BenchRow {
        op: spec.op,
        field: spec.field,
        n,
        median_seconds: None,
        op_count: None,
        verified,
    };
    if !verified {
        return Ok(row);
    }

    let mut times = Vec::with_capacity(spec.reps);
    let mut counts = Vec::new();
    for _ in 0..spec.reps {
        let elapsed = time_op(field, spec.op, &a, rhs.as_ref());
        if spec.timeout.is_some_and(|t| elapsed > t) {
            return Ok(row);
        }
        times.push(elapsed.as_secs_f64());
        if spec.count_ops {
            counts.push(count_ops(field, spec.op, &a).total());
        }
    }
    if counts.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Contract(format!("operation counts differ across repetitions: {counts:?}")));
    }
    row.median_seconds = Some(median(times));
    row.op_count = counts.first().copied();
    Ok(row)
}

fn run_sizes<F: Field>(field: &F, spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    spec.sizes
        .iter()
        .map(|&n| bench_cell(field, spec, n, random_matrix(field, n, n, spec.seed)?))
        .collect()
}

/// Run every size in `spec`, smallest first.
pub fn bench_run(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    spec.validate()?;
    match spec.field {
        FieldKind::Gf2 => run_sizes(&Gf2Field, spec),
        FieldKind::Rat if spec.big_int => spec
            .sizes
            .iter()
            .map(|&n| bench_cell(&RationalField, spec, n, random_big_int_matrix(n, n, spec.seed)?))
            .collect(),
        FieldKind::Rat => run_sizes(&RationalField, spec),
        FieldKind::Real => run_sizes(&RealField::new(spec.epsilon)?, spec),
    }
}

pub const CSV_HEADER: &str = "operation,field,n,median_seconds,op_count";

/// `operation,field,n,median_seconds,op_count`, one line per row.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let secs = r.median_seconds.map_or("-".to_string(), |s| format!("{s:.6}"));
        let count = match (r.median_seconds, r.op_count) {
            (Some(_), Some(c)) => c.to_string(),
            _ => "-".to_string(),
        };
        out.push_str(&format!("{},{},{},{secs},{count}\n", r.op, r.field, r.n));
    }
    out
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let cov: f64 = logs.iter().map(|&(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let var: f64 = logs.iter().map(|&(x, _)| (x - mean_x).powi(2)).sum();
    cov / var
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apps::rank;
    use crate::field::Gf2;

    #[test]
    fn generation_is_deterministic() {
        let a = random_matrix(&RationalField, 5, 7, 9).unwrap();
        assert_eq!(a, random_matrix(&RationalField, 5, 7, 9).unwrap());
        assert_ne!(a, random_matrix(&RationalField, 5, 7, 10).unwrap());
        let g = random_big_int_matrix(3, 3, 1).unwrap();
        assert_eq!(g, random_big_int_matrix(3, 3, 1).unwrap());
    }

    #[test]
    fn gf2_density_is_binomial() {
        let a = random_matrix(&Gf2Field, 200, 200, 5).unwrap();
        let ones = a.entries().iter().filter(|&&x| x == Gf2::ONE).count() as f64;
        // Binomial(40000, 1/2): mean 20000, sigma 100
        assert!((ones - 20_000.0).abs() <= 300.0, "{ones}");
    }

    #[test]
    fn random_rationals_are_invertible() {
        for seed in 1..=10 {
            let a = random_matrix(&RationalField, 50, 50, seed).unwrap();
            assert_eq!(rank(&RationalField, &a), 50, "seed {seed}");
        }
    }

    #[test]
    fn rational_entries_respect_bounds() {
        let a = random_matrix(&RationalField, 20, 20, 3).unwrap();
        for x in a.entries() {
            assert!(dashu_int::ops::UnsignedAbs::unsigned_abs(x.numer().clone()) <= dashu_int::UBig::from(10_000u32));
            assert!(x.denom() <= &dashu_int::UBig::from(100u32));
        }
        let b = random_big_int_matrix(20, 20, 3).unwrap();
        let bound = IBig::from(BIG_INT_BOUND);
        assert!(b.entries().iter().all(|x| x.is_integer() && x.numer() <= &bound && x.numer() >= &-bound.clone()));
    }

    #[test]
    fn det_counts_repeat() {
        let mut spec = BenchSpec::new(BenchOp::Det, FieldKind::Rat, vec![10, 20]);
        spec.seed = 3;
        let rows = bench_run(&spec).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.verified && r.op_count.is_some()));
    }

    #[test]
    fn every_op_verifies() {
        for op in [BenchOp::Rref, BenchOp::Det, BenchOp::Inverse, BenchOp::Solve] {
            for field in FieldKind::ALL {
                let mut spec = BenchSpec::new(op, field, vec![4, 8]);
                spec.reps = 1;
                let rows = bench_run(&spec).unwrap();
                assert!(rows.iter().all(|r| r.verified), "{op} {field}: {rows:?}");
            }
        }
    }

    #[test]
    fn spec_validation() {
        let mut spec = BenchSpec::new(BenchOp::Rref, FieldKind::Gf2, vec![4, 4]);
        assert!(spec.validate().is_err());
        spec.sizes = vec![4, 8];
        spec.reps = 0;
        assert!(spec.validate().is_err());
        spec.reps = 1;
        spec.big_int = true;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            BenchRow {
                op: BenchOp::Rref,
                field: FieldKind::Gf2,
                n: 8,
                median_seconds: Some(0.5),
                op_count: Some(1234),
                verified: true,
            },
            BenchRow {
                op: BenchOp::Rref,
                field: FieldKind::Gf2,
                n: 16,
                median_seconds: None,
                op_count: None,
                verified: true,
            },
        ];
        assert_eq!(
            to_csv(&rows),
            "operation,field,n,median_seconds,op_count\nrref,gf2,8,0.500000,1234\nrref,gf2,16,-,-\n"
        );
    }

    #[test]
    fn slope_of_a_cubic() {
        let pts: Vec<(f64, f64)> = [2.0f64, 4.0, 8.0].iter().map(|&x| (x, 5.0 * x.powi(3))).collect();
        assert!((log_log_slope(&pts) - 3.0).abs() < 1e-12);
    }
}
