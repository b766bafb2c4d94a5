//! General solution of `A x = b`.
//!
//! The tracked run gives `P` with `P A = rref A`. With `c = P b`, the system
//! is consistent exactly when `c` vanishes from index `rank A` on. A
//! particular solution puts `c_j` at the `j`-th pivot column and zero at every
//! free column; the homogeneous part is the null-space basis.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::apps::{basis_null_space, nullity, rank, Basis};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Vector};
use crate::rref::gauss_jordan_tracked;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Inconsistent,
    Unique,
    Infinite,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Inconsistent => "INCONSISTENT",
            Status::Unique => "UNIQUE",
            Status::Infinite => "INFINITE",
        })
    }
}

/// Solution set of a linear system: empty, or `particular + span(null_basis)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet<E> {
    pub status: Status,
    pub particular: Option<Vector<E>>,
    pub null_basis: Option<Basis<E>>,
    /// The classification was made with a zero threshold.
    pub approximate: bool,
}

impl<E: Clone> SolutionSet<E> {
    pub fn inconsistent(approximate: bool) -> Self {
        SolutionSet {
            status: Status::Inconsistent,
            particular: None,
            null_basis: None,
            approximate,
        }
    }

    pub fn consistent(particular: Vector<E>, null_basis: Basis<E>) -> Self {
        SolutionSet {
            status: if null_basis.is_empty() {
                Status::Unique
            } else {
                Status::Infinite
            },
            approximate: null_basis.approximate,
            particular: Some(particular),
            null_basis: Some(null_basis),
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.status != Status::Inconsistent
    }
}

pub fn solve<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Vector<F::Elem>) -> Result<SolutionSet<F::Elem>> {
    if b.len() != a.nrows() {
        return Err(Error::Shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.nrows()
        )));
    }
    let tracked = gauss_jordan_tracked(field, a);
    let c = tracked.transform.mat_vec_mul(field, b)?;
    if c.as_slice()[tracked.rank..].iter().any(|x| !field.is_zero(x)) {
        return Ok(SolutionSet::inconsistent(!field.is_exact()));
    }
    let mut x = vec![field.zero(); a.ncols()];
    for (j, &col) in tracked.pivot_cols.iter().enumerate() {
        x[col] = c.get(j).clone();
    }
    let particular = Vector::new(x)?;
    Ok(SolutionSet::consistent(particular, basis_null_space(field, a)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Result of [`verify_solution`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SolutionReport {
    pub checks: Vec<Check>,
}

impl SolutionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for SolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{mark} {}", c.name)?;
            } else {
                writeln!(f, "{mark} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

const RANDOM_COMBINATIONS: usize = 3;

/// Check a claimed solution set by substitution, independently of how it
/// was produced. Consistency is cross-checked against the rank of the
/// augmented matrix.
pub fn verify_solution<F: Field>(
    field: &F,
    a: &Matrix<F::Elem>,
    b: &Vector<F::Elem>,
    s: &SolutionSet<F::Elem>,
    seed: u64,
) -> SolutionReport {
    let mut report = SolutionReport::default();
    if b.len() != a.nrows() {
        report.push("shapes", false, format!("rhs length {} vs {} rows", b.len(), a.nrows()));
        return report;
    }
    let rank_a = rank(field, a);
    let rank_aug = rank(field, &a.augment(b).expect("lengths checked"));
    let consistent = rank_a == rank_aug;
    report.push(
        "consistency agrees with augmented rank",
        consistent == s.is_consistent(),
        format!("rank A = {rank_a}, rank [A|b] = {rank_aug}, status {}", s.status),
    );

    let (Some(x), Some(basis)) = (&s.particular, &s.null_basis) else {
        report.push(
            "inconsistent set carries no vectors",
            s.status == Status::Inconsistent && s.particular.is_none() && s.null_basis.is_none(),
            "",
        );
        return report;
    };

    let n = a.ncols();
    let shapes_ok = x.len() == n && basis.vectors.iter().all(|v| v.len() == n);
    report.push("shapes", shapes_ok, "");
    if !shapes_ok {
        return report;
    }
    let expected_status = if basis.is_empty() {
        Status::Unique
    } else {
        Status::Infinite
    };
    report.push("status matches basis", s.status == expected_status, format!("{}", s.status));

    let residual = a.mat_vec_mul(field, x).expect("shape checked").sub(field, b);
    report.push(
        "particular solution residual",
        residual.is_negligible(field),
        "A x - b",
    );

    let bad: Vec<usize> = basis
        .vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| !a.mat_vec_mul(field, v).expect("shape checked").is_negligible(field))
        .map(|(i, _)| i)
        .collect();
    report.push(
        "null basis vectors are in the kernel",
        bad.is_empty(),
        if bad.is_empty() {
            String::new()
        } else {
            format!("vectors {bad:?}")
        },
    );

    let nul = nullity(field, a);
    report.push(
        "null basis size equals nullity",
        basis.len() == nul,
        format!("{} vectors, nullity {nul}", basis.len()),
    );

    if let Some(stacked) = basis.to_matrix() {
        let r = rank(field, &stacked);
        report.push(
            "null basis is linearly independent",
            r == basis.len(),
            format!("rank {r} of {}", basis.len()),
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut combos_ok = true;
    for _ in 0..RANDOM_COMBINATIONS {
        let y = basis.vectors.iter().fold(x.clone(), |acc, v| {
            let lambda = field.sample(&mut rng);
            acc.add(field, &v.scale(field, &lambda))
        });
        let r = a.mat_vec_mul(field, &y).expect("shape checked").sub(field, b);
        combos_ok &= r.is_negligible(field);
    }
    report.push("random points of the solution set solve the system", combos_ok, "");
    report
}
