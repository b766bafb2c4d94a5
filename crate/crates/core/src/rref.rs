//! Gauss-Jordan elimination to reduced row echelon form.
//!
//! Columns are visited left to right. In column `k` the pivot is the first
//! row at or below the pivot counter `l` holding a nonzero entry; that row is
//! swapped into position `l`, scaled so the pivot becomes one, and added with
//! a suitable multiple to every other row so the rest of column `k` vanishes.
//! The counter then advances. Only the three elementary row operations are
//! used, so the same operations can be replayed on an identity matrix (giving
//! `P` with `P * A = rref A`) or folded into a scalar (giving `b` with
//! `det A = b * det(rref A)`).

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{FuncMatrix, Matrix};

/// Output of [`gauss_jordan`].
#[derive(Clone, Debug, PartialEq)]
pub struct RrefResult<E> {
    pub rref: Matrix<E>,
    /// Number of pivots found; equals the number of nonzero rows of `rref`.
    pub rank: usize,
    /// Column of each pivot, strictly increasing.
    pub pivot_cols: Vec<usize>,
}

impl<E: Clone> RrefResult<E> {
    /// Copy of the result with near-zero entries replaced by exact zeros.
    pub fn snapped<F: Field<Elem = E>>(&self, field: &F) -> Self {
        RrefResult {
            rref: self.rref.map(|x| field.snap(x)),
            rank: self.rank,
            pivot_cols: self.pivot_cols.clone(),
        }
    }
}

/// Output of [`gauss_jordan_tracked`]: `transform * A = rref`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrackedRref<E> {
    pub transform: Matrix<E>,
    pub rref: Matrix<E>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Output of [`gauss_jordan_det`]: `det A = scalar * det(rref)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DetTrace<E> {
    pub scalar: E,
    pub rref: Matrix<E>,
}

/// Work counters for one elimination run.
///
/// `entry_ops` counts one unit per entry for a row scaling and two (one
/// multiplication, one addition) per entry for a row addition, including the
/// entries of the tracked transform when there is one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCount {
    pub interchanges: u64,
    pub scalings: u64,
    pub row_adds: u64,
    pub entry_ops: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.interchanges + self.scalings + self.row_adds + self.entry_ops
    }
}

/// An elementary row operation as performed by the eliminator.
#[derive(Clone, Debug, PartialEq)]
pub enum RowOp<E> {
    Interchange { i: usize, j: usize },
    Scale { row: usize, factor: E },
    AddMultiple { target: usize, source: usize, factor: E },
}

/// Everything a configured run produced.
#[derive(Clone, Debug, PartialEq)]
pub struct EliminationRun<E> {
    pub rref: Matrix<E>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub transform: Option<Matrix<E>>,
    pub det_scalar: Option<E>,
    pub ops: Option<OpCount>,
}

type Observer<'o, E> = &'o mut dyn FnMut(&RowOp<E>, &Matrix<E>, Option<&E>);

/// Configurable elimination run.
///
/// ```
/// use gjla::field::RationalField;
/// use gjla::matrix::Matrix;
/// use gjla::rref::Elimination;
///
/// let f = RationalField;
/// let a = Matrix::identity(&f, 3).unwrap();
/// let run = Elimination::new(&f).track_transform().count_ops().run(&a);
/// assert_eq!(run.rank, 3);
/// assert_eq!(run.transform.unwrap(), a);
/// ```
#[derive(Debug)]
pub struct Elimination<'f, F> {
    field: &'f F,
    transform: bool,
    determinant: bool,
    count: bool,
}

impl<F> Clone for Elimination<'_, F> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<F> Copy for Elimination<'_, F> {}

impl<'f, F: Field> Elimination<'f, F> {
    pub fn new(field: &'f F) -> Self {
        Elimination {
            field,
            transform: false,
            determinant: false,
            count: false,
        }
    }

    /// Replay every operation on an identity matrix.
    pub fn track_transform(mut self) -> Self {
        self.transform = true;
        self
    }

    /// Fold every operation into the determinant scalar.
    pub fn track_determinant(mut self) -> Self {
        self.determinant = true;
        self
    }

    pub fn count_ops(mut self) -> Self {
        self.count = true;
        self
    }

    pub fn run(&self, a: &Matrix<F::Elem>) -> EliminationRun<F::Elem> {
        self.execute(a, None)
    }

    /// Run and call `observer` after every elementary operation with the
    /// operation, the current matrix and the current determinant scalar.
    pub fn run_observed(
        &self,
        a: &Matrix<F::Elem>,
        mut observer: impl FnMut(&RowOp<F::Elem>, &Matrix<F::Elem>, Option<&F::Elem>),
    ) -> EliminationRun<F::Elem> {
        self.execute(a, Some(&mut observer))
    }

    fn execute(&self, a: &Matrix<F::Elem>, mut observer: Option<Observer<'_, F::Elem>>) -> EliminationRun<F::Elem> {
        let field = self.field;
        let mut state = State {
            field,
            work: a.clone(),
            transform: self
                .transform
                .then(|| Matrix::identity(field, a.nrows()).expect("nrows >= 1")),
            det: self.determinant.then(|| field.one()),
            ops: self.count.then(OpCount::default),
        };
        let (m, n) = a.shape();
        let mut l = 0;
        let mut pivot_cols = Vec::new();
        for k in 0..n {
            if l == m {
                break;
            }
            if let Some(i) = state.find_pivot(l, k) {
                state.pivot_step(i, l, k, &mut observer);
                pivot_cols.push(k);
                l += 1;
            }
        }
        EliminationRun {
            rref: state.work,
            rank: l,
            pivot_cols,
            transform: state.transform,
            det_scalar: state.det,
            ops: state.ops,
        }
    }
}

struct State<'f, F: Field> {
    field: &'f F,
    work: Matrix<F::Elem>,
    transform: Option<Matrix<F::Elem>>,
    det: Option<F::Elem>,
    ops: Option<OpCount>,
}

impl<F: Field> State<'_, F> {
    fn find_pivot(&self, l: usize, k: usize) -> Option<usize> {
        (l..self.work.nrows()).find(|&r| !self.field.is_zero(self.work.get(r, k)))
    }

    fn pivot_step(&mut self, i: usize, l: usize, k: usize, observer: &mut Option<Observer<'_, F::Elem>>) {
        let field = self.field;
        let (m, n) = self.work.shape();
        let tracked = self.transform.as_ref().map_or(0, Matrix::ncols) as u64;

        if i != l {
            self.work.swap_rows_mut(i, l);
            if let Some(p) = &mut self.transform {
                p.swap_rows_mut(i, l);
            }
            if let Some(b) = &mut self.det {
                *b = field.neg(b);
            }
            if let Some(ops) = &mut self.ops {
                ops.interchanges += 1;
            }
            if let Some(obs) = observer.as_mut() {
                obs(&RowOp::Interchange { i, j: l }, &self.work, self.det.as_ref());
            }
        }

        let pivot = self.work.get(l, k).clone();
        let factor = field.inv(&pivot).expect("pivot is nonzero");
        self.work.scale_row_mut(field, l, &factor);
        if let Some(p) = &mut self.transform {
            p.scale_row_mut(field, l, &factor);
        }
        if let Some(b) = &mut self.det {
            *b = field.mul(b, &pivot);
        }
        if let Some(ops) = &mut self.ops {
            ops.scalings += 1;
            ops.entry_ops += n as u64 + tracked;
        }
        if let Some(obs) = observer.as_mut() {
            obs(&RowOp::Scale { row: l, factor }, &self.work, self.det.as_ref());
        }

        let pivot_row = self.work.row(l).to_vec();
        let pivot_transform_row = self.transform.as_ref().map(|p| p.row(l).to_vec());
        for t in (0..m).filter(|&t| t != l) {
            let c = field.neg(self.work.get(t, k));
            self.work.add_scaled_row_mut(field, t, &pivot_row, &c);
            if let (Some(p), Some(src)) = (&mut self.transform, &pivot_transform_row) {
                p.add_scaled_row_mut(field, t, src, &c);
            }
            if let Some(ops) = &mut self.ops {
                ops.row_adds += 1;
                ops.entry_ops += 2 * (n as u64 + tracked);
            }
            if let Some(obs) = observer.as_mut() {
                obs(
                    &RowOp::AddMultiple {
                        target: t,
                        source: l,
                        factor: c,
                    },
                    &self.work,
                    self.det.as_ref(),
                );
            }
        }
    }
}

/// One pivot step at pivot row `l`, column `k`: pick the first row `i >= l`
/// with a nonzero entry in column `k`, swap it into row `l`, normalise the
/// pivot to one and clear the rest of column `k`.
pub fn gj_pivot_step<F: Field>(field: &F, a: &Matrix<F::Elem>, l: usize, k: usize) -> Result<Matrix<F::Elem>> {
    if l >= a.nrows() {
        return Err(Error::Bounds {
            index: l,
            len: a.nrows(),
        });
    }
    if k >= a.ncols() {
        return Err(Error::Shape(format!(
            "column {k} out of range for {} columns",
            a.ncols()
        )));
    }
    let mut state = State {
        field,
        work: a.clone(),
        transform: None,
        det: None,
        ops: None,
    };
    let i = state.find_pivot(l, k).ok_or(Error::PivotNotFound { row: l, col: k })?;
    state.pivot_step(i, l, k, &mut None);
    Ok(state.work)
}

pub fn gauss_jordan<F: Field>(field: &F, a: &Matrix<F::Elem>) -> RrefResult<F::Elem> {
    let run = Elimination::new(field).run(a);
    RrefResult {
        rref: run.rref,
        rank: run.rank,
        pivot_cols: run.pivot_cols,
    }
}

/// Elimination that also returns the accumulated transform `P` (`P * A = rref`).
pub fn gauss_jordan_tracked<F: Field>(field: &F, a: &Matrix<F::Elem>) -> TrackedRref<F::Elem> {
    let run = Elimination::new(field).track_transform().run(a);
    TrackedRref {
        transform: run.transform.expect("transform was tracked"),
        rref: run.rref,
        rank: run.rank,
        pivot_cols: run.pivot_cols,
    }
}

/// Elimination of a square matrix folding each operation into a scalar:
/// interchanges negate it, scaling row `l` by `1/p` multiplies it by `p`,
/// row additions leave it alone.
pub fn gauss_jordan_det<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<DetTrace<F::Elem>> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "determinant needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let run = Elimination::new(field).track_determinant().run(a);
    Ok(DetTrace {
        scalar: run.det_scalar.expect("determinant was tracked"),
        rref: run.rref,
    })
}

/// Reduced row echelon form check. Zero tests go through the field, so
/// approximate matrices are judged up to the field threshold.
pub fn is_rref<F: Field>(field: &F, a: &Matrix<F::Elem>) -> bool {
    let one = field.one();
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for (i, row) in a.rows().enumerate() {
        let Some(j) = row.iter().position(|x| !field.is_zero(x)) else {
            seen_zero_row = true;
            continue;
        };
        if seen_zero_row || !field.eq(&row[j], &one) || last_pivot.is_some_and(|p| j <= p) {
            return false;
        }
        if (0..a.nrows()).any(|t| t != i && !field.is_zero(a.get(t, j))) {
            return false;
        }
        last_pivot = Some(j);
    }
    true
}

/// The pivot step written pointwise: each intermediate matrix is a function
/// of the previous one, and the eliminated rows are defined entry by entry.
pub fn gj_pivot_step_pointwise<F: Field>(
    field: &F,
    a: &FuncMatrix<F::Elem>,
    l: usize,
    k: usize,
) -> Result<FuncMatrix<F::Elem>> {
    if l >= a.nrows() || k >= a.ncols() {
        return Err(Error::PivotNotFound { row: l, col: k });
    }
    let i = (l..a.nrows())
        .find(|&r| !field.is_zero(&a.get(r, k)))
        .ok_or(Error::PivotNotFound { row: l, col: k })?;
    let interchanged = a.interchange_rows(i, l)?;
    let factor = field.inv(&interchanged.get(l, k))?;
    let scaled = interchanged.mult_row(field, l, &factor)?;
    let field = field.clone();
    FuncMatrix::new(a.nrows(), a.ncols(), move |t, j| {
        if t == l {
            scaled.get(l, j)
        } else {
            let c = field.neg(&interchanged.get(t, k));
            scaled
                .row_add(&field, t, l, &c)
                .expect("t and l are distinct in-range rows")
                .get(t, j)
        }
    })
}

/// Elimination over the pointwise representation, a fold of
/// [`gj_pivot_step_pointwise`] over the columns. Each step is memoized so
/// the cost stays polynomial.
pub fn gauss_jordan_pointwise<F: Field>(field: &F, a: &FuncMatrix<F::Elem>) -> RrefResult<F::Elem> {
    let (m, n) = (a.nrows(), a.ncols());
    let (current, rank, pivot_cols) = (0..n).fold(
        (a.memoize(), 0usize, Vec::new()),
        |(current, l, mut pivots), k| {
            let has_pivot = l < m && (l..m).any(|r| !field.is_zero(&current.get(r, k)));
            if !has_pivot {
                return (current, l, pivots);
            }
            let next = gj_pivot_step_pointwise(field, &current, l, k)
                .expect("pivot exists")
                .memoize();
            pivots.push(k);
            (next, l + 1, pivots)
        },
    );
    RrefResult {
        rref: Matrix::from_func(&current),
        rank,
        pivot_cols,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ApproxReal, BigRational, Gf2, Gf2Field, RationalField, RealField};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    fn gm(rows: &[&[u8]]) -> Matrix<Gf2> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Gf2::new(x).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn pivot_step_examples() {
        let f = RationalField;
        assert_eq!(
            gj_pivot_step(&f, &qm(&[&[0, 1], &[2, 4]]), 0, 0).unwrap(),
            qm(&[&[1, 2], &[0, 1]])
        );
        assert_eq!(
            gj_pivot_step(&f, &qm(&[&[1, 5], &[0, 3]]), 0, 0).unwrap(),
            qm(&[&[1, 5], &[0, 3]])
        );
        assert_eq!(
            gj_pivot_step(&Gf2Field, &gm(&[&[1, 1], &[1, 0]]), 0, 0).unwrap(),
            gm(&[&[1, 1], &[0, 1]])
        );
    }

    #[test]
    fn pivot_step_matches_pointwise_definition() {
        let f = RationalField;
        let a = qm(&[&[0, 3, 1], &[0, 0, 2], &[4, -2, 6]]);
        for (l, k) in [(0, 0), (0, 1), (1, 2), (0, 2)] {
            let dense = gj_pivot_step(&f, &a, l, k).unwrap();
            let pointwise = gj_pivot_step_pointwise(&f, &a.to_func(), l, k).unwrap();
            assert_eq!(dense, Matrix::from_func(&pointwise), "l={l} k={k}");
        }
    }

    #[test]
    fn pivot_step_without_pivot_is_an_error() {
        let f = RationalField;
        let a = qm(&[&[1, 0], &[0, 0]]);
        assert_eq!(
            gj_pivot_step(&f, &a, 1, 0),
            Err(Error::PivotNotFound { row: 1, col: 0 })
        );
        assert!(matches!(gj_pivot_step(&f, &a, 2, 0), Err(Error::Bounds { .. })));
        assert!(gj_pivot_step_pointwise(&f, &a.to_func(), 1, 0).is_err());
    }

    #[test]
    fn gauss_jordan_examples() {
        let f = RationalField;
        let i4 = Matrix::identity(&f, 4).unwrap();
        let r = gauss_jordan(&f, &i4);
        assert_eq!((r.rref.clone(), r.rank), (i4, 4));

        let z = Matrix::zero(&f, 3, 2).unwrap();
        let r = gauss_jordan(&f, &z);
        assert_eq!((r.rref, r.rank, r.pivot_cols), (z, 0, vec![]));

        let r = gauss_jordan(&f, &qm(&[&[0, 0], &[1, 2]]));
        assert_eq!(r.rref, qm(&[&[1, 2], &[0, 0]]));
        assert_eq!((r.rank, r.pivot_cols), (1, vec![0]));

        let r = gauss_jordan(&f, &qm(&[&[2, 4], &[1, 3]]));
        assert_eq!((r.rref, r.rank), (Matrix::identity(&f, 2).unwrap(), 2));
    }

    #[test]
    fn tracked_examples() {
        let f = RationalField;
        let i3 = Matrix::identity(&f, 3).unwrap();
        let t = gauss_jordan_tracked(&f, &i3);
        assert_eq!(t.transform, i3);
        assert_eq!(t.rref, i3);

        let swap = qm(&[&[0, 1], &[1, 0]]);
        let t = gauss_jordan_tracked(&f, &swap);
        assert_eq!(t.transform, swap);
        assert_eq!(t.rref, Matrix::identity(&f, 2).unwrap());
    }

    #[test]
    fn det_trace_examples() {
        let f = RationalField;
        let d = gauss_jordan_det(&f, &Matrix::identity(&f, 3).unwrap()).unwrap();
        assert_eq!(d.scalar, q(1));
        let d = gauss_jordan_det(&f, &qm(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(d.scalar, q(-1));
        assert_eq!(d.rref, Matrix::identity(&f, 2).unwrap());
        let d = gauss_jordan_det(&f, &qm(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(d.scalar, q(6));
        assert!(matches!(
            gauss_jordan_det(&f, &qm(&[&[1, 2, 3]])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn self_interchange_does_not_flip_sign() {
        let f = RationalField;
        let mut swaps = 0;
        let run = Elimination::new(&f)
            .track_determinant()
            .run_observed(&qm(&[&[1, 2], &[3, 4]]), |op, _, _| {
                if matches!(op, RowOp::Interchange { .. }) {
                    swaps += 1;
                }
            });
        assert_eq!(swaps, 0);
        // b = 1 * 1 (first pivot) * -2 (second pivot)
        assert_eq!(run.det_scalar, Some(q(-2)));
    }

    #[test]
    fn is_rref_examples() {
        let f = RationalField;
        assert!(is_rref(&f, &Matrix::identity(&f, 3).unwrap()));
        assert!(is_rref(&f, &qm(&[&[1, 2], &[0, 0]])));
        assert!(!is_rref(&f, &qm(&[&[1, 0], &[2, 0]])));
        assert!(!is_rref(&f, &qm(&[&[0, 0], &[1, 0]])));
        assert!(!is_rref(&f, &qm(&[&[2, 0], &[0, 1]])));
        assert!(!is_rref(&f, &qm(&[&[0, 1], &[1, 0]])));
        assert!(!is_rref(&f, &qm(&[&[1, 1], &[0, 1]])));
        assert!(is_rref(&f, &Matrix::zero(&f, 2, 2).unwrap()));
    }

    #[test]
    fn op_counts_for_identity() {
        let f = Gf2Field;
        let n = 4;
        let a = Matrix::identity(&f, n).unwrap();
        let ops = Elimination::new(&f).count_ops().run(&a).ops.unwrap();
        assert_eq!(ops.interchanges, 0);
        assert_eq!(ops.scalings, n as u64);
        assert_eq!(ops.row_adds, (n * (n - 1)) as u64);
        assert_eq!(ops.entry_ops, (n * n + 2 * n * (n - 1) * n) as u64);
    }

    #[test]
    fn approximate_rank_uses_threshold() {
        let f = RealField::new(1e-9).unwrap();
        let r = |x: f64| ApproxReal::new(x).unwrap();
        let a = Matrix::from_rows(vec![vec![r(1.0), r(2.0)], vec![r(1.0), r(2.0 + 1e-12)]]).unwrap();
        let res = gauss_jordan(&f, &a);
        assert_eq!(res.rank, 1);
        assert!(is_rref(&f, &res.snapped(&f).rref));
    }

    #[test]
    fn pointwise_agrees_on_small_example() {
        let f = RationalField;
        let a = qm(&[&[0, 2, 4, 1], &[0, 1, 2, 0], &[3, 0, 1, 1]]);
        assert_eq!(gauss_jordan_pointwise(&f, &a.to_func()), gauss_jordan(&f, &a));
    }
}
