//! Quantities read off a Gauss-Jordan run: rank, nullity, determinant,
//! inverse and bases of the four fundamental subspaces.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Vector};
use crate::rref::{gauss_jordan, gauss_jordan_det, gauss_jordan_tracked};

/// An ordered list of vectors of a common length.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis<E> {
    pub vectors: Vec<Vector<E>>,
    pub ambient_dim: usize,
    /// Set when computed over an approximate field.
    pub approximate: bool,
}

impl<E: Clone> Basis<E> {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The vectors stacked as rows, or `None` for the trivial subspace.
    pub fn to_matrix(&self) -> Option<Matrix<E>> {
        if self.vectors.is_empty() {
            return None;
        }
        Matrix::from_rows(self.vectors.iter().map(|v| v.as_slice().to_vec()).collect()).ok()
    }

    fn from_rows<'a, F: Field<Elem = E>>(field: &F, ambient_dim: usize, rows: impl Iterator<Item = &'a [E]>) -> Self
    where
        E: 'a,
    {
        Basis {
            vectors: rows
                .map(|r| Vector::new(r.to_vec()).expect("matrix rows are non-empty"))
                .collect(),
            ambient_dim,
            approximate: !field.is_exact(),
        }
    }
}

pub fn rank<F: Field>(field: &F, a: &Matrix<F::Elem>) -> usize {
    gauss_jordan(field, a).rank
}

pub fn nullity<F: Field>(field: &F, a: &Matrix<F::Elem>) -> usize {
    a.ncols() - rank(field, a)
}

/// `b * (product of the diagonal of rref A)`.
pub fn det<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<F::Elem> {
    let trace = gauss_jordan_det(field, a)?;
    let diag = (0..a.nrows()).fold(field.one(), |acc, i| field.mul(&acc, trace.rref.get(i, i)));
    Ok(field.mul(&trace.scalar, &diag))
}

/// The tracked transform when `rref A` is the identity, otherwise `None`.
pub fn inverse<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Result<Option<Matrix<F::Elem>>> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "inverse needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let tracked = gauss_jordan_tracked(field, a);
    Ok((tracked.rank == a.nrows()).then_some(tracked.transform))
}

/// Nonzero rows of `rref A`.
pub fn basis_row_space<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Basis<F::Elem> {
    let r = gauss_jordan(field, a);
    let rows = r.rref.rows().filter(|row| !row.iter().all(|x| field.is_zero(x)));
    Basis::from_rows(field, a.ncols(), rows)
}

/// Nonzero rows of `rref (A^T)`.
pub fn basis_col_space<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Basis<F::Elem> {
    basis_row_space(field, &a.transpose()).with_dim(a.nrows())
}

/// Rows of `P` from the tracked run on `A^T`, from index `rank A` on.
pub fn basis_null_space<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Basis<F::Elem> {
    let t = gauss_jordan_tracked(field, &a.transpose());
    Basis::from_rows(field, a.ncols(), t.transform.rows().skip(t.rank))
}

/// Rows of `P` from the tracked run on `A`, from index `rank A` on.
pub fn basis_left_null_space<F: Field>(field: &F, a: &Matrix<F::Elem>) -> Basis<F::Elem> {
    let t = gauss_jordan_tracked(field, a);
    Basis::from_rows(field, a.nrows(), t.transform.rows().skip(t.rank))
}

impl<E> Basis<E> {
    fn with_dim(mut self, ambient_dim: usize) -> Self {
        self.ambient_dim = ambient_dim;
        self
    }
}

/// All four fundamental subspaces of one matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalSubspaces<E> {
    pub rank: usize,
    pub row_space: Basis<E>,
    pub col_space: Basis<E>,
    pub null_space: Basis<E>,
    pub left_null_space: Basis<E>,
}

/// Computes the four bases concurrently on scoped threads.
pub fn fundamental_subspaces<F: Field>(field: &F, a: &Matrix<F::Elem>) -> FundamentalSubspaces<F::Elem> {
    std::thread::scope(|s| {
        let row = s.spawn(|| basis_row_space(field, a));
        let col = s.spawn(|| basis_col_space(field, a));
        let null = s.spawn(|| basis_null_space(field, a));
        let left = basis_left_null_space(field, a);
        let row_space = row.join().expect("row space worker panicked");
        FundamentalSubspaces {
            rank: row_space.len(),
            row_space,
            col_space: col.join().expect("column space worker panicked"),
            null_space: null.join().expect("null space worker panicked"),
            left_null_space: left,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BigRational, Gf2, Gf2Field, RationalField};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n)
    }

    fn qd(n: i64, d: i64) -> BigRational {
        BigRational::new(n, d).unwrap()
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    fn vecs(b: &Basis<BigRational>) -> Vec<Vec<BigRational>> {
        b.vectors.iter().map(|v| v.as_slice().to_vec()).collect()
    }

    const F: RationalField = RationalField;

    #[test]
    fn rank_and_nullity() {
        let i3 = Matrix::identity(&F, 3).unwrap();
        let z = Matrix::zero(&F, 2, 4).unwrap();
        let r1 = qm(&[&[1, 2], &[2, 4]]);
        assert_eq!((rank(&F, &i3), nullity(&F, &i3)), (3, 0));
        assert_eq!((rank(&F, &z), nullity(&F, &z)), (0, 4));
        assert_eq!((rank(&F, &r1), nullity(&F, &r1)), (1, 1));
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&F, &Matrix::identity(&F, 4).unwrap()).unwrap(), q(1));
        assert_eq!(det(&F, &qm(&[&[1, 2], &[3, 4]])).unwrap(), q(-2));
        assert_eq!(det(&F, &qm(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])).unwrap(), q(-1));
        let g = Matrix::from_rows(vec![vec![Gf2::ONE; 2]; 2]).unwrap();
        assert_eq!(det(&Gf2Field, &g).unwrap(), Gf2::ZERO);
        assert!(det(&F, &qm(&[&[1, 2]])).is_err());
    }

    #[test]
    fn inverses() {
        let i2 = Matrix::identity(&F, 2).unwrap();
        assert_eq!(inverse(&F, &i2).unwrap(), Some(i2));
        let d = qm(&[&[2, 0], &[0, 4]]);
        let expect = Matrix::from_rows(vec![vec![qd(1, 2), q(0)], vec![q(0), qd(1, 4)]]).unwrap();
        assert_eq!(inverse(&F, &d).unwrap(), Some(expect));
        let a = qm(&[&[1, 2], &[3, 4]]);
        let expect = Matrix::from_rows(vec![vec![q(-2), q(1)], vec![qd(3, 2), qd(-1, 2)]]).unwrap();
        assert_eq!(inverse(&F, &a).unwrap(), Some(expect));
        assert_eq!(inverse(&F, &qm(&[&[1, 2], &[2, 4]])).unwrap(), None);
        assert!(inverse(&F, &qm(&[&[1, 2]])).is_err());
    }

    #[test]
    fn row_and_column_spaces() {
        let i2 = Matrix::identity(&F, 2).unwrap();
        assert_eq!(vecs(&basis_row_space(&F, &i2)), i2.to_rows());
        assert_eq!(vecs(&basis_col_space(&F, &i2)), i2.to_rows());
        assert!(basis_row_space(&F, &Matrix::zero(&F, 2, 3).unwrap()).is_empty());
        let a = qm(&[&[1, 2], &[2, 4]]);
        assert_eq!(vecs(&basis_row_space(&F, &a)), vec![vec![q(1), q(2)]]);
        assert_eq!(vecs(&basis_col_space(&F, &a)), vec![vec![q(1), q(2)]]);
        let wide = qm(&[&[1, 0, 3]]);
        assert_eq!(basis_col_space(&F, &wide).ambient_dim, 1);
        assert_eq!(basis_row_space(&F, &wide).ambient_dim, 3);
    }

    #[test]
    fn null_spaces() {
        assert!(basis_null_space(&F, &Matrix::identity(&F, 3).unwrap()).is_empty());
        assert!(basis_left_null_space(&F, &Matrix::identity(&F, 3).unwrap()).is_empty());
        let z = Matrix::zero(&F, 2, 3).unwrap();
        assert_eq!(basis_null_space(&F, &z).len(), 3);
        assert_eq!(basis_left_null_space(&F, &z).len(), 2);

        let a = qm(&[&[1, 1]]);
        let n = basis_null_space(&F, &a);
        assert_eq!(n.len(), 1);
        let v = &n.vectors[0];
        assert!(F.is_zero(&(v.get(0) + v.get(1))));
        assert!(!v.is_zero(&F));

        let col = qm(&[&[1], &[1]]);
        let ln = basis_left_null_space(&F, &col);
        assert_eq!(ln.len(), 1);
        let v = &ln.vectors[0];
        assert!(col.vec_mat_mul(&F, v).unwrap().is_zero(&F));
        assert!(!v.is_zero(&F));
    }

    #[test]
    fn all_four_together() {
        let a = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let s = fundamental_subspaces(&F, &a);
        assert_eq!(s.rank, 2);
        assert_eq!(s.row_space, basis_row_space(&F, &a));
        assert_eq!(s.col_space, basis_col_space(&F, &a));
        assert_eq!(s.null_space, basis_null_space(&F, &a));
        assert_eq!(s.left_null_space, basis_left_null_space(&F, &a));
        assert_eq!(s.null_space.len(), 1);
        assert_eq!(s.left_null_space.len(), 1);
    }
}
