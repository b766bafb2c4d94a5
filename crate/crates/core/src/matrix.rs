//! Dense matrices, vectors and elementary row operations.
//!
//! [`Matrix`] is row-major dense storage. [`FuncMatrix`] is the pointwise
//! representation: a matrix is a total lookup function over its index range,
//! and every operation builds a new function from the old one. The two must
//! agree observationally; tests compare them operation by operation.
//!
//! Indices are zero-based and both dimensions are at least one.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<E> {
    nrows: usize,
    ncols: usize,
    data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.ncols)).finish()
    }
}

fn check_dims(nrows: usize, ncols: usize) -> Result<()> {
    if nrows == 0 || ncols == 0 {
        return Err(Error::Shape(format!(
            "matrices must have at least one row and one column, got {nrows}x{ncols}"
        )));
    }
    Ok(())
}

impl<E: Clone> Matrix<E> {
    /// Build from row-major entries.
    pub fn new(nrows: usize, ncols: usize, data: Vec<E>) -> Result<Self> {
        check_dims(nrows, ncols)?;
        if data.len() != nrows * ncols {
            return Err(Error::Shape(format!(
                "{nrows}x{ncols} matrix needs {} entries, got {}",
                nrows * ncols,
                data.len()
            )));
        }
        Ok(Matrix { nrows, ncols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        check_dims(nrows, ncols)?;
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
            return Err(Error::Shape(format!(
                "row {i} has {} entries, expected {ncols}",
                r.len()
            )));
        }
        Ok(Matrix {
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> E) -> Result<Self> {
        check_dims(nrows, ncols)?;
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Ok(Matrix { nrows, ncols, data })
    }

    pub fn zero<F: Field<Elem = E>>(field: &F, nrows: usize, ncols: usize) -> Result<Self> {
        Self::from_fn(nrows, ncols, |_, _| field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        assert!(i < self.nrows && j < self.ncols, "index ({i}, {j}) out of range");
        &self.data[i * self.ncols + j]
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> + '_ {
        self.data.chunks(self.ncols)
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.rows().map(<[E]>::to_vec).collect()
    }

    pub fn map<T: Clone>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            nrows: self.ncols,
            ncols: self.nrows,
            data,
        }
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.ncols {
            return Err(Error::Shape(format!(
                "cannot stack {} columns on {} columns",
                self.ncols, other.ncols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            data,
        })
    }

    /// Append `column` as a new last column.
    pub fn augment(&self, column: &Vector<E>) -> Result<Self> {
        if column.len() != self.nrows {
            return Err(Error::Shape(format!(
                "column of length {} does not fit {} rows",
                column.len(),
                self.nrows
            )));
        }
        Self::from_fn(self.nrows, self.ncols + 1, |i, j| {
            if j < self.ncols {
                self.get(i, j).clone()
            } else {
                column.get(i).clone()
            }
        })
    }

    pub fn is_zero_row<F: Field<Elem = E>>(&self, field: &F, i: usize) -> bool {
        self.row(i).iter().all(|x| field.is_zero(x))
    }

    /// Entrywise field equality (thresholded for approximate fields).
    pub fn approx_eq<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.shape() == other.shape()
            && self.data.iter().zip(&other.data).all(|(a, b)| field.eq(a, b))
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i >= self.nrows {
            return Err(Error::Bounds {
                index: i,
                len: self.nrows,
            });
        }
        Ok(())
    }

    /// Swap rows `i` and `j`.
    pub fn interchange_rows(&self, i: usize, j: usize) -> Result<Self> {
        self.check_row(i)?;
        self.check_row(j)?;
        let mut out = self.clone();
        out.swap_rows_mut(i, j);
        Ok(out)
    }

    /// Scale row `i` by `c`.
    pub fn mult_row<F: Field<Elem = E>>(&self, field: &F, i: usize, c: &E) -> Result<Self> {
        self.check_row(i)?;
        let mut out = self.clone();
        out.scale_row_mut(field, i, c);
        Ok(out)
    }

    /// Replace row `t` with `row t + c * row l`. Requires `t != l`.
    pub fn row_add<F: Field<Elem = E>>(&self, field: &F, t: usize, l: usize, c: &E) -> Result<Self> {
        self.check_row(t)?;
        self.check_row(l)?;
        if t == l {
            return Err(Error::Contract(format!(
                "row_add needs distinct rows, got {t} twice"
            )));
        }
        let mut out = self.clone();
        let source = out.row(l).to_vec();
        out.add_scaled_row_mut(field, t, &source, c);
        Ok(out)
    }

    pub fn mat_mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Self::from_fn(self.nrows, other.ncols, |i, j| {
            (0..self.ncols).fold(field.zero(), |acc, k| {
                field.mul_add(&acc, self.get(i, k), other.get(k, j))
            })
        })
    }

    pub fn mat_vec_mul<F: Field<Elem = E>>(&self, field: &F, x: &Vector<E>) -> Result<Vector<E>> {
        if self.ncols != x.len() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by a vector of length {}",
                self.nrows,
                self.ncols,
                x.len()
            )));
        }
        let entries = self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(x.as_slice())
                    .fold(field.zero(), |acc, (a, b)| field.mul_add(&acc, a, b))
            })
            .collect();
        Ok(Vector { entries })
    }

    /// `x^T * self`, a row vector of length `ncols`.
    pub fn vec_mat_mul<F: Field<Elem = E>>(&self, field: &F, x: &Vector<E>) -> Result<Vector<E>> {
        if self.nrows != x.len() {
            return Err(Error::Shape(format!(
                "cannot multiply a vector of length {} by {}x{}",
                x.len(),
                self.nrows,
                self.ncols
            )));
        }
        let entries = (0..self.ncols)
            .map(|j| {
                (0..self.nrows).fold(field.zero(), |acc, i| {
                    field.mul_add(&acc, x.get(i), self.get(i, j))
                })
            })
            .collect();
        Ok(Vector { entries })
    }

    pub fn to_func(&self) -> FuncMatrix<E>
    where
        E: Send + Sync + 'static,
    {
        let snapshot = Arc::new(self.clone());
        FuncMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            lookup: Arc::new(move |i, j| snapshot.get(i, j).clone()),
        }
    }

    pub fn from_func(f: &FuncMatrix<E>) -> Self
    where
        E: Send + Sync + 'static,
    {
        Matrix::from_fn(f.nrows, f.ncols, |i, j| f.get(i, j)).expect("FuncMatrix dimensions are non-zero")
    }

    // In-place kernels used by elimination. Callers check indices.

    pub(crate) fn swap_rows_mut(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let n = self.ncols;
        let (head, tail) = self.data.split_at_mut(hi * n);
        head[lo * n..(lo + 1) * n].swap_with_slice(&mut tail[..n]);
    }

    pub(crate) fn scale_row_mut<F: Field<Elem = E>>(&mut self, field: &F, i: usize, c: &E) {
        let n = self.ncols;
        for x in &mut self.data[i * n..(i + 1) * n] {
            *x = field.mul(c, x);
        }
    }

    pub(crate) fn add_scaled_row_mut<F: Field<Elem = E>>(&mut self, field: &F, t: usize, source: &[E], c: &E) {
        let n = self.ncols;
        for (x, s) in self.data[t * n..(t + 1) * n].iter_mut().zip(source) {
            *x = field.mul_add(x, c, s);
        }
    }
}

/// A dense vector of length at least one.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<E> {
    entries: Vec<E>,
}

impl<E: Clone> Vector<E> {
    pub fn new(entries: Vec<E>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Shape("vectors must have at least one entry".into()));
        }
        Ok(Vector { entries })
    }

    pub fn zero<F: Field<Elem = E>>(field: &F, len: usize) -> Result<Self> {
        Self::new(vec![field.zero(); len])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> &E {
        &self.entries[i]
    }

    pub fn as_slice(&self) -> &[E] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<E> {
        self.entries
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.entries.iter().all(|x| field.is_zero(x))
    }

    pub fn is_negligible<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.entries.iter().all(|x| field.is_negligible(x))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| field.sub(a, b))
                .collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Vector {
            entries: self.entries.iter().map(|x| field.mul(c, x)).collect(),
        }
    }
}

type Lookup<E> = Arc<dyn Fn(usize, usize) -> E + Send + Sync>;

/// A matrix given by its entry function.
///
/// Operations compose closures, so entries are recomputed on every lookup.
/// [`FuncMatrix::memoize`] evaluates the function once and answers later
/// lookups from the table; long operation chains use it to stay linear.
#[derive(Clone)]
pub struct FuncMatrix<E> {
    nrows: usize,
    ncols: usize,
    lookup: Lookup<E>,
}

impl<E: fmt::Debug + Clone + Send + Sync + 'static> fmt::Debug for FuncMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FuncMatrix")
            .field("nrows", &self.nrows)
            .field("ncols", &self.ncols)
            .finish_non_exhaustive()
    }
}

impl<E: Clone + Send + Sync + 'static> FuncMatrix<E> {
    pub fn new(
        nrows: usize,
        ncols: usize,
        lookup: impl Fn(usize, usize) -> E + Send + Sync + 'static,
    ) -> Result<Self> {
        check_dims(nrows, ncols)?;
        Ok(FuncMatrix {
            nrows,
            ncols,
            lookup: Arc::new(lookup),
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> E {
        assert!(i < self.nrows && j < self.ncols, "index ({i}, {j}) out of range");
        (self.lookup)(i, j)
    }

    fn with_lookup(&self, lookup: impl Fn(usize, usize) -> E + Send + Sync + 'static) -> Self {
        FuncMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            lookup: Arc::new(lookup),
        }
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i >= self.nrows {
            return Err(Error::Bounds {
                index: i,
                len: self.nrows,
            });
        }
        Ok(())
    }

    pub fn interchange_rows(&self, i: usize, j: usize) -> Result<Self> {
        self.check_row(i)?;
        self.check_row(j)?;
        let prev = Arc::clone(&self.lookup);
        Ok(self.with_lookup(move |r, c| {
            let src = if r == i {
                j
            } else if r == j {
                i
            } else {
                r
            };
            prev(src, c)
        }))
    }

    pub fn mult_row<F: Field<Elem = E>>(&self, field: &F, i: usize, c: &E) -> Result<Self> {
        self.check_row(i)?;
        let (prev, field, c) = (Arc::clone(&self.lookup), field.clone(), c.clone());
        Ok(self.with_lookup(move |r, col| {
            if r == i {
                field.mul(&c, &prev(r, col))
            } else {
                prev(r, col)
            }
        }))
    }

    pub fn row_add<F: Field<Elem = E>>(&self, field: &F, t: usize, l: usize, c: &E) -> Result<Self> {
        self.check_row(t)?;
        self.check_row(l)?;
        if t == l {
            return Err(Error::Contract(format!(
                "row_add needs distinct rows, got {t} twice"
            )));
        }
        let (prev, field, c) = (Arc::clone(&self.lookup), field.clone(), c.clone());
        Ok(self.with_lookup(move |r, col| {
            if r == t {
                field.mul_add(&prev(t, col), &c, &prev(l, col))
            } else {
                prev(r, col)
            }
        }))
    }

    pub fn transpose(&self) -> Self {
        let prev = Arc::clone(&self.lookup);
        FuncMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            lookup: Arc::new(move |i, j| prev(j, i)),
        }
    }

    /// Tabulate every entry once; the result looks entries up by index.
    pub fn memoize(&self) -> Self {
        let table: Vec<E> = (0..self.nrows)
            .flat_map(|i| (0..self.ncols).map(move |j| (i, j)))
            .map(|(i, j)| (self.lookup)(i, j))
            .collect();
        let ncols = self.ncols;
        self.with_lookup(move |i, j| table[i * ncols + j].clone())
    }
}
