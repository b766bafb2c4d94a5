//! Python bindings for `gjla`.
//!
//! A single `Matrix` class carries its field with it. Elements come back as
//! `int` (gf2), `fractions.Fraction` (rat) or `float` (real). Elements going
//! in are converted with `str()` and parsed by the field, so `Fraction`,
//! `int` and strings like `"3/4"` all work.

use gjla::apps::{self, Basis};
use gjla::bench;
use gjla::field::{self, Field, FieldKind, Gf2Field, RationalField, RealField};
use gjla::io;
use gjla::matrix::{Matrix as Dense, Vector};
use gjla::rref;
use gjla::solver;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::IntoPyObjectExt;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Element conversion to Python objects.
trait PyField: Field {
    fn to_py(&self, py: Python<'_>, x: &Self::Elem) -> PyResult<Py<PyAny>>;
    fn wrap(&self, a: Dense<Self::Elem>) -> AnyMatrix;
}

impl PyField for Gf2Field {
    fn to_py(&self, py: Python<'_>, x: &Self::Elem) -> PyResult<Py<PyAny>> {
        x.bit().into_py_any(py)
    }
    fn wrap(&self, a: Dense<Self::Elem>) -> AnyMatrix {
        AnyMatrix::Gf2(a)
    }
}

impl PyField for RationalField {
    fn to_py(&self, py: Python<'_>, x: &Self::Elem) -> PyResult<Py<PyAny>> {
        let fraction = py.import("fractions")?.getattr("Fraction")?;
        Ok(fraction.call1((x.to_string(),))?.unbind())
    }
    fn wrap(&self, a: Dense<Self::Elem>) -> AnyMatrix {
        AnyMatrix::Rat(a)
    }
}

impl PyField for RealField {
    fn to_py(&self, py: Python<'_>, x: &Self::Elem) -> PyResult<Py<PyAny>> {
        x.value().into_py_any(py)
    }
    fn wrap(&self, a: Dense<Self::Elem>) -> AnyMatrix {
        AnyMatrix::Real(*self, a)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum AnyMatrix {
    Gf2(Dense<field::Gf2>),
    Rat(Dense<field::BigRational>),
    Real(RealField, Dense<field::ApproxReal>),
}

/// Run `$body` with `$f` bound to the field and `$a` to the dense matrix.
macro_rules! dispatch {
    ($m:expr, |$f:ident, $a:ident| $body:expr) => {
        match $m {
            AnyMatrix::Gf2($a) => {
                let $f = &Gf2Field;
                $body
            }
            AnyMatrix::Rat($a) => {
                let $f = &RationalField;
                $body
            }
            AnyMatrix::Real(real, $a) => {
                let $f = real;
                $body
            }
        }
    };
}

fn real_field(eps: Option<f64>) -> PyResult<RealField> {
    match eps {
        Some(e) => RealField::new(e).map_err(value_error),
        None => Ok(RealField::default()),
    }
}

fn parse_kind(field: &str, eps: Option<f64>) -> PyResult<FieldKind> {
    let kind: FieldKind = field.parse().map_err(value_error)?;
    if eps.is_some() && kind != FieldKind::Real {
        return Err(PyValueError::new_err("eps only applies to the real field"));
    }
    Ok(kind)
}

fn rows_to_py<F: PyField>(py: Python<'_>, f: &F, a: &Dense<F::Elem>) -> PyResult<Vec<Vec<Py<PyAny>>>> {
    a.rows().map(|r| r.iter().map(|x| f.to_py(py, x)).collect()).collect()
}

fn vector_to_py<F: PyField>(py: Python<'_>, f: &F, v: &Vector<F::Elem>) -> PyResult<Vec<Py<PyAny>>> {
    v.as_slice().iter().map(|x| f.to_py(py, x)).collect()
}

fn basis_to_py<F: PyField>(py: Python<'_>, f: &F, b: &Basis<F::Elem>) -> PyResult<Vec<Vec<Py<PyAny>>>> {
    b.vectors.iter().map(|v| vector_to_py(py, f, v)).collect()
}

fn parse_elems<F: Field>(f: &F, items: &[Bound<'_, PyAny>]) -> PyResult<Vec<F::Elem>> {
    items
        .iter()
        .map(|x| f.parse(x.str()?.to_str()?.trim()).map_err(value_error))
        .collect()
}

fn from_py_rows<F: PyField>(f: &F, rows: &[Vec<Bound<'_, PyAny>>]) -> PyResult<AnyMatrix> {
    let parsed = rows.iter().map(|r| parse_elems(f, r)).collect::<PyResult<Vec<_>>>()?;
    Ok(f.wrap(Dense::from_rows(parsed).map_err(value_error)?))
}

/// Dense matrix over gf2, rat or real.
#[pyclass(name = "Matrix", module = "gjla_py", frozen)]
struct PyMatrix {
    inner: AnyMatrix,
}

impl PyMatrix {
    fn of(inner: AnyMatrix) -> Self {
        PyMatrix { inner }
    }
}

#[pymethods]
impl PyMatrix {
    /// Parse the text file format (`m n` header then rows).
    #[staticmethod]
    #[pyo3(signature = (text, field, eps=None))]
    fn parse(text: &str, field: &str, eps: Option<f64>) -> PyResult<Self> {
        let inner = match parse_kind(field, eps)? {
            FieldKind::Gf2 => AnyMatrix::Gf2(io::parse_matrix(text, &Gf2Field).map_err(value_error)?),
            FieldKind::Rat => AnyMatrix::Rat(io::parse_matrix(text, &RationalField).map_err(value_error)?),
            FieldKind::Real => {
                let f = real_field(eps)?;
                AnyMatrix::Real(f, io::parse_matrix(text, &f).map_err(value_error)?)
            }
        };
        Ok(Self::of(inner))
    }

    #[staticmethod]
    #[pyo3(signature = (rows, field, eps=None))]
    fn from_rows(rows: Vec<Vec<Bound<'_, PyAny>>>, field: &str, eps: Option<f64>) -> PyResult<Self> {
        let inner = match parse_kind(field, eps)? {
            FieldKind::Gf2 => from_py_rows(&Gf2Field, &rows)?,
            FieldKind::Rat => from_py_rows(&RationalField, &rows)?,
            FieldKind::Real => from_py_rows(&real_field(eps)?, &rows)?,
        };
        Ok(Self::of(inner))
    }

    /// Seeded random matrix, identical to the one the bench command draws.
    #[staticmethod]
    #[pyo3(signature = (m, n, field, seed=0, big_int=false))]
    fn random(m: usize, n: usize, field: &str, seed: u64, big_int: bool) -> PyResult<Self> {
        let kind = parse_kind(field, None)?;
        let inner = match kind {
            FieldKind::Rat if big_int => AnyMatrix::Rat(bench::random_big_int_matrix(m, n, seed).map_err(value_error)?),
            _ if big_int => return Err(PyValueError::new_err("big_int only applies to the rat field")),
            FieldKind::Gf2 => AnyMatrix::Gf2(bench::random_matrix(&Gf2Field, m, n, seed).map_err(value_error)?),
            FieldKind::Rat => AnyMatrix::Rat(bench::random_matrix(&RationalField, m, n, seed).map_err(value_error)?),
            FieldKind::Real => {
                let f = RealField::default();
                AnyMatrix::Real(f, bench::random_matrix(&f, m, n, seed).map_err(value_error)?)
            }
        };
        Ok(Self::of(inner))
    }

    #[getter]
    fn field(&self) -> &'static str {
        dispatch!(&self.inner, |f, _a| f.kind().name())
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        dispatch!(&self.inner, |_f, a| a.shape())
    }

    fn rows(&self, py: Python<'_>) -> PyResult<Vec<Vec<Py<PyAny>>>> {
        dispatch!(&self.inner, |f, a| rows_to_py(py, f, a))
    }

    fn transpose(&self) -> Self {
        dispatch!(&self.inner, |f, a| Self::of(f.wrap(a.transpose())))
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        match (&self.inner, &other.inner) {
            (AnyMatrix::Gf2(a), AnyMatrix::Gf2(b)) => Ok(Self::of(AnyMatrix::Gf2(a.mat_mul(&Gf2Field, b).map_err(value_error)?))),
            (AnyMatrix::Rat(a), AnyMatrix::Rat(b)) => Ok(Self::of(AnyMatrix::Rat(a.mat_mul(&RationalField, b).map_err(value_error)?))),
            (AnyMatrix::Real(f, a), AnyMatrix::Real(_, b)) => {
                Ok(Self::of(AnyMatrix::Real(*f, a.mat_mul(f, b).map_err(value_error)?)))
            }
            _ => Err(PyValueError::new_err("matrices are over different fields")),
        }
    }

    /// Returns `(rref, rank, pivot_cols)`.
    fn rref(&self) -> (Self, usize, Vec<usize>) {
        dispatch!(&self.inner, |f, a| {
            let r = rref::gauss_jordan(f, a);
            (Self::of(f.wrap(r.rref)), r.rank, r.pivot_cols)
        })
    }

    /// Returns `(P, rref)` with `P @ A == rref`.
    fn rref_tracked(&self) -> (Self, Self) {
        dispatch!(&self.inner, |f, a| {
            let t = rref::gauss_jordan_tracked(f, a);
            (Self::of(f.wrap(t.transform)), Self::of(f.wrap(t.rref)))
        })
    }

    fn is_rref(&self) -> bool {
        dispatch!(&self.inner, |f, a| rref::is_rref(f, a))
    }

    fn rank(&self) -> usize {
        dispatch!(&self.inner, |f, a| apps::rank(f, a))
    }

    fn nullity(&self) -> usize {
        dispatch!(&self.inner, |f, a| apps::nullity(f, a))
    }

    fn det(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        dispatch!(&self.inner, |f, a| f.to_py(py, &apps::det(f, a).map_err(value_error)?))
    }

    /// The inverse, or `None` when the matrix is singular.
    fn inverse(&self) -> PyResult<Option<Self>> {
        dispatch!(&self.inner, |f, a| Ok(apps::inverse(f, a).map_err(value_error)?.map(|p| Self::of(f.wrap(p)))))
    }

    /// Dict with `rank`, `row_space`, `col_space`, `null_space` and
    /// `left_null_space`; each basis is a list of vectors.
    fn bases<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        dispatch!(&self.inner, |f, a| {
            let s = apps::fundamental_subspaces(f, a);
            let d = PyDict::new(py);
            d.set_item("rank", s.rank)?;
            d.set_item("row_space", basis_to_py(py, f, &s.row_space)?)?;
            d.set_item("col_space", basis_to_py(py, f, &s.col_space)?)?;
            d.set_item("null_space", basis_to_py(py, f, &s.null_space)?)?;
            d.set_item("left_null_space", basis_to_py(py, f, &s.left_null_space)?)?;
            Ok(d)
        })
    }

    /// Solve `A x = b`. Returns a dict with `status` (`"INCONSISTENT"`,
    /// `"UNIQUE"` or `"INFINITE"`), `particular` and `null_basis` (both
    /// `None` when inconsistent).
    fn solve<'py>(&self, py: Python<'py>, b: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyDict>> {
        dispatch!(&self.inner, |f, a| {
            let rhs = Vector::new(parse_elems(f, &b)?).map_err(value_error)?;
            let s = solver::solve(f, a, &rhs).map_err(value_error)?;
            let d = PyDict::new(py);
            d.set_item("status", s.status.to_string())?;
            d.set_item("particular", s.particular.as_ref().map(|x| vector_to_py(py, f, x)).transpose()?)?;
            d.set_item("null_basis", s.null_basis.as_ref().map(|nb| basis_to_py(py, f, nb)).transpose()?)?;
            Ok(d)
        })
    }

    fn to_text(&self) -> String {
        dispatch!(&self.inner, |f, a| io::format_matrix(a, f))
    }

    fn __eq__(&self, other: &PyMatrix) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        let (m, n) = self.shape();
        format!("Matrix({m}x{n}, field={}, rows={:?})", self.field(), self.to_text().lines().skip(1).collect::<Vec<_>>())
    }
}

/// Randomized field axiom check. Returns `(clean, report)`.
#[pyfunction]
#[pyo3(signature = (field, samples=1000, seed=42, eps=None))]
fn field_laws_check(field: &str, samples: usize, seed: u64, eps: Option<f64>) -> PyResult<(bool, String)> {
    let report = match parse_kind(field, eps)? {
        FieldKind::Gf2 => field::field_laws_check(&Gf2Field, samples, seed),
        FieldKind::Rat => field::field_laws_check(&RationalField, samples, seed),
        FieldKind::Real => field::field_laws_check(&real_field(eps)?, samples, seed),
    };
    Ok((report.is_clean(), report.to_string()))
}

#[pymodule]
fn gjla_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(field_laws_check, m)?)?;
    Ok(())
}
