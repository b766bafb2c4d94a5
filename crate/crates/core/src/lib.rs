//! Gauss-Jordan elimination with tracked elementary row operations.
//!
//! The kernel reduces a matrix to reduced row echelon form using only row
//! interchanges, row scalings and row additions, and can replay those
//! operations on an identity matrix or fold them into a determinant scalar.
//! On top of it sit rank, nullity, determinant, inverse, bases of the four
//! fundamental subspaces and a general linear-system solver, all generic over
//! a [`field::Field`]: GF(2), exact rationals, or `f64` with a zero threshold.
//!
//! ```
//! use gjla::field::{BigRational, RationalField};
//! use gjla::io::parse_matrix;
//!
//! let f = RationalField;
//! let a = parse_matrix("2 2\n1 2\n3 4\n", &f).unwrap();
//! assert_eq!(gjla::apps::det(&f, &a).unwrap(), BigRational::from_integer(-2));
//! assert_eq!(gjla::apps::rank(&f, &a), 2);
//! ```

pub mod apps;
pub mod bench;
pub mod cli;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod rref;
pub mod solver;

pub use error::{Error, Result};
pub use field::{ApproxReal, BigRational, Field, FieldKind, Gf2, Gf2Field, RationalField, RealField};
pub use matrix::{FuncMatrix, Matrix, Vector};
