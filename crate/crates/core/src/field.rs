//! Scalar fields.
//!
//! A [`Field`] is a small context value that performs arithmetic on its
//! element type. Elements themselves are plain values; configuration that is
//! shared by every element of a run (the zero threshold of [`RealField`]) lives
//! on the context, not on the elements.
//!
//! Three instances are provided:
//!
//! * [`Gf2Field`] over [`Gf2`], integers `0`/`1` with XOR and AND.
//! * [`RationalField`] over [`BigRational`], arbitrary-precision quotients kept
//!   in lowest terms with a positive denominator.
//! * [`RealField`] over [`ApproxReal`], `f64` values where anything within
//!   `epsilon` of zero counts as zero.

use std::fmt;
use std::str::FromStr;

use std::ops::{Add, Mul, Neg, Sub};

use dashu_int::ops::UnsignedAbs;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use rand::Rng;

use crate::error::{Error, Result};

/// Default absolute zero threshold for [`RealField`].
pub const DEFAULT_EPSILON: f64 = 1e-12;

/// Residual tolerance used when checking approximate results.
pub const APPROX_RESIDUAL_TOL: f64 = 1e-8;

/// Runtime tag for the three supported fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Gf2,
    Rat,
    Real,
}

impl FieldKind {
    pub const ALL: [FieldKind; 3] = [FieldKind::Gf2, FieldKind::Rat, FieldKind::Real];

    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Gf2 => "gf2",
            FieldKind::Rat => "rat",
            FieldKind::Real => "real",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gf2" => Ok(FieldKind::Gf2),
            "rat" => Ok(FieldKind::Rat),
            "real" => Ok(FieldKind::Real),
            other => Err(Error::Domain(format!(
                "unknown field `{other}` (expected gf2, rat or real)"
            ))),
        }
    }
}

/// Arithmetic context for a field.
///
/// Implementations must be pure: every method is a function of its arguments
/// and of the (immutable) context.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn kind(&self) -> FieldKind;

    /// `false` for floating point, where results are only approximately right.
    fn is_exact(&self) -> bool {
        true
    }

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Multiplicative inverse; fails with [`Error::DivisionByZero`] when `is_zero(a)`.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a + c * b`, the inner update of a row addition.
    fn mul_add(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(c, b))
    }

    /// Field equality. Exact fields compare structurally; [`RealField`]
    /// compares the difference against its threshold.
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    /// Replace values that count as zero by the exact zero.
    fn snap(&self, a: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) {
            self.zero()
        } else {
            a.clone()
        }
    }

    /// Residual test used by verifiers. Stricter than needed for exact
    /// fields (where it is `is_zero`), looser for approximate ones.
    fn is_negligible(&self, a: &Self::Elem) -> bool {
        self.is_zero(a)
    }

    fn parse(&self, text: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;

    /// Draw a random element: uniform bits for GF(2); numerator in
    /// `[-10^4, 10^4]` over denominator in `[1, 100]` for rationals; uniform
    /// in `[-1, 1]` for reals.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

// ---------------------------------------------------------------------------
// GF(2)

/// Element of the two-element field, stored as the integer 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2(u8);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(0);
    pub const ONE: Gf2 = Gf2(1);

    pub fn new(bit: u8) -> Result<Self> {
        match bit {
            0 | 1 => Ok(Gf2(bit)),
            _ => Err(Error::Domain(format!("{bit} is not a GF(2) value"))),
        }
    }

    pub fn from_bool(b: bool) -> Self {
        Gf2(b as u8)
    }

    pub fn bit(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Gf2Field;

impl Field for Gf2Field {
    type Elem = Gf2;

    fn kind(&self) -> FieldKind {
        FieldKind::Gf2
    }
    fn zero(&self) -> Gf2 {
        Gf2::ZERO
    }
    fn one(&self) -> Gf2 {
        Gf2::ONE
    }
    #[inline]
    fn add(&self, a: &Gf2, b: &Gf2) -> Gf2 {
        Gf2(a.0 ^ b.0)
    }
    #[inline]
    fn sub(&self, a: &Gf2, b: &Gf2) -> Gf2 {
        Gf2(a.0 ^ b.0)
    }
    #[inline]
    fn mul(&self, a: &Gf2, b: &Gf2) -> Gf2 {
        Gf2(a.0 & b.0)
    }
    #[inline]
    fn mul_add(&self, a: &Gf2, c: &Gf2, b: &Gf2) -> Gf2 {
        Gf2(a.0 ^ (c.0 & b.0))
    }
    fn neg(&self, a: &Gf2) -> Gf2 {
        *a
    }
    #[inline]
    fn is_zero(&self, a: &Gf2) -> bool {
        a.0 == 0
    }
    fn eq(&self, a: &Gf2, b: &Gf2) -> bool {
        a == b
    }
    fn inv(&self, a: &Gf2) -> Result<Gf2> {
        if a.0 == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(*a)
        }
    }

    fn parse(&self, text: &str) -> Result<Gf2> {
        let digits = scan_digits(text, 0)?;
        if digits != text.len() {
            return Err(Error::Malformed {
                position: digits,
                message: format!("unexpected character in GF(2) element `{text}`"),
            });
        }
        match text {
            "0" => Ok(Gf2::ZERO),
            "1" => Ok(Gf2::ONE),
            _ => Err(Error::Domain(format!("`{text}` is not 0 or 1"))),
        }
    }

    fn format(&self, a: &Gf2) -> String {
        a.to_string()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf2 {
        Gf2(rng.gen_range(0..=1))
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator, so `==` is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BigRational(RBig);

impl BigRational {
    pub fn new(numer: impl Into<IBig>, denom: impl Into<IBig>) -> Result<Self> {
        let (numer, denom) = (numer.into(), denom.into());
        if denom == IBig::ZERO {
            return Err(Error::Domain("zero denominator".into()));
        }
        let numer = if denom < IBig::ZERO { -numer } else { numer };
        Ok(BigRational(RBig::from_parts(numer, denom.unsigned_abs())))
    }

    pub fn from_integer(n: impl Into<IBig>) -> Self {
        BigRational(RBig::from(n.into()))
    }

    pub fn numer(&self) -> &IBig {
        self.0.numerator()
    }

    pub fn denom(&self) -> &UBig {
        self.0.denominator()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_int()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == RBig::ZERO
    }
}

impl fmt::Display for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<i64> for BigRational {
    fn from(n: i64) -> Self {
        BigRational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&BigRational> for &BigRational {
            type Output = BigRational;
            fn $method(self, rhs: &BigRational) -> BigRational {
                BigRational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait for BigRational {
            type Output = BigRational;
            fn $method(self, rhs: BigRational) -> BigRational {
                BigRational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        BigRational(-&self.0)
    }
}

impl Neg for BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        BigRational(-self.0)
    }
}

/// Exact rationals over [`BigRational`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rat
    }
    fn zero(&self) -> BigRational {
        BigRational(RBig::ZERO)
    }
    fn one(&self) -> BigRational {
        BigRational(RBig::ONE)
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn mul_add(&self, a: &BigRational, c: &BigRational, b: &BigRational) -> BigRational {
        if c.is_zero() || b.is_zero() {
            a.clone()
        } else {
            a + &(c * b)
        }
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn eq(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(BigRational(RBig::ONE / &a.0))
        }
    }

    fn parse(&self, text: &str) -> Result<BigRational> {
        let mut pos = 0;
        if text.starts_with(['+', '-']) {
            pos = 1;
        }
        let num_end = scan_digits(text, pos)?;
        let numer: IBig = text[..num_end]
            .trim_start_matches('+')
            .parse()
            .expect("scanned digits parse as an integer");
        if num_end == text.len() {
            return Ok(BigRational::from_integer(numer));
        }
        if !text[num_end..].starts_with('/') {
            return Err(Error::Malformed {
                position: num_end,
                message: format!("expected `/` or end of rational `{text}`"),
            });
        }
        let den_end = scan_digits(text, num_end + 1)?;
        if den_end != text.len() {
            return Err(Error::Malformed {
                position: den_end,
                message: format!("unexpected character in rational `{text}`"),
            });
        }
        let denom: IBig = text[num_end + 1..]
            .parse()
            .expect("scanned digits parse as an integer");
        BigRational::new(numer, denom).map_err(|_| Error::Domain(format!("zero denominator in `{text}`")))
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let numer: i64 = rng.gen_range(-10_000..=10_000);
        let denom: i64 = rng.gen_range(1..=100);
        BigRational::new(numer, denom).expect("denominator is positive")
    }
}

// ---------------------------------------------------------------------------
// Approximate reals

/// A finite `f64`. Zero detection is done by [`RealField`], not by the value.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct ApproxReal(f64);

impl ApproxReal {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(ApproxReal(value))
        } else {
            Err(Error::Domain(format!("{value} is not a finite real")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Double precision arithmetic with an absolute zero threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealField {
    epsilon: f64,
}

impl Default for RealField {
    fn default() -> Self {
        RealField {
            epsilon: DEFAULT_EPSILON,
        }
    }
}

impl RealField {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon.is_finite() && epsilon >= 0.0 {
            Ok(RealField { epsilon })
        } else {
            Err(Error::Domain(format!(
                "epsilon must be a finite non-negative number, got {epsilon}"
            )))
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

impl Field for RealField {
    type Elem = ApproxReal;

    fn kind(&self) -> FieldKind {
        FieldKind::Real
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn zero(&self) -> ApproxReal {
        ApproxReal(0.0)
    }
    fn one(&self) -> ApproxReal {
        ApproxReal(1.0)
    }
    #[inline]
    fn add(&self, a: &ApproxReal, b: &ApproxReal) -> ApproxReal {
        ApproxReal(a.0 + b.0)
    }
    #[inline]
    fn sub(&self, a: &ApproxReal, b: &ApproxReal) -> ApproxReal {
        ApproxReal(a.0 - b.0)
    }
    #[inline]
    fn mul(&self, a: &ApproxReal, b: &ApproxReal) -> ApproxReal {
        ApproxReal(a.0 * b.0)
    }
    fn neg(&self, a: &ApproxReal) -> ApproxReal {
        ApproxReal(-a.0)
    }
    #[inline]
    fn is_zero(&self, a: &ApproxReal) -> bool {
        a.0.abs() <= self.epsilon
    }
    fn is_negligible(&self, a: &ApproxReal) -> bool {
        a.0.abs() <= APPROX_RESIDUAL_TOL.max(self.epsilon)
    }
    fn inv(&self, a: &ApproxReal) -> Result<ApproxReal> {
        if self.is_zero(a) {
            Err(Error::DivisionByZero)
        } else {
            Ok(ApproxReal(1.0 / a.0))
        }
    }

    fn parse(&self, text: &str) -> Result<ApproxReal> {
        let end = scan_decimal(text)?;
        if end != text.len() {
            return Err(Error::Malformed {
                position: end,
                message: format!("unexpected character in real `{text}`"),
            });
        }
        let value: f64 = text.parse().map_err(|e| Error::Malformed {
            position: 0,
            message: format!("{e}"),
        })?;
        ApproxReal::new(value)
    }

    /// Shortest representation that parses back to the same `f64`.
    fn format(&self, a: &ApproxReal) -> String {
        format!("{:?}", a.0)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ApproxReal {
        ApproxReal(rng.gen_range(-1.0..=1.0))
    }
}

// ---------------------------------------------------------------------------
// Token scanners

/// Scan one or more ASCII digits starting at `start`; returns the end offset.
fn scan_digits(text: &str, start: usize) -> Result<usize> {
    let end = start
        + text.as_bytes()[start.min(text.len())..]
            .iter()
            .take_while(|b| b.is_ascii_digit())
            .count();
    if end == start {
        return Err(Error::Malformed {
            position: start,
            message: if text.is_empty() {
                "empty element".to_string()
            } else {
                format!("expected a digit in `{text}`")
            },
        });
    }
    Ok(end)
}

/// `[+-]? (digits ('.' digits?)? | '.' digits) ([eE] [+-]? digits)?`
fn scan_decimal(text: &str) -> Result<usize> {
    let bytes = text.as_bytes();
    let count_digits = |from: usize| bytes[from..].iter().take_while(|b| b.is_ascii_digit()).count();
    let mut pos = 0;
    if matches!(bytes.first(), Some(b'+' | b'-')) {
        pos += 1;
    }
    let int_digits = count_digits(pos);
    pos += int_digits;
    let mut frac_digits = 0;
    if bytes.get(pos) == Some(&b'.') {
        frac_digits = count_digits(pos + 1);
        pos += 1 + frac_digits;
    }
    if int_digits + frac_digits == 0 {
        return Err(Error::Malformed {
            position: pos.min(text.len()),
            message: format!("expected a decimal number in `{text}`"),
        });
    }
    if matches!(bytes.get(pos), Some(b'e' | b'E')) {
        let mut exp = pos + 1;
        if matches!(bytes.get(exp), Some(b'+' | b'-')) {
            exp += 1;
        }
        exp = scan_digits(text, exp)?;
        pos = exp;
    }
    Ok(pos)
}

// ---------------------------------------------------------------------------
// Law checking

/// One violated field law with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub law: &'static str,
    pub witness: String,
    /// How many sampled triples violated this law.
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub field: FieldKind,
    pub samples: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LAWS {} {} samples", self.field, self.samples)?;
        if self.violations.is_empty() {
            return writeln!(f, "OK");
        }
        for v in &self.violations {
            writeln!(f, "VIOLATED {} ({}x): {}", v.law, v.count, v.witness)?;
        }
        Ok(())
    }
}

/// Randomized check of the field axioms on `samples` triples drawn with
/// [`Field::sample`]. Comparisons use `==` on elements (bitwise for reals),
/// so floating point rounding shows up as violations.
pub fn field_laws_check<F: Field>(field: &F, samples: usize, seed: u64) -> LawReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut violations: Vec<LawViolation> = Vec::new();
    let mut record = |law: &'static str, witness: String| {
        match violations.iter_mut().find(|v| v.law == law) {
            Some(v) => v.count += 1,
            None => violations.push(LawViolation {
                law,
                witness,
                count: 1,
            }),
        }
    };

    let zero = field.zero();
    let one = field.one();
    if !field.is_zero(&zero) {
        record("zero is zero", field.format(&zero));
    }
    if field.is_zero(&one) {
        record("one is nonzero", field.format(&one));
    }

    for _ in 0..samples.max(1) {
        let a = field.sample(&mut rng);
        let b = field.sample(&mut rng);
        let c = field.sample(&mut rng);
        let show = |xs: &[&F::Elem]| {
            xs.iter()
                .map(|x| field.format(x))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let ab = field.add(&a, &b);
        let bc = field.add(&b, &c);

        if ab != field.add(&b, &a) {
            record("addition is commutative", show(&[&a, &b]));
        }
        if field.add(&ab, &c) != field.add(&a, &bc) {
            record("addition is associative", show(&[&a, &b, &c]));
        }
        if field.mul(&a, &b) != field.mul(&b, &a) {
            record("multiplication is commutative", show(&[&a, &b]));
        }
        if field.mul(&field.mul(&a, &b), &c) != field.mul(&a, &field.mul(&b, &c)) {
            record("multiplication is associative", show(&[&a, &b, &c]));
        }
        if field.mul(&a, &bc) != field.add(&field.mul(&a, &b), &field.mul(&a, &c)) {
            record("multiplication distributes over addition", show(&[&a, &b, &c]));
        }
        if field.add(&a, &zero) != a {
            record("zero is an additive identity", show(&[&a]));
        }
        if field.mul(&a, &one) != a {
            record("one is a multiplicative identity", show(&[&a]));
        }
        if field.add(&a, &field.neg(&a)) != zero {
            record("additive inverses exist", show(&[&a]));
        }
        if !field.is_zero(&a) {
            match field.inv(&a) {
                Ok(inv) => {
                    if field.mul(&a, &inv) != one {
                        record("multiplicative inverses exist", show(&[&a]));
                    }
                }
                Err(_) => record("multiplicative inverses exist", show(&[&a])),
            }
        }
        if !field.is_zero(&b) {
            let q = field.div(&a, &b);
            let p = field.inv(&b).map(|ib| field.mul(&a, &ib));
            if q != p {
                record("division is multiplication by the inverse", show(&[&a, &b]));
            }
        }
    }

    LawReport {
        field: field.kind(),
        samples,
        violations,
    }
}
