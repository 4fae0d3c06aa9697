//! Exact arithmetic in the quadratic field `Q[φ]`, φ = (1 + √5) / 2.
//!
//! Every geometric quantity in this crate (directions, positions on the
//! golden L, holonomies) lives in this field. Elements are stored as
//! `a + bφ` with unbounded rational coefficients, so products of long
//! sequences of Veech-group matrices never overflow. Signs and comparisons
//! are decided with rational arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Floating point value of φ, for rendering only.
pub const PHI_F64: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero in Q[phi]")]
    DivisionByZero,
    #[error("matrix is singular (determinant is zero)")]
    SingularMatrix,
    #[error("cannot parse golden number from {0:?}")]
    Parse(String),
}

/// An element `a + bφ` of `Q[φ]`.
///
/// Coefficients are kept in lowest terms (this is what [`BigRational`]
/// guarantees), so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenNumber {
    a: BigRational,
    b: BigRational,
}

fn ri(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GoldenNumber {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        GoldenNumber { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenNumber::new(ri(a), ri(b))
    }

    /// `(an/ad) + (bn/bd)φ`. Panics if a denominator is zero.
    pub fn from_fractions(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        GoldenNumber::new(
            BigRational::new(an.into(), ad.into()),
            BigRational::new(bn.into(), bd.into()),
        )
    }

    pub fn from_rational(a: BigRational) -> Self {
        GoldenNumber::new(a, BigRational::zero())
    }

    pub fn zero() -> Self {
        GoldenNumber::default()
    }

    pub fn one() -> Self {
        GoldenNumber::from_ints(1, 0)
    }

    pub fn phi() -> Self {
        GoldenNumber::from_ints(0, 1)
    }

    /// φ² = 1 + φ.
    pub fn phi_squared() -> Self {
        GoldenNumber::from_ints(1, 1)
    }

    pub fn half() -> Self {
        GoldenNumber::from_fractions(1, 2, 0, 1)
    }

    /// Rational coefficient of 1.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Rational coefficient of φ.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate, sending φ to 1 − φ.
    pub fn conjugate(&self) -> Self {
        GoldenNumber::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `x · conj(x) = a² + ab − b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(GoldenNumber::new(c.a / &n, c.b / n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GoldenNumber::new(&self.a * r, &self.b * r)
    }

    /// Exact sign: −1, 0 or +1.
    ///
    /// With `2x = p + q√5`, `p = 2a + b`, `q = b`, the sign is immediate unless
    /// `p` and `q` have opposite signs, in which case `p²` is compared with `5q²`.
    pub fn sign(&self) -> i8 {
        let p = &self.a * ri(2) + &self.b;
        let q = &self.b;
        let sp = rsign(&p);
        let sq = rsign(q);
        if sp == 0 {
            return sq;
        }
        if sq == 0 || sp == sq {
            return sp;
        }
        // Mixed signs: the term with larger magnitude wins.
        match (&p * &p).cmp(&(q * q * ri(5))) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => unreachable!("sqrt(5) is irrational"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Double-precision approximation. Never used to make decisions.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * PHI_F64
    }

    /// Compact human form with a unicode φ, e.g. `3+2φ`, `-1/2φ`, `0`.
    pub fn to_pretty(&self) -> String {
        let mut s = String::new();
        if !self.a.is_zero() || self.b.is_zero() {
            s.push_str(&self.a.to_string());
        }
        if !self.b.is_zero() {
            let coeff = if self.b.abs().is_one() {
                String::new()
            } else {
                self.b.abs().to_string()
            };
            if s.is_empty() {
                if self.b.is_negative() {
                    s.push('-');
                }
            } else {
                s.push(if self.b.is_negative() { '-' } else { '+' });
            }
            s.push_str(&coeff);
            s.push('φ');
        }
        s
    }
}

fn rsign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl<'a> Add<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    /// `(a+bφ)(c+dφ) = (ac+bd) + (ad+bc+bd)φ`, using φ² = φ + 1.
    fn mul(self, rhs: &GoldenNumber) -> GoldenNumber {
        let bd = &self.b * &rhs.b;
        GoldenNumber::new(
            &self.a * &rhs.a + &bd,
            &self.a * &rhs.b + &self.b * &rhs.a + bd,
        )
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-&self.a, -&self.b)
    }
}

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-self.a, -self.b)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $m(self, rhs: GoldenNumber) -> GoldenNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $m(self, rhs: &GoldenNumber) -> GoldenNumber {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<GoldenNumber> for &'a GoldenNumber {
            type Output = GoldenNumber;
            fn $m(self, rhs: GoldenNumber) -> GoldenNumber {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&GoldenNumber> for GoldenNumber {
    fn add_assign(&mut self, rhs: &GoldenNumber) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&GoldenNumber> for GoldenNumber {
    fn sub_assign(&mut self, rhs: &GoldenNumber) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl From<i64> for GoldenNumber {
    fn from(n: i64) -> Self {
        GoldenNumber::from_ints(n, 0)
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoldenNumber({self})")
    }
}

/// Interchange form `a + b*phi`, e.g. `3 + 2*phi`, `-1/2 - 1/3*phi`.
impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}*phi", self.a, -&self.b)
        } else {
            write!(f, "{} + {}*phi", self.a, self.b)
        }
    }
}

/// Parses a rational such as `-3`, `7/2` or `+1/3`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(s.parse().ok()?),
    };
    Some(r)
}

impl FromStr for GoldenNumber {
    type Err = FieldError;

    /// Accepts `a`, `a + b*phi`, `a - b*phi`, `b*phi` and the unicode `φ`
    /// spelling (`3+2φ`). An omitted coefficient before phi means 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace("phi", "φ").replace("*φ", "φ");
        if t.is_empty() {
            return Err(err());
        }
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        // Split into signed terms at '+' / '-' that are not the leading sign.
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in t.char_indices() {
            if i > 0 && (c == '+' || c == '-') {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);
        for term in terms {
            if let Some(coeff) = term.strip_suffix('φ') {
                let c = match coeff {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    other => parse_rational(other).ok_or_else(err)?,
                };
                b += c;
            } else {
                a += parse_rational(term).ok_or_else(err)?;
            }
        }
        Ok(GoldenNumber::new(a, b))
    }
}

#[derive(Serialize, Deserialize)]
struct GoldenNumberRepr {
    a: String,
    b: String,
}

/// JSON form `{"a": "p/q", "b": "r/s"}` with decimal-string integers.
impl Serialize for GoldenNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GoldenNumberRepr {
            a: self.a.to_string(),
            b: self.b.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GoldenNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GoldenNumberRepr::deserialize(deserializer)?;
        let parse = |s: &str| {
            parse_rational(s)
                .ok_or_else(|| serde::de::Error::custom(format!("invalid rational {s:?}")))
        };
        Ok(GoldenNumber::new(parse(&repr.a)?, parse(&repr.b)?))
    }
}

/// A vector in `Q[φ]²`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GoldenVector {
    pub x: GoldenNumber,
    pub y: GoldenNumber,
}

impl GoldenVector {
    pub fn new(x: GoldenNumber, y: GoldenNumber) -> Self {
        GoldenVector { x, y }
    }

    pub fn from_ints(xa: i64, xb: i64, ya: i64, yb: i64) -> Self {
        GoldenVector::new(
            GoldenNumber::from_ints(xa, xb),
            GoldenNumber::from_ints(ya, yb),
        )
    }

    pub fn horizontal() -> Self {
        GoldenVector::new(GoldenNumber::one(), GoldenNumber::zero())
    }

    pub fn vertical() -> Self {
        GoldenVector::new(GoldenNumber::zero(), GoldenNumber::one())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, c: &GoldenNumber) -> Self {
        GoldenVector::new(&self.x * c, &self.y * c)
    }

    pub fn dot(&self, other: &Self) -> GoldenNumber {
        &self.x * &other.x + &self.y * &other.y
    }

    /// The 2D cross product `x₁y₂ − y₁x₂`.
    pub fn cross(&self, other: &Self) -> GoldenNumber {
        &self.x * &other.y - &self.y * &other.x
    }

    /// True if `self = c · other` for some c > 0.
    pub fn is_positive_multiple_of(&self, other: &Self) -> bool {
        !self.is_zero() && self.cross(other).is_zero() && self.dot(other).is_positive()
    }

    /// Coordinates swapped, i.e. the reflection across `y = x`.
    pub fn transposed(&self) -> Self {
        GoldenVector::new(self.y.clone(), self.x.clone())
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [self.x.to_f64(), self.y.to_f64()]
    }

    /// Coefficient quadruple `[x.a, x.b, y.a, y.b]` as rational strings.
    pub fn coefficients(&self) -> [String; 4] {
        [
            self.x.a().to_string(),
            self.x.b().to_string(),
            self.y.a().to_string(),
            self.y.b().to_string(),
        ]
    }
}

impl fmt::Debug for GoldenVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x.to_pretty(), self.y.to_pretty())
    }
}

impl fmt::Display for GoldenVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.x.to_pretty(), self.y.to_pretty())
    }
}

impl Add<&GoldenVector> for &GoldenVector {
    type Output = GoldenVector;
    fn add(self, rhs: &GoldenVector) -> GoldenVector {
        GoldenVector::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub<&GoldenVector> for &GoldenVector {
    type Output = GoldenVector;
    fn sub(self, rhs: &GoldenVector) -> GoldenVector {
        GoldenVector::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &GoldenVector {
    type Output = GoldenVector;
    fn neg(self) -> GoldenVector {
        GoldenVector::new(-&self.x, -&self.y)
    }
}

impl AddAssign<&GoldenVector> for GoldenVector {
    fn add_assign(&mut self, rhs: &GoldenVector) {
        self.x += &rhs.x;
        self.y += &rhs.y;
    }
}

/// A 2×2 matrix over `Q[φ]`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoldenMatrix {
    pub rows: [[GoldenNumber; 2]; 2],
}

impl GoldenMatrix {
    pub fn new(m00: GoldenNumber, m01: GoldenNumber, m10: GoldenNumber, m11: GoldenNumber) -> Self {
        GoldenMatrix {
            rows: [[m00, m01], [m10, m11]],
        }
    }

    /// Entries given as `(a, b)` pairs meaning `a + bφ`.
    pub fn from_ints(e: [[(i64, i64); 2]; 2]) -> Self {
        let g = |(a, b): (i64, i64)| GoldenNumber::from_ints(a, b);
        GoldenMatrix::new(g(e[0][0]), g(e[0][1]), g(e[1][0]), g(e[1][1]))
    }

    pub fn identity() -> Self {
        GoldenMatrix::from_ints([[(1, 0), (0, 0)], [(0, 0), (1, 0)]])
    }

    pub fn det(&self) -> GoldenNumber {
        let [[a, b], [c, d]] = &self.rows;
        a * d - b * c
    }

    pub fn mul(&self, rhs: &GoldenMatrix) -> GoldenMatrix {
        let [[a, b], [c, d]] = &self.rows;
        let [[e, f], [g, h]] = &rhs.rows;
        GoldenMatrix::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }

    pub fn apply(&self, v: &GoldenVector) -> GoldenVector {
        let [[a, b], [c, d]] = &self.rows;
        GoldenVector::new(a * &v.x + b * &v.y, c * &v.x + d * &v.y)
    }

    pub fn inverse(&self) -> Result<GoldenMatrix, FieldError> {
        let inv_det = self
            .det()
            .inverse()
            .map_err(|_| FieldError::SingularMatrix)?;
        let [[a, b], [c, d]] = &self.rows;
        Ok(GoldenMatrix::new(
            d * &inv_det,
            -(b * &inv_det),
            -(c * &inv_det),
            a * &inv_det,
        ))
    }

    pub fn column(&self, j: usize) -> GoldenVector {
        GoldenVector::new(self.rows[0][j].clone(), self.rows[1][j].clone())
    }
}

impl fmt::Debug for GoldenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.rows;
        write!(
            f,
            "(({}, {}), ({}, {}))",
            a.to_pretty(),
            b.to_pretty(),
            c.to_pretty(),
            d.to_pretty()
        )
    }
}
