//! Exact arithmetic over rationals extended by a single square root.
//!
//! A [`Scalar`] is either a rational, a value `q + r*sqrt(d)` in a quadratic
//! field, or a flagged double-precision float. Operations between values in
//! the same field (or with plain rationals) stay exact; anything that would
//! need two different radicands degrades to a float, and the result carries
//! that flag forever.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

/// Largest prime tried when extracting square factors from a radicand.
const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative value {0}")]
    NegativeSqrt(String),
    #[error("radicand has a prime factor above {TRIAL_DIVISION_BOUND}")]
    RadicandTooLarge,
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

/// Exact number `q + r*sqrt(d)` with float fallback.
///
/// Canonical form: the `Surd` variant always has `r != 0` and `d` square-free
/// with `d >= 2`; a value with no surd part is stored as `Rational`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(Rational),
    Surd { q: Rational, r: Rational, d: u64 },
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(v: Rational) -> Self {
        Scalar::Rational(v)
    }

    /// `q + r*sqrt(d)` brought to canonical form (square factors of `d`
    /// folded into `r`).
    pub fn surd(q: Rational, r: Rational, d: u64) -> Result<Self, AlgebraError> {
        if r.is_zero() || d == 0 {
            return Ok(Scalar::Rational(q));
        }
        let (square, free) = split_square_factor(&BigInt::from(d))?;
        let free = free.to_u64().expect("square-free part fits input");
        if free == 1 {
            Ok(Scalar::Rational(q + r * Rational::from_integer(square)))
        } else {
            Ok(Scalar::Surd {
                q,
                r: r * Rational::from_integer(square),
                d: free,
            })
        }
    }

    pub fn float(v: f64) -> Self {
        Scalar::Float(v)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Float(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Surd { .. } => false,
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => rational_to_f64(q),
            Scalar::Surd { q, r, d } => {
                rational_to_f64(q) + rational_to_f64(r) * (*d as f64).sqrt()
            }
            Scalar::Float(v) => *v,
        }
    }

    /// Sign of the real value: -1, 0 or 1.
    pub fn sgn(&self) -> i32 {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    0
                } else if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Surd { q, r, d } => surd_sign(q, r, *d),
            Scalar::Float(v) => {
                if *v > 0.0 {
                    1
                } else if *v < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.sgn() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Total order agreeing with the real values.
    pub fn compare(&self, other: &Scalar) -> Ordering {
        let diff = self.clone() - other.clone();
        match diff.sgn() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a / b),
            (Scalar::Surd { q, r, d }, Scalar::Rational(b)) => Scalar::Surd {
                q: q / b,
                r: r / b,
                d: *d,
            },
            (Scalar::Rational(a), Scalar::Surd { q, r, d }) => {
                // a / (q + r*sqrt(d)) via the conjugate; the norm q^2 - r^2 d
                // is nonzero because sqrt(d) is irrational.
                let norm = q * q - r * r * Rational::from_integer(BigInt::from(*d));
                canonical(a * q / &norm, -(a * r) / &norm, *d)
            }
            (
                Scalar::Surd { q: q1, r: r1, d: d1 },
                Scalar::Surd { q: q2, r: r2, d: d2 },
            ) if d1 == d2 => {
                let d = Rational::from_integer(BigInt::from(*d1));
                let norm = q2 * q2 - r2 * r2 * &d;
                let q = (q1 * q2 - r1 * r2 * &d) / &norm;
                let r = (r1 * q2 - q1 * r2) / &norm;
                canonical(q, r, *d1)
            }
            _ => Scalar::Float(self.to_f64() / rhs.to_f64()),
        })
    }

    /// Exact square root when the value is a non-negative rational; flagged
    /// float square root otherwise.
    pub fn sqrt(&self) -> Result<Scalar, AlgebraError> {
        match self {
            Scalar::Rational(q) => sqrt_exact(q),
            other => {
                if other.sgn() < 0 {
                    Err(AlgebraError::NegativeSqrt(other.to_string()))
                } else {
                    Ok(Scalar::Float(other.to_f64().sqrt()))
                }
            }
        }
    }

    pub fn powi(&self, mut exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            exp >>= 1;
        }
        acc
    }
}

/// Exact square root of a non-negative rational, as `r*sqrt(d)` with `d`
/// square-free.
pub fn sqrt_exact(q: &Rational) -> Result<Scalar, AlgebraError> {
    if q.is_negative() {
        return Err(AlgebraError::NegativeSqrt(format_rational(q)));
    }
    if q.is_zero() {
        return Ok(Scalar::zero());
    }
    // sqrt(a/b) = sqrt(a*b)/b
    let a = q.numer().clone();
    let b = q.denom().clone();
    let (sa, da) = split_square_factor(&a)?;
    let (sb, db) = split_square_factor(&b)?;
    // sqrt(a*b) = sa*sb*sqrt(da*db); da*db may itself have a square gcd part.
    let g = da.gcd(&db);
    let s = sa * sb * &g;
    let d = (&da / &g) * (&db / &g);
    let coeff = Rational::new(s, b);
    if d.is_one() {
        Ok(Scalar::Rational(coeff))
    } else {
        Ok(Scalar::Surd {
            q: Rational::zero(),
            r: coeff,
            d: d.to_u64().ok_or(AlgebraError::RadicandTooLarge)?,
        })
    }
}

/// Writes `v = s^2 * f` with `f` square-free; errors if a prime factor above
/// the trial-division bound survives.
fn split_square_factor(v: &BigInt) -> Result<(BigInt, BigInt), AlgebraError> {
    assert!(v.is_positive(), "radicand must be positive");
    let mut rem = v.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2u64);
    let bound = BigInt::from(TRIAL_DIVISION_BOUND);
    while &p * &p <= rem && p <= bound {
        let mut exp = 0u32;
        while (&rem % &p).is_zero() {
            rem /= &p;
            exp += 1;
        }
        if exp > 0 {
            square *= p.pow(exp / 2);
            if exp % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigInt::from(2u64) {
            BigInt::one()
        } else {
            BigInt::from(2u64)
        };
    }
    if rem > BigInt::one() {
        if rem <= bound {
            free *= rem; // remaining cofactor is prime
        } else {
            return Err(AlgebraError::RadicandTooLarge);
        }
    }
    Ok((square, free))
}

fn canonical(q: Rational, r: Rational, d: u64) -> Scalar {
    if r.is_zero() {
        Scalar::Rational(q)
    } else {
        Scalar::Surd { q, r, d }
    }
}

/// Sign of `q + r*sqrt(d)` with `r != 0`, by comparing `q^2` with `r^2 d`.
fn surd_sign(q: &Rational, r: &Rational, d: u64) -> i32 {
    let d = Rational::from_integer(BigInt::from(d));
    match (q.is_negative(), r.is_negative()) {
        (false, false) => 1,
        (true, true) => -1,
        // q >= 0, r < 0: positive iff q^2 > r^2 d
        (false, true) => {
            if q * q > r * r * d {
                1
            } else {
                -1
            }
        }
        // q < 0, r > 0: positive iff r^2 d > q^2
        (true, false) => {
            if r * r * d > q * q {
                1
            } else {
                -1
            }
        }
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64()
        .unwrap_or_else(|| q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap())
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Surd { q, r, d } => Scalar::Surd { q: -q, r: -r, d },
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Rational(a), Scalar::Surd { q, r, d })
            | (Scalar::Surd { q, r, d }, Scalar::Rational(a)) => Scalar::Surd { q: q + a, r, d },
            (
                Scalar::Surd { q: q1, r: r1, d: d1 },
                Scalar::Surd { q: q2, r: r2, d: d2 },
            ) => {
                if d1 == d2 {
                    canonical(q1 + q2, r1 + r2, d1)
                } else {
                    let lhs = Scalar::Surd { q: q1, r: r1, d: d1 };
                    let rhs = Scalar::Surd { q: q2, r: r2, d: d2 };
                    Scalar::Float(lhs.to_f64() + rhs.to_f64())
                }
            }
            (a, b) => Scalar::Float(a.to_f64() + b.to_f64()),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Surd { q, r, d })
            | (Scalar::Surd { q, r, d }, Scalar::Rational(a)) => canonical(q * &a, r * &a, d),
            (
                Scalar::Surd { q: q1, r: r1, d: d1 },
                Scalar::Surd { q: q2, r: r2, d: d2 },
            ) => {
                if d1 == d2 {
                    let d = Rational::from_integer(BigInt::from(d1));
                    let q = &q1 * &q2 + &r1 * &r2 * &d;
                    let r = &q1 * &r2 + &q2 * &r1;
                    canonical(q, r, d1)
                } else {
                    let lhs = Scalar::Surd { q: q1, r: r1, d: d1 };
                    let rhs = Scalar::Surd { q: q2, r: r2, d: d2 };
                    Scalar::Float(lhs.to_f64() * rhs.to_f64())
                }
            }
            (a, b) => Scalar::Float(a.to_f64() * b.to_f64()),
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.try_div(&rhs).expect("division by zero")
    }
}

macro_rules! forward_ref_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $trait::$method(self.clone(), rhs.clone())
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $trait::$method(self, rhs.clone())
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(self.clone(), rhs)
            }
        }
    };
}

forward_ref_binop!(Add, add);
forward_ref_binop!(Sub, sub);
forward_ref_binop!(Mul, mul);
forward_ref_binop!(Div, div);

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let parse_int =
        |t: &str| BigInt::from_str(t.trim()).map_err(|_| AlgebraError::Parse(s.to_string()));
    match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(AlgebraError::Parse(s.to_string()));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", format_rational(q)),
            Scalar::Surd { q, r, d } => {
                let surd = format!("{}*sqrt({})", format_rational(&r.abs()), d);
                if q.is_zero() {
                    write!(f, "{}{}", if r.is_negative() { "-" } else { "" }, surd)
                } else {
                    write!(
                        f,
                        "{}{}{}",
                        format_rational(q),
                        if r.is_negative() { "-" } else { "+" },
                        surd
                    )
                }
            }
            Scalar::Float(v) => write!(f, "float:{}", v),
        }
    }
}

impl FromStr for Scalar {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("float:") {
            return rest
                .trim()
                .parse::<f64>()
                .map(Scalar::Float)
                .map_err(|_| AlgebraError::Parse(s.to_string()));
        }
        match s.find("sqrt(") {
            None => Ok(Scalar::Rational(parse_rational(s)?)),
            Some(pos) => {
                let close = s.rfind(')').ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
                let d: u64 = s[pos + 5..close]
                    .trim()
                    .parse()
                    .map_err(|_| AlgebraError::Parse(s.to_string()))?;
                // Everything before "sqrt(" is "[q +|-] [r*]".
                let head = &s[..pos];
                let (q_part, r_part) = split_surd_head(head);
                let q = match q_part {
                    Some(t) => parse_rational(t)?,
                    None => Rational::zero(),
                };
                let r = match r_part {
                    "" | "+" => Rational::one(),
                    "-" => -Rational::one(),
                    t => {
                        let t = t.strip_suffix('*').unwrap_or(t);
                        let (sign, t) = match t.strip_prefix('+') {
                            Some(rest) => (1, rest),
                            None => (0, t),
                        };
                        let _ = sign;
                        parse_rational(t)?
                    }
                };
                Scalar::surd(q, r, d)
            }
        }
    }
}

/// Splits the text before `sqrt(` into an optional rational part and the
/// coefficient part, e.g. `"2-1*"` -> (Some("2"), "-1*").
fn split_surd_head(head: &str) -> (Option<&str>, &str) {
    // Look for a +/- that separates two terms (not a leading sign, not an
    // exponent sign — rationals here never carry exponents).
    let bytes = head.as_bytes();
    for i in (1..head.len()).rev() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            let q = &head[..i];
            let r = &head[i..];
            if !q.trim().is_empty() {
                return (Some(q), r);
            }
        }
    }
    if head.trim().is_empty() {
        (None, "")
    } else {
        (None, head)
    }
}

/// Serde adapter storing rationals as `p/q` strings in JSON.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    repr: String,
    value: f64,
    exact: bool,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            repr: self.to_string(),
            value: self.to_f64(),
            exact: self.is_exact(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        repr.repr.parse().map_err(D::Error::custom)
    }
}
