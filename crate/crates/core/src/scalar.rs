// Copyright 2026 The maximin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Arithmetic abstraction shared by every algorithm in the crate.
//!
//! Two implementations are provided: [`f64`] for the default fast path and
//! [`Rational`] (arbitrary-precision fractions) for oracles, golden tests and
//! the exact verification mode. Comparisons go through [`approx_eq`],
//! [`definitely_lt`] and [`approx_le`], which collapse to exact comparisons
//! for exact types and use a relative tolerance of [`EPS_REL`] (with an
//! absolute floor of [`EPS_ABS`]) for floating point.

use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::BigRational;
use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact arbitrary-precision rational number.
pub type Rational = BigRational;

/// Relative tolerance used by inexact comparisons.
pub const EPS_REL: f64 = 1e-9;
/// Absolute tolerance floor used near zero.
pub const EPS_ABS: f64 = 1e-12;

/// Number type for stakes, weights, supports and scores.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + 'static
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    fn from_usize(n: usize) -> Self;

    /// Converts a float. Rationals get the exact binary value of `x`.
    ///
    /// Non-finite input maps to zero for rationals.
    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn from_rational(r: &Rational) -> Self;

    /// Exact rational value (the exact binary value for floats).
    fn to_rational(&self) -> Rational;

    /// Parses a decimal literal (`"12"`, `"-0.25"`, `"1.5e3"`) or a fraction
    /// (`"1/3"`). Decimal input is exact for rationals.
    fn parse_str(s: &str) -> Option<Self>;

    /// Comparison slack for values of the given magnitude; zero when exact.
    fn tolerance(magnitude: &Self) -> Self;

    /// Short human-readable name of the arithmetic.
    fn description() -> &'static str;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_usize(n: usize) -> Self {
        n as f64
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Rational {
        Rational::from_float(*self).unwrap_or_else(Rational::zero)
    }

    fn parse_str(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: f64 = num.trim().parse().ok()?;
            let den: f64 = den.trim().parse().ok()?;
            if den == 0.0 {
                return None;
            }
            return Some(num / den).filter(|x| x.is_finite());
        }
        s.parse::<f64>().ok().filter(|x| x.is_finite())
    }

    fn tolerance(magnitude: &Self) -> Self {
        (EPS_REL * magnitude.abs()).max(EPS_ABS)
    }

    fn description() -> &'static str {
        "64-bit floating point"
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_usize(n: usize) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn parse_str(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num = parse_decimal_exact(num.trim())?;
            let den = parse_decimal_exact(den.trim())?;
            if den.is_zero() {
                return None;
            }
            return Some(num / den);
        }
        parse_decimal_exact(s)
    }

    fn tolerance(_magnitude: &Self) -> Self {
        Rational::zero()
    }

    fn description() -> &'static str {
        "exact rational"
    }
}

/// Exact parse of a decimal literal with optional sign, fraction and
/// exponent.
fn parse_decimal_exact(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num::pow(ten, scale as usize);
    } else {
        value /= num::pow(ten, (-scale) as usize);
    }
    Some(if negative { -value } else { value })
}

/// Comparison slack for the pair `(a, b)`.
pub fn tol<T: Scalar>(a: &T, b: &T) -> T {
    let (aa, bb) = (a.abs_val(), b.abs_val());
    let magnitude = if aa > bb { aa } else { bb };
    T::tolerance(&magnitude)
}

/// `a == b` up to tolerance.
pub fn approx_eq<T: Scalar>(a: &T, b: &T) -> bool {
    (a.clone() - b.clone()).abs_val() <= tol(a, b)
}

/// `a < b` by more than the tolerance.
pub fn definitely_lt<T: Scalar>(a: &T, b: &T) -> bool {
    b.clone() - a.clone() > tol(a, b)
}

/// `a <= b` up to tolerance, the negation of `definitely_lt(b, a)`.
pub fn approx_le<T: Scalar>(a: &T, b: &T) -> bool {
    !definitely_lt(b, a)
}

/// `a <= b` where the tolerance is taken relative to an external `scale`,
/// for quantities obtained by cancellation of larger terms.
pub fn approx_le_scaled<T: Scalar>(a: &T, b: &T, scale: &T) -> bool {
    a.clone() - b.clone() <= T::tolerance(scale)
}

pub fn min_of<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

pub fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Renders a value as a JSON number when it has a finite decimal expansion,
/// and as a `"p/q"` string otherwise.
pub fn to_json_value<T: Scalar>(x: &T) -> serde_json::Value {
    if !T::EXACT {
        return serde_json::Number::from_f64(x.to_f64())
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null);
    }
    let r = x.to_rational();
    match finite_decimal(&r) {
        Some(text) => serde_json::Number::from_str(&text)
            .map(serde_json::Value::Number)
            .unwrap_or_else(|_| serde_json::Value::String(text)),
        None => serde_json::Value::String(format!("{}/{}", r.numer(), r.denom())),
    }
}

/// Parses a JSON number or numeric string.
pub fn from_json_value<T: Scalar>(v: &serde_json::Value) -> Option<T> {
    match v {
        serde_json::Value::Number(n) => T::parse_str(&n.to_string()),
        serde_json::Value::String(s) => T::parse_str(s),
        _ => None,
    }
}

/// Decimal text of `r` if its denominator has only the prime factors 2 and 5.
fn finite_decimal(r: &Rational) -> Option<String> {
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut den = r.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return Some(r.numer().to_string());
    }
    let scaled = r * Rational::from_integer(num::pow(BigInt::from(10), digits));
    let n = scaled.to_integer();
    let negative = n.is_negative();
    let mut text = n.abs().to_string();
    if text.len() <= digits {
        text = format!("{}{}", "0".repeat(digits + 1 - text.len()), text);
    }
    let split = text.len() - digits;
    let (int, frac) = text.split_at(split);
    let frac = frac.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    Some(if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    })
}
