//! Exact rational arithmetic for hedge weights and strength ratios.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Exact rational number used for weights and ratio values.
pub type Rational = num_rational::Ratio<i128>;

/// A rational extended with `+∞`, used for ratios under the `0/0 = +∞` convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn finite(&self) -> Option<Rational> {
        match self {
            ExtRational::Finite(r) => Some(*r),
            ExtRational::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    /// `⌊self⌋`, or `None` for `+∞`.
    pub fn floor(&self) -> Option<i128> {
        self.finite().map(|r| r.floor().to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::Finite(r) => rational_to_f64(r),
            ExtRational::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinite) => Ordering::Less,
            (ExtRational::Infinite, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinite, ExtRational::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

pub fn serialize_rational<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&value.to_string())
}

/// Serializes rationals as exact `p/q` strings.
pub fn serialize_rationals<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(values.iter().map(|r| r.to_string()))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecimalError {
    #[error("empty number")]
    Empty,
    #[error("negative value `{0}`")]
    Negative(String),
    #[error("malformed decimal `{0}`")]
    Malformed(String),
    #[error("decimal `{0}` out of range")]
    Overflow(String),
}

/// Parses a plain nonnegative decimal literal (`3`, `0.25`, `.5`, `2.`) exactly.
pub fn parse_decimal(text: &str) -> Result<Rational, DecimalError> {
    if text.is_empty() {
        return Err(DecimalError::Empty);
    }
    let body = match text.strip_prefix('-') {
        Some(rest) => {
            let value = parse_unsigned(rest, text)?;
            if value.is_zero() {
                return Ok(value);
            }
            return Err(DecimalError::Negative(text.to_string()));
        }
        None => text.strip_prefix('+').unwrap_or(text),
    };
    parse_unsigned(body, text)
}

fn parse_unsigned(body: &str, original: &str) -> Result<Rational, DecimalError> {
    let malformed = || DecimalError::Malformed(original.to_string());
    let overflow = || DecimalError::Overflow(original.to_string());
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    if frac_part.len() > 30 {
        return Err(overflow());
    }
    let mut numer: i128 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        numer = numer
            .checked_mul(10)
            .and_then(|v| v.checked_add(i128::from(b - b'0')))
            .ok_or_else(overflow)?;
    }
    let denom = 10i128.checked_pow(frac_part.len() as u32).ok_or_else(overflow)?;
    Ok(Rational::new(numer, denom))
}

/// Formats a rational as a terminating decimal when possible, else as `p/q`.
pub fn format_decimal(r: &Rational) -> String {
    let mut denom = *r.denom();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while denom.is_even() {
        denom /= 2;
        twos += 1;
    }
    while denom % 5 == 0 {
        denom /= 5;
        fives += 1;
    }
    if denom != 1 {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let digits = twos.max(fives);
    let scale = 10i128.pow(digits);
    let scaled = (r * Rational::from_integer(scale)).to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let abs = scaled.abs();
    if digits == 0 {
        return format!("{sign}{abs}");
    }
    let int = abs / scale;
    let frac = abs % scale;
    format!("{sign}{int}.{frac:0width$}", width = digits as usize)
}
