//! Exact nonnegative rationals and their extension with an infinity element.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor for small rationals, mostly used by tests and the distribution library.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Element of the nonnegative extended rationals: masses and least solutions live here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn one() -> Self {
        ExtRational::Finite(Rational::one())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Finite(r) if r.is_zero())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinity => None,
        }
    }

    pub fn into_finite(self) -> Option<Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinity => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::Finite(r) => r.to_f64().unwrap_or(f64::INFINITY),
            ExtRational::Infinity => f64::INFINITY,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (ExtRational::Infinity, ExtRational::Infinity) => Equal,
            (ExtRational::Infinity, _) => Greater,
            (_, ExtRational::Infinity) => Less,
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinity,
        }
    }
}

impl Mul for ExtRational {
    type Output = ExtRational;

    // 0 · ∞ = 0 in the extended semiring.
    fn mul(self, rhs: ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a * b),
            (ExtRational::Finite(a), ExtRational::Infinity)
            | (ExtRational::Infinity, ExtRational::Finite(a)) => {
                if a.is_zero() {
                    ExtRational::zero()
                } else {
                    ExtRational::Infinity
                }
            }
            (ExtRational::Infinity, ExtRational::Infinity) => ExtRational::Infinity,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("negative rational `{0}`")]
    Negative(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `n` or `n/d` with decimal digits only. Negative values are rejected.
pub fn parse_fraction(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let parse_int = |part: &str| -> Result<BigInt, RationalParseError> {
        let digits = part.strip_prefix('-').unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalParseError::Malformed(text.to_string()));
        }
        part.parse::<BigInt>()
            .map_err(|_| RationalParseError::Malformed(text.to_string()))
    };
    let n = parse_int(num)?;
    let d = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(RationalParseError::ZeroDenominator(text.to_string()));
    }
    let r = Rational::new(n, d);
    if r.is_negative() {
        return Err(RationalParseError::Negative(text.to_string()));
    }
    Ok(r)
}

/// Parses a fraction or a terminating decimal such as `0.9`, converting exactly.
pub fn parse_probability_literal(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if let Some((whole, frac)) = s.split_once('.') {
        let ok = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if (whole.is_empty() && frac.is_empty()) || !ok(whole) || !ok(frac) {
            return Err(RationalParseError::Malformed(text.to_string()));
        }
        let digits = format!("{whole}{frac}");
        let numer: BigInt = digits
            .parse()
            .map_err(|_| RationalParseError::Malformed(text.to_string()))?;
        let denom = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    parse_fraction(s)
}

/// Always renders as `num/den`, including integers (`1/1`).
pub fn format_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with `digits` significant digits, rounding half up, computed exactly.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let r = r.abs();
    let ten = BigInt::from(10u32);
    // exponent e with 10^e <= r < 10^(e+1)
    let mut e: i64 = 0;
    let as_rat = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while r >= as_rat(e + 1) {
        e += 1;
    }
    while r < as_rat(e) {
        e -= 1;
    }
    let mut shift = digits as i64 - 1 - e;
    let round = |shift: i64| -> BigInt {
        let scaled = &r * as_rat(shift);
        let (q, rem) = scaled.numer().div_rem(scaled.denom());
        if rem.clone() * 2 >= *scaled.denom() {
            q + 1
        } else {
            q
        }
    };
    let mut mantissa = round(shift);
    if mantissa >= num_traits::pow(ten.clone(), digits) {
        shift -= 1;
        mantissa = round(shift);
    }
    let mut s = mantissa.to_str_radix(10);
    let out = if shift <= 0 {
        s.push_str(&"0".repeat((-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        if s.len() <= shift {
            s = format!("{}{}", "0".repeat(shift - s.len() + 1), s);
        }
        let split = s.len() - shift;
        let (a, b) = s.split_at(split);
        let b = b.trim_end_matches('0');
        if b.is_empty() {
            a.to_string()
        } else {
            format!("{a}.{b}")
        }
    };
    if negative && out.bytes().any(|c| c != b'0' && c != b'.') {
        format!("-{out}")
    } else {
        out
    }
}

pub(crate) fn is_positive(r: &Rational) -> bool {
    r.numer().sign() == Sign::Plus
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}
