//! Exact rationals extended with a single `+∞` value.
//!
//! Every capacity, storage amount and bandwidth in the toolkit is carried as
//! an [`ExtendedRational`]. Infinity absorbs addition and dominates ordering;
//! dividing by zero yields infinity, which is what the threshold formulas rely
//! on when a breakpoint is pushed out to `∞`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(BigRational),
    Infinite,
}

pub use ExtendedRational::{Finite, Infinite};

impl ExtendedRational {
    pub fn zero() -> Self {
        Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        Finite(BigRational::one())
    }

    pub fn infinity() -> Self {
        Infinite
    }

    pub fn from_int(value: i64) -> Self {
        Finite(BigRational::from_integer(BigInt::from(value)))
    }

    /// `numer / denom`; a zero denominator gives `+∞`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        if denom == 0 {
            return Infinite;
        }
        Finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Finite(v) if v.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Finite(v) if v.is_negative())
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            Finite(v) => Some(v),
            Infinite => None,
        }
    }

    pub fn into_finite(self) -> Option<BigRational> {
        match self {
            Finite(v) => Some(v),
            Infinite => None,
        }
    }

    pub fn numer(&self) -> Option<&BigInt> {
        self.as_finite().map(|v| v.numer())
    }

    pub fn denom(&self) -> Option<&BigInt> {
        self.as_finite().map(|v| v.denom())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Finite(v) => v.to_f64().unwrap_or(f64::NAN),
            Infinite => f64::INFINITY,
        }
    }

    /// `⌈self⌉` for finite values.
    pub fn ceil_int(&self) -> Option<BigInt> {
        self.as_finite().map(|v| v.ceil().to_integer())
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Finite(v) if v.is_integer())
    }

    /// Decimal rendering with `sig` significant digits, rounded half away
    /// from zero using integer arithmetic only.
    pub fn to_decimal(&self, sig: usize) -> String {
        let value = match self {
            Infinite => return "inf".to_string(),
            Finite(v) => v,
        };
        let sig = sig.max(1);
        if value.is_zero() {
            return format!("0.{}", "0".repeat(sig - 1));
        }
        let negative = value.is_negative();
        let abs = value.abs();
        let ten = BigInt::from(10);
        // exponent e with 10^e <= |v| < 10^(e+1)
        let mut exp: i64 =
            (abs.numer().to_string().len() as i64) - (abs.denom().to_string().len() as i64);
        loop {
            let lower = pow10_rational(exp);
            if abs < lower {
                exp -= 1;
                continue;
            }
            if abs >= pow10_rational(exp + 1) {
                exp += 1;
                continue;
            }
            break;
        }
        let shift = sig as i64 - 1 - exp;
        let scaled = abs * pow10_rational(shift);
        let (q, rem) = scaled.numer().div_rem(scaled.denom());
        let mut digits = if rem.clone() * 2 >= *scaled.denom() {
            q + 1
        } else {
            q
        };
        let mut shift = shift;
        if digits.to_string().len() > sig {
            digits /= &ten;
            shift -= 1;
        }
        let text = digits.to_string();
        let body = if shift <= 0 {
            let zeros = "0".repeat((-shift) as usize);
            format!("{text}{zeros}")
        } else {
            let shift = shift as usize;
            if text.len() > shift {
                let (int, frac) = text.split_at(text.len() - shift);
                format!("{int}.{frac}")
            } else {
                format!("0.{}{}", "0".repeat(shift - text.len()), text)
            }
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }

    pub fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }

    pub fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

fn pow10_rational(exp: i64) -> BigRational {
    let p = num_traits::pow(BigInt::from(10), exp.unsigned_abs() as usize);
    if exp >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

impl Default for ExtendedRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BigRational> for ExtendedRational {
    fn from(v: BigRational) -> Self {
        Finite(v)
    }
}

impl From<i64> for ExtendedRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<usize> for ExtendedRational {
    fn from(v: usize) -> Self {
        Finite(BigRational::from_integer(BigInt::from(v)))
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinite) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infinite => f.write_str("inf"),
            Finite(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Finite(v) => write!(f, "{}/{}", v.numer(), v.denom()),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = ParseRationalError;

    /// Accepts `p/q`, integers, exact decimals (`0.25`, `-1.5e-2` is not
    /// supported) and `inf`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Infinite);
        }
        let bad = || ParseRationalError::Invalid(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            return Ok(Finite(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits: BigInt = format!("{int_digits}{frac}").parse().map_err(|_| bad())?;
            let denom = num_traits::pow(BigInt::from(10), frac.len());
            let numer = if negative { -digits } else { digits };
            return Ok(Finite(BigRational::new(numer, denom)));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Finite(BigRational::from_integer(n)))
    }
}

fn add(a: &ExtendedRational, b: &ExtendedRational) -> ExtendedRational {
    match (a, b) {
        (Finite(x), Finite(y)) => Finite(x + y),
        _ => Infinite,
    }
}

fn sub(a: &ExtendedRational, b: &ExtendedRational) -> ExtendedRational {
    match (a, b) {
        (Finite(x), Finite(y)) => Finite(x - y),
        (Infinite, Finite(_)) => Infinite,
        _ => panic!("subtracting +inf is not representable"),
    }
}

fn mul(a: &ExtendedRational, b: &ExtendedRational) -> ExtendedRational {
    match (a, b) {
        (Finite(x), Finite(y)) => Finite(x * y),
        (Infinite, Infinite) => Infinite,
        // 0 · ∞ = 0, as for capacities scaled by an empty count
        (Infinite, Finite(y)) | (Finite(y), Infinite) => {
            if y.is_zero() {
                ExtendedRational::zero()
            } else if y.is_positive() {
                Infinite
            } else {
                panic!("negative multiple of +inf is not representable")
            }
        }
    }
}

fn div(a: &ExtendedRational, b: &ExtendedRational) -> ExtendedRational {
    match (a, b) {
        (_, Finite(y)) if y.is_zero() => Infinite,
        (Finite(x), Finite(y)) => Finite(x / y),
        (Finite(_), Infinite) => ExtendedRational::zero(),
        (Infinite, Finite(y)) if y.is_positive() => Infinite,
        (Infinite, Finite(_)) => panic!("+inf divided by a negative value"),
        (Infinite, Infinite) => panic!("inf / inf is undefined"),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $func:ident) => {
        impl $trait<&ExtendedRational> for &ExtendedRational {
            type Output = ExtendedRational;
            fn $method(self, rhs: &ExtendedRational) -> ExtendedRational {
                $func(self, rhs)
            }
        }
        impl $trait<ExtendedRational> for ExtendedRational {
            type Output = ExtendedRational;
            fn $method(self, rhs: ExtendedRational) -> ExtendedRational {
                $func(&self, &rhs)
            }
        }
        impl $trait<&ExtendedRational> for ExtendedRational {
            type Output = ExtendedRational;
            fn $method(self, rhs: &ExtendedRational) -> ExtendedRational {
                $func(&self, rhs)
            }
        }
        impl $trait<ExtendedRational> for &ExtendedRational {
            type Output = ExtendedRational;
            fn $method(self, rhs: ExtendedRational) -> ExtendedRational {
                $func(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);
forward_binop!(Div, div, div);

/// Least common multiple of the denominators of the given finite values.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Shorthand used throughout the crate and its tests.
pub fn q(numer: i64, denom: i64) -> ExtendedRational {
    ExtendedRational::ratio(numer, denom)
}
