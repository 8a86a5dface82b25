use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{ExactError, Rational};

/// Element of Q(i). Equality is component-wise; there is no total order on
/// the field, only [`GaussianRational::cmp_re`] on real parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

/// The four field operations, for callers that select one at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn gq_arith(
    lhs: &GaussianRational,
    rhs: &GaussianRational,
    op: ArithOp,
) -> Result<GaussianRational, ExactError> {
    match op {
        ArithOp::Add => Ok(lhs + rhs),
        ArithOp::Sub => Ok(lhs - rhs),
        ArithOp::Mul => Ok(lhs * rhs),
        ArithOp::Div => lhs.checked_div(rhs),
    }
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// |z|², always a rational.
    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self {
            re: self.re.checked_div(&n)?,
            im: (-&self.im).checked_div(&n)?,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.inv()?)
    }

    /// Total order on real parts only.
    pub fn cmp_re(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re)
    }

    /// Lexicographic key (re, im); used for deterministic sorting, not as a field order.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::from_real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(re: i64) -> Self {
        Self::from_ints(re, 0)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

// Canonical text form, the inverse of the grammar accepted by `FromStr`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let unit = self.im.abs() == Rational::one();
        if self.re.is_zero() {
            return match (unit, self.im.is_negative()) {
                (true, false) => write!(f, "i"),
                (true, true) => write!(f, "-i"),
                (false, _) => write!(f, "{}i", self.im),
            };
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        if unit {
            write!(f, "{}{}i", self.re, sign)
        } else {
            write!(f, "{}{}{}i", self.re, sign, self.im.abs())
        }
    }
}

/// Parses `'-'? DIGITS ('/' DIGITS)?` at the start of `s`, returning the value
/// and the unconsumed remainder.
fn rat_prefix(s: &str) -> Option<Result<(Rational, &str), ExactError>> {
    let bytes = s.as_bytes();
    let mut pos = 0;
    if bytes.first() == Some(&b'-') {
        pos = 1;
    }
    let num_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == num_start {
        return None;
    }
    let numerator = &s[..pos];
    let mut denominator = "1";
    if bytes.get(pos) == Some(&b'/') {
        let den_start = pos + 1;
        let mut end = den_start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end > den_start {
            denominator = &s[den_start..end];
            pos = end;
        }
    }
    let num: num_bigint::BigInt = numerator.parse().ok()?;
    let den: num_bigint::BigInt = denominator.parse().ok()?;
    Some(Rational::new(num, den).map(|r| (r, &s[pos..])))
}

fn whole_rat(s: &str) -> Option<Result<Rational, ExactError>> {
    match rat_prefix(s)? {
        Ok((r, "")) => Some(Ok(r)),
        Ok(_) => None,
        Err(e) => Some(Err(e)),
    }
}

impl FromStr for GaussianRational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| ExactError::Parse { input: s.to_string(), reason: reason.to_string() };
        let Some(body) = s.strip_suffix('i') else {
            return match whole_rat(s) {
                Some(r) => Ok(Self::from_real(r?)),
                None => Err(bad("expected a rational or a gaussian rational")),
            };
        };
        let imaginary = |im: Rational| Ok(Self::new(Rational::zero(), im));
        if body.is_empty() {
            return imaginary(Rational::one());
        }
        if let Some(r) = whole_rat(body) {
            return imaginary(r?);
        }
        if body == "-" {
            return imaginary(-Rational::one());
        }
        if let Some(rest) = body.strip_prefix('-') {
            if let Some(r) = whole_rat(rest) {
                return imaginary(-r?);
            }
        }
        let (re, rest) = match rat_prefix(body) {
            Some(parsed) => parsed?,
            None => return Err(bad("expected a real part")),
        };
        let (negate, tail) = match rest.as_bytes().first() {
            Some(b'+') => (false, &rest[1..]),
            Some(b'-') => (true, &rest[1..]),
            _ => return Err(bad("expected '+' or '-' before the imaginary part")),
        };
        let im = if tail.is_empty() {
            Rational::one()
        } else {
            match whole_rat(tail) {
                Some(r) => r?,
                None => return Err(bad("malformed imaginary part")),
            }
        };
        Ok(Self::new(re, if negate { -im } else { im }))
    }
}
