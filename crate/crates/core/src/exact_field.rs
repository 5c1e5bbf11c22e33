//! Exact arithmetic in real quadratic fields `Q(sqrt(d))`.
//!
//! Every interval endpoint and length handled by the crate is a
//! [`QuadraticNumber`]. Comparisons are decided by rational case analysis,
//! so two boundaries that coincide are always detected as equal.
//!
//! Rational values are stored with `d = 0`. Mixing two distinct irrational
//! fields is an error; the checked methods report it and the operator
//! impls panic on it.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num / den`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `rat + coef * sqrt(d)` with `d` squarefree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    rat: Rational,
    coef: Rational,
    d: u64,
}

/// Splits `d` as `s^2 * r` with `r` squarefree.
fn squarefree_split(mut d: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, d)
}

impl QuadraticNumber {
    /// Canonicalizing constructor. `d` need not be squarefree:
    /// `sqrt(20)` is rewritten as `2*sqrt(5)`.
    pub fn new(rat: Rational, coef: Rational, d: u64) -> Self {
        let (square, core) = squarefree_split(d);
        let coef = coef * Rational::from_integer(BigInt::from(square));
        match core {
            0 => Self::from_rational(rat),
            1 => Self::from_rational(rat + coef),
            _ if coef.is_zero() => Self::from_rational(rat),
            _ => QuadraticNumber { rat, coef, d: core },
        }
    }

    pub fn from_rational(rat: Rational) -> Self {
        QuadraticNumber { rat, coef: Rational::zero(), d: 0 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn coef(&self) -> &Rational {
        &self.coef
    }

    /// Squarefree radicand, `0` for rational values.
    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    fn common_field(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, e) | (e, 0) => Ok(e),
            (d, e) if d == e => Ok(d),
            (d, e) => Err(Error::MixedField(d, e)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(Self::new(&self.rat + &other.rat, &self.coef + &other.coef, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        Ok(Self::new(&self.rat - &other.rat, &self.coef - &other.coef, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        let dq = Rational::from_integer(BigInt::from(d));
        let rat = &self.rat * &other.rat + &self.coef * &other.coef * dq;
        let coef = &self.rat * &other.coef + &self.coef * &other.rat;
        Ok(Self::new(rat, coef, d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let d = self.common_field(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // multiply by the conjugate; the norm is a nonzero rational
        let norm = other.norm();
        let conj = other.conjugate();
        let num = self.try_mul(&conj)?;
        Ok(Self::new(num.rat / &norm, num.coef / norm, d))
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber { rat: self.rat.clone(), coef: -&self.coef, d: self.d }
    }

    /// `rat^2 - coef^2 * d`.
    pub fn norm(&self) -> Rational {
        let dq = Rational::from_integer(BigInt::from(self.d));
        &self.rat * &self.rat - &self.coef * &self.coef * dq
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(&self.rat * factor, &self.coef * factor, self.d)
    }

    /// Exact sign as `-1`, `0` or `1`.
    pub fn signum(&self) -> i8 {
        let sr = sign(&self.rat);
        let sc = sign(&self.coef);
        if sc == 0 {
            return sr;
        }
        if sr == 0 || sr == sc {
            return sc;
        }
        // opposite signs: compare rat^2 with coef^2 * d
        let dq = Rational::from_integer(BigInt::from(self.d));
        let lhs = &self.rat * &self.rat;
        let rhs = &self.coef * &self.coef * dq;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sr,
            Ordering::Less => sc,
            Ordering::Equal => 0,
        }
    }

    /// Exact comparison; fails only for operands from distinct fields.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        let diff = self.try_sub(other)?;
        Ok(diff.signum().cmp(&0))
    }

    /// Nearest-float approximation. Not used for any decision.
    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.coef.is_zero() {
            return r;
        }
        let root = (self.d as f64).sqrt();
        let c = self.coef.to_f64().unwrap_or(f64::NAN);
        if sign(&self.rat) * sign(&self.coef) < 0 {
            // a + b*sqrt(d) = (a^2 - b^2 d) / (a - b*sqrt(d)) avoids cancellation
            let n = self.norm().to_f64().unwrap_or(f64::NAN);
            n / (r - c * root)
        } else {
            r + c * root
        }
    }
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Default for QuadraticNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl PartialOrd for QuadraticNumber {
    /// `None` when the operands live in different fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadraticNumber> for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &QuadraticNumber) -> QuadraticNumber {
                (&self).$method(rhs)
            }
        }
        impl $tr<QuadraticNumber> for &QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { rat: -&self.rat, coef: -&self.coef, d: self.d }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadraticNumber {
    /// Canonical text: `p`, `p/q`, `p/q+r/s*sqrt(d)`; unit coefficients and
    /// unit denominators are omitted, a zero rational part is dropped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return write_rational(f, &self.rat);
        }
        if !self.rat.is_zero() {
            write_rational(f, &self.rat)?;
            if self.coef.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.coef.is_negative() {
            f.write_str("-")?;
        }
        let mag = self.coef.abs();
        if !mag.is_one() {
            write_rational(f, &mag)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt({})", self.d)
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticNumber({self})")
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn sign(&mut self) -> Option<bool> {
        if self.eat("+") {
            Some(false)
        } else if self.eat("-") {
            Some(true)
        } else {
            None
        }
    }

    /// `digits [/ digits]`
    fn rational(&mut self) -> Option<Rational> {
        let num: BigInt = self.digits()?.parse().ok()?;
        let den: BigInt = if self.eat("/") { self.digits()?.parse().ok()? } else { BigInt::one() };
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(num, den))
    }

    /// `sqrt(digits)`
    fn radical(&mut self) -> Option<u64> {
        if !self.eat("sqrt(") {
            return None;
        }
        let d = self.digits()?.parse().ok()?;
        self.eat(")").then_some(d)
    }

    /// A signed term: rational, `[rational*]sqrt(d)`.
    fn term(&mut self) -> Option<(Rational, Option<u64>)> {
        let neg = self.sign().unwrap_or(false);
        let (value, radicand) = if let Some(d) = self.radical() {
            (Rational::one(), Some(d))
        } else {
            let r = self.rational()?;
            if self.eat("*") {
                (r, Some(self.radical()?))
            } else {
                (r, None)
            }
        };
        Some((if neg { -value } else { value }, radicand))
    }
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::NumberSyntax(s.to_string());
        let mut cur = Cursor { src: s, pos: 0 };
        let mut rat = Rational::zero();
        let mut coef = Rational::zero();
        let mut field: Option<u64> = None;
        let mut terms = 0;
        while cur.pos < s.len() {
            if terms > 0 && !matches!(cur.peek(), Some(b'+' | b'-')) {
                return Err(bad());
            }
            let (value, radicand) = cur.term().ok_or_else(bad)?;
            match radicand {
                None => rat += value,
                Some(d) => {
                    if field.is_some_and(|f| f != d) {
                        return Err(bad());
                    }
                    field = Some(d);
                    coef += value;
                }
            }
            terms += 1;
            if terms > 2 {
                return Err(bad());
            }
        }
        if terms == 0 {
            return Err(bad());
        }
        Ok(Self::new(rat, coef, field.unwrap_or(0)))
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The golden-rotation angle `(3 - sqrt(5)) / 2`.
pub fn golden_alpha() -> QuadraticNumber {
    QuadraticNumber::new(rational(3, 2), rational(-1, 2), 5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_plus_complement_is_one() {
        let alpha = golden_alpha();
        let comp = q("-1/2+1/2*sqrt(5)");
        assert_eq!(&alpha + &comp, QuadraticNumber::one());
        assert!((&alpha + &comp).is_rational());
    }

    #[test]
    fn doubling_and_three_alpha_minus_one() {
        let alpha = golden_alpha();
        assert_eq!(&alpha * &QuadraticNumber::from(2), q("3-sqrt(5)"));
        let v = &(&QuadraticNumber::from(3) * &alpha) - &QuadraticNumber::one();
        assert_eq!(v, q("7/2-3/2*sqrt(5)"));
        assert_eq!(v.to_string(), "7/2-3/2*sqrt(5)");
    }

    #[test]
    fn comparisons() {
        let alpha = golden_alpha();
        let comp = &QuadraticNumber::one() - &alpha;
        assert_eq!(alpha.try_cmp(&comp).unwrap(), Ordering::Less);
        assert_eq!(alpha.try_cmp(&alpha).unwrap(), Ordering::Equal);
        let v = q("7/2-3/2*sqrt(5)");
        assert_eq!(v.try_cmp(&QuadraticNumber::zero()).unwrap(), Ordering::Greater);
        // 2 - sqrt(4) would be zero; sqrt(2) > 1.41
        assert!(QuadraticNumber::sqrt(2) > q("141/100"));
        assert!(QuadraticNumber::sqrt(2) < q("142/100"));
    }

    #[test]
    fn float_values() {
        // correctly rounded; the naive 1.5 - sqrt(5)/2 lands one ulp lower
        let x = golden_alpha().to_f64();
        assert_eq!(x, 0.38196601125010515);
        assert!((x - 0.3819660112501051).abs() <= f64::EPSILON * 0.5);
        assert_eq!(QuadraticNumber::zero().to_f64(), 0.0);
        assert_eq!(QuadraticNumber::one().to_f64(), 1.0);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = QuadraticNumber::sqrt(2);
        let b = QuadraticNumber::sqrt(5);
        assert_eq!(a.try_add(&b), Err(Error::MixedField(2, 5)));
        assert_eq!(a.try_cmp(&b), Err(Error::MixedField(2, 5)));
        assert_eq!(a.partial_cmp(&b), None);
        // rationals combine with anything
        assert!(a.try_add(&QuadraticNumber::one()).is_ok());
    }

    #[test]
    fn squarefree_normalization() {
        assert_eq!(QuadraticNumber::sqrt(20), q("2*sqrt(5)"));
        assert_eq!(QuadraticNumber::sqrt(16), QuadraticNumber::from(4));
        assert_eq!(QuadraticNumber::sqrt(1), QuadraticNumber::one());
        assert_eq!(QuadraticNumber::sqrt(0), QuadraticNumber::zero());
        assert!(QuadraticNumber::sqrt(16).is_rational());
        assert_eq!(QuadraticNumber::sqrt(16).field(), 0);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(q("1/2"), QuadraticNumber::from_rational(rational(1, 2)));
        assert_eq!(q("-3"), QuadraticNumber::from(-3));
        assert_eq!(q("+3/6"), QuadraticNumber::from_rational(rational(1, 2)));
        assert_eq!(q("sqrt(5)"), QuadraticNumber::sqrt(5));
        assert_eq!(q("-sqrt(5)+1"), q("1-sqrt(5)"));
        assert_eq!(q("3/2-1/2*sqrt(5)"), golden_alpha());
        for bad in ["", "1/0", "1 + sqrt(5)", "sqrt(5", "1/2/3", "1+2+3", "sqrt(2)+sqrt(3)", "a"] {
            assert!(bad.parse::<QuadraticNumber>().is_err(), "{bad}");
        }
    }

    #[test]
    fn division() {
        let alpha = golden_alpha();
        let inv = QuadraticNumber::one().try_div(&alpha).unwrap();
        assert_eq!(&inv * &alpha, QuadraticNumber::one());
        assert_eq!(alpha.try_div(&QuadraticNumber::zero()), Err(Error::DivisionByZero));
    }
}
