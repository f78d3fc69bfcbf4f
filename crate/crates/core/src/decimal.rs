//! Exact decimal numbers with lossless addition.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use thiserror::Error;

/// `sign × digits × 10^-scale`, held exactly.
///
/// Equality and ordering compare values, so `0.3` equals `0.30`. Addition
/// keeps the larger scale of its operands and never rounds.
#[derive(Debug, Clone)]
pub struct ExactDecimal {
    negative: bool,
    /// Most significant first; no leading zeros except a lone zero.
    digits: Vec<u8>,
    scale: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid decimal {input:?}: {kind}")]
pub struct ParseDecimalError {
    input: String,
    kind: ParseErrorKind,
}

impl ParseDecimalError {
    pub fn kind(&self) -> &ParseErrorKind {
        &self.kind
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty string")]
    Empty,
    #[error("no digits")]
    NoDigits,
    #[error("unexpected character {0:?}")]
    InvalidCharacter(char),
    #[error("more than one decimal point")]
    MultipleDots,
}

impl ExactDecimal {
    pub fn zero() -> Self {
        ExactDecimal {
            negative: false,
            digits: vec![0],
            scale: 0,
        }
    }

    /// Parses `[+-]digits[.digits]`. Either side of the point may be empty,
    /// but not both.
    pub fn parse(s: &str) -> Result<Self, ParseDecimalError> {
        let fail = |kind| ParseDecimalError {
            input: s.to_owned(),
            kind,
        };
        if s.is_empty() {
            return Err(fail(ParseErrorKind::Empty));
        }
        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };

        let mut digits = Vec::with_capacity(body.len());
        let mut scale = None;
        for c in body.chars() {
            match c {
                '0'..='9' => digits.push(c as u8 - b'0'),
                '.' if scale.is_some() => return Err(fail(ParseErrorKind::MultipleDots)),
                '.' => scale = Some(digits.len()),
                other => return Err(fail(ParseErrorKind::InvalidCharacter(other))),
            }
        }
        if digits.is_empty() {
            return Err(fail(ParseErrorKind::NoDigits));
        }
        let scale = scale.map_or(0, |int_len| digits.len() - int_len);
        let scale = u32::try_from(scale).expect("scale fits in u32");
        Ok(Self::from_parts(negative, digits, scale))
    }

    fn from_parts(negative: bool, mut digits: Vec<u8>, scale: u32) -> Self {
        let leading = digits.iter().take_while(|&&d| d == 0).count();
        let leading = leading.min(digits.len().saturating_sub(1));
        digits.drain(..leading);
        if digits.is_empty() {
            digits.push(0);
        }
        let zero = digits == [0];
        ExactDecimal {
            negative: negative && !zero,
            digits,
            scale,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.digits == [0]
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Number of digits after the decimal point.
    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// The unscaled magnitude as a digit string.
    pub fn unscaled_digits(&self) -> String {
        self.digits.iter().map(|d| char::from(b'0' + d)).collect()
    }

    /// Magnitude digits padded with trailing zeros to `scale`, least significant first.
    fn magnitude_at(&self, scale: u32) -> Vec<u8> {
        debug_assert!(scale >= self.scale);
        let pad = (scale - self.scale) as usize;
        let mut le = vec![0; pad];
        le.extend(self.digits.iter().rev());
        le
    }

    fn add_exact(&self, other: &ExactDecimal) -> ExactDecimal {
        let scale = self.scale.max(other.scale);
        let a = self.magnitude_at(scale);
        let b = other.magnitude_at(scale);
        let (negative, le) = if self.negative == other.negative {
            (self.negative, add_magnitudes(&a, &b))
        } else {
            match cmp_magnitudes(&a, &b) {
                Ordering::Less => (other.negative, sub_magnitudes(&b, &a)),
                _ => (self.negative, sub_magnitudes(&a, &b)),
            }
        };
        Self::from_parts(negative, le.into_iter().rev().collect(), scale)
    }
}

fn trimmed(le: &[u8]) -> &[u8] {
    let len = le.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
    &le[..len]
}

fn cmp_magnitudes(a: &[u8], b: &[u8]) -> Ordering {
    let (a, b) = (trimmed(a), trimmed(b));
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

fn add_magnitudes(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(a.len().max(b.len()) + 1);
    let mut carry = 0;
    for i in 0..a.len().max(b.len()) {
        let d = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0) + carry;
        out.push(d % 10);
        carry = d / 10;
    }
    if carry > 0 {
        out.push(carry);
    }
    out
}

/// `a - b` for `a >= b`.
fn sub_magnitudes(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(a.len());
    let mut borrow = 0;
    for (i, &da) in a.iter().enumerate() {
        let sub = b.get(i).copied().unwrap_or(0) + borrow;
        if da >= sub {
            out.push(da - sub);
            borrow = 0;
        } else {
            out.push(da + 10 - sub);
            borrow = 1;
        }
    }
    debug_assert_eq!(borrow, 0, "subtrahend larger than minuend");
    out
}

impl Default for ExactDecimal {
    fn default() -> Self {
        Self::zero()
    }
}

impl FromStr for ExactDecimal {
    type Err = ParseDecimalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for ExactDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.unscaled_digits();
        let scale = self.scale as usize;
        let mut out = String::with_capacity(digits.len() + scale + 3);
        if self.negative {
            out.push('-');
        }
        if scale == 0 {
            out.push_str(&digits);
        } else if digits.len() <= scale {
            out.push_str("0.");
            out.extend(std::iter::repeat('0').take(scale - digits.len()));
            out.push_str(&digits);
        } else {
            let (int, frac) = digits.split_at(digits.len() - scale);
            out.push_str(int);
            out.push('.');
            out.push_str(frac);
        }
        f.pad(&out)
    }
}

impl Add for ExactDecimal {
    type Output = ExactDecimal;

    fn add(self, rhs: ExactDecimal) -> ExactDecimal {
        self.add_exact(&rhs)
    }
}

impl<'a> Add<&'a ExactDecimal> for &'a ExactDecimal {
    type Output = ExactDecimal;

    fn add(self, rhs: &'a ExactDecimal) -> ExactDecimal {
        self.add_exact(rhs)
    }
}

impl Sum for ExactDecimal {
    fn sum<I: Iterator<Item = ExactDecimal>>(iter: I) -> Self {
        iter.fold(ExactDecimal::zero(), Add::add)
    }
}

impl Ord for ExactDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.negative, other.negative) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (negative, _) => {
                let scale = self.scale.max(other.scale);
                let order = cmp_magnitudes(&self.magnitude_at(scale), &other.magnitude_at(scale));
                if negative {
                    order.reverse()
                } else {
                    order
                }
            }
        }
    }
}

impl PartialOrd for ExactDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for ExactDecimal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExactDecimal {}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    use super::*;

    fn dec(s: &str) -> ExactDecimal {
        s.parse().unwrap()
    }

    /// Independent value of a decimal literal as a rational number.
    fn rational(s: &str) -> BigRational {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        let numer: BigInt = format!("0{int}{frac}").parse().unwrap();
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = BigRational::new(numer, denom);
        if negative {
            -value
        } else {
            value
        }
    }

    #[test]
    fn parse_examples() {
        let a = dec("23.4");
        assert_eq!(
            (a.is_negative(), a.unscaled_digits().as_str(), a.scale()),
            (false, "234", 1)
        );
        let b = dec("-25.88");
        assert_eq!(
            (b.is_negative(), b.unscaled_digits().as_str(), b.scale()),
            (true, "2588", 2)
        );
        assert!(dec("0").is_zero());
        assert!(!dec("-0.000").is_negative());
        assert_eq!(dec("007.50").unscaled_digits(), "750");
        assert_eq!(dec(".5"), dec("0.5"));
        assert_eq!(dec("5."), dec("5"));
        assert_eq!(dec("+12"), dec("12"));
    }

    #[test]
    fn parse_errors() {
        let kind = |s: &str| ExactDecimal::parse(s).unwrap_err().kind().clone();
        assert_eq!(kind(""), ParseErrorKind::Empty);
        assert_eq!(kind("."), ParseErrorKind::NoDigits);
        assert_eq!(kind("-"), ParseErrorKind::NoDigits);
        assert_eq!(kind("1.2.3"), ParseErrorKind::MultipleDots);
        assert_eq!(kind("12a"), ParseErrorKind::InvalidCharacter('a'));
        assert_eq!(kind(" 1"), ParseErrorKind::InvalidCharacter(' '));
        assert_eq!(kind("1e5"), ParseErrorKind::InvalidCharacter('e'));
        assert_eq!(kind("--1"), ParseErrorKind::InvalidCharacter('-'));
    }

    #[test]
    fn point_one_plus_point_two() {
        let sum = dec("0.1") + dec("0.2");
        assert_eq!(rational(&sum.to_string()), BigRational::new(3.into(), 10.into()));
        assert_eq!(sum, dec("0.3"));
        assert_eq!(sum.to_string(), "0.3");
    }

    #[test]
    fn additive_identity() {
        for s in ["23.4", "-25.88", "0", "31.3363"] {
            assert_eq!(dec(s) + ExactDecimal::zero(), dec(s));
            assert_eq!((dec(s) + ExactDecimal::zero()).to_string(), s);
        }
    }

    #[test]
    fn example_values_sum() {
        let values = ["23.4", "69.7", "-25.88", "31.3363"];
        let oracle: BigRational = values.iter().map(|s| rational(s)).sum();
        let sum: ExactDecimal = values.iter().map(|s| dec(s)).sum();
        assert_eq!(rational(&sum.to_string()), oracle);
        assert_eq!(sum.to_string(), "98.5563");
    }

    #[test]
    fn formatting() {
        assert_eq!(ExactDecimal::zero().to_string(), "0");
        assert_eq!(dec("-25.88").to_string(), "-25.88");
        assert_eq!(dec("0.0045").to_string(), "0.0045");
        assert_eq!(dec("-0.5").to_string(), "-0.5");
        assert_eq!((dec("0.10") + dec("0.2")).to_string(), "0.30");
        assert_eq!((dec("1.5") + dec("-1.5")).to_string(), "0.0");
        assert_eq!(format!("{:>8}", dec("1.5")), "     1.5");
    }

    #[test]
    fn mixed_sign_addition() {
        assert_eq!(dec("5") + dec("-7.25"), dec("-2.25"));
        assert_eq!(dec("-5") + dec("7.25"), dec("2.25"));
        assert_eq!(dec("-0.001") + dec("-999.999"), dec("-1000"));
        assert_eq!(dec("99.99") + dec("0.01"), dec("100"));
    }

    #[test]
    fn ordering_by_value() {
        assert!(dec("-1") < dec("0"));
        assert!(dec("-2.5") < dec("-2.25"));
        assert!(dec("0.30") == dec("0.3"));
        assert!(dec("10") > dec("9.999"));
    }

    fn decimal_literal() -> impl Strategy<Value = String> {
        ("[+-]?", "[0-9]{1,15}", prop::option::of("[0-9]{1,15}")).prop_map(|(sign, int, frac)| match frac {
            Some(frac) => format!("{sign}{int}.{frac}"),
            None => format!("{sign}{int}"),
        })
    }

    proptest! {
        #[test]
        fn addition_matches_rational_oracle(a in decimal_literal(), b in decimal_literal()) {
            let sum = dec(&a) + dec(&b);
            prop_assert_eq!(rational(&sum.to_string()), rational(&a) + rational(&b));
        }

        #[test]
        fn addition_commutes_and_associates(a in decimal_literal(), b in decimal_literal(), c in decimal_literal()) {
            let (a, b, c) = (dec(&a), dec(&b), dec(&c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a + &b) + c.clone(), a.clone() + (&b + &c));
        }

        #[test]
        fn display_round_trips(s in decimal_literal()) {
            let value = dec(&s);
            let text = value.to_string();
            prop_assert_eq!(dec(&text), value.clone());
            prop_assert_eq!(rational(&text), rational(&s));
            if value.is_zero() {
                prop_assert!(!text.starts_with('-'));
            }
        }

        #[test]
        fn ordering_matches_rational(a in decimal_literal(), b in decimal_literal()) {
            prop_assert_eq!(dec(&a).cmp(&dec(&b)), rational(&a).cmp(&rational(&b)));
            let diff = rational(&a) - rational(&b);
            prop_assert_eq!(dec(&a) == dec(&b), diff.is_zero());
            prop_assert_eq!(dec(&a) < dec(&b), diff.is_negative());
        }
    }
}
