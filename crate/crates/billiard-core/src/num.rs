//! Exact scalars of the form `a + b*sqrt(d)` over arbitrary-precision
//! rationals, with `d` a fixed square-free nonnegative integer shared by all
//! scalars in a computation. Signs and comparisons are decided exactly by
//! comparing `a^2` against `b^2 d`, never by floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// `a + b*sqrt(d)` with `a, b` rational. Normalized so that `b == 0` implies
/// `d == 0`; `d == 1` folds into the rational part on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("radicand {0} is not square-free")]
    NotSquareFree(u64),
    #[error("malformed scalar literal {0:?}")]
    Malformed(String),
    #[error("division by zero scalar")]
    DivisionByZero,
}

/// True when `d` has no repeated prime factor (0 and 1 count as square-free).
pub fn is_square_free(d: u64) -> bool {
    if d < 4 {
        return true;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn unify_d(x: u64, y: u64) -> u64 {
    if x == y || y == 0 {
        x
    } else if x == 0 {
        y
    } else {
        panic!("mixed quadratic fields: sqrt({x}) vs sqrt({y})");
    }
}

impl QuadScalar {
    /// Builds `a + b*sqrt(d)`, normalizing degenerate radicands.
    /// Panics if `d` is not square-free; validated inputs should use
    /// [`is_square_free`] first.
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        assert!(is_square_free(d), "radicand {d} is not square-free");
        if d == 1 {
            return Self { a: a + b, b: Rational::zero(), d: 0 };
        }
        if b.is_zero() || d == 0 {
            assert!(d != 0 || b.is_zero(), "sqrt(0) term with nonzero coefficient");
            return Self { a, b: Rational::zero(), d: 0 };
        }
        Self { a, b, d }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), d: 0 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `p/q` as a plain rational scalar; `q` must be nonzero.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `(p/q) * sqrt(d)`.
    pub fn sqrt_term(p: i64, q: i64, d: u64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::new(
            Rational::zero(),
            Rational::new(BigInt::from(p), BigInt::from(q)),
            d,
        )
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    /// The radicand, 0 for plain rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign in {-1, 0, +1}. When the two terms disagree in sign the
    /// result hinges on comparing `a^2` with `b^2 d`, which stays in `Q`.
    pub fn sign(&self) -> i8 {
        let sa = rat_sign(&self.a);
        if self.b.is_zero() {
            return sa;
        }
        let sb = rat_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => -sa,
            Ordering::Equal => 0,
        }
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let d_rat = Rational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * d_rat;
        if norm.is_zero() {
            // Only possible for a = b = 0 when d is irrational; d = 1 was
            // folded away in the constructor.
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::new(&self.a / &norm, -&self.b / &norm, self.d))
    }

    /// Doubles as the canonical text form: `p/q` or `p/q+r/s*sqrt(d)` with the
    /// sign of the radical term folded into the separator.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }
}

fn rat_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a.numer(), self.a.denom())?;
        if !self.b.is_zero() {
            let sep = if self.b.is_negative() { '-' } else { '+' };
            let abs = self.b.abs();
            write!(f, "{sep}{}/{}*sqrt({})", abs.numer(), abs.denom(), self.d)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadScalar({self})")
    }
}

impl FromStr for QuadScalar {
    type Err = ScalarError;

    /// Accepts the canonical form plus integer shorthand (`3` for `3/1`) and
    /// an explicit `+`/`-` separated radical term.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let bad = || ScalarError::Malformed(s.to_string());
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(bad());
        }
        let (head, rest) = take_rational(s).ok_or_else(bad)?;
        if rest.is_empty() {
            return Ok(Self::from_rational(head));
        }
        let mut chars = rest.chars();
        let sep = chars.next().ok_or_else(bad)?;
        let sign: i64 = match sep {
            '+' => 1,
            '-' => -1,
            _ => return Err(bad()),
        };
        let (coef, tail) = take_rational(chars.as_str()).ok_or_else(bad)?;
        let inner = tail
            .strip_prefix("*sqrt(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        if inner.is_empty() || !inner.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let d: u64 = inner.parse().map_err(|_| bad())?;
        if !is_square_free(d) {
            return Err(ScalarError::NotSquareFree(d));
        }
        let b = coef * Rational::from_integer(BigInt::from(sign));
        Ok(Self::new(head, b, d))
    }
}

/// Parses a leading `INT` or `INT/INT` (optionally negated) and returns the
/// remainder of the input.
fn take_rational(s: &str) -> Option<(Rational, &str)> {
    let bytes = s.as_bytes();
    let mut i = 0;
    if i < bytes.len() && bytes[i] == b'-' {
        i += 1;
    }
    let num_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == num_start {
        return None;
    }
    let numer: BigInt = s[..i].parse().ok()?;
    if i < bytes.len() && bytes[i] == b'/' {
        let den_start = i + 1;
        let mut j = den_start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        if j == den_start {
            return None;
        }
        let denom: BigInt = s[den_start..j].parse().ok()?;
        if denom.is_zero() {
            return None;
        }
        Some((Rational::new(numer, denom), &s[j..]))
    } else {
        Some((Rational::from_integer(numer), &s[i..]))
    }
}

impl<'a, 'b> Add<&'b QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: &'b QuadScalar) -> QuadScalar {
        let d = unify_d(self.d, rhs.d);
        QuadScalar::new(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a, 'b> Sub<&'b QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: &'b QuadScalar) -> QuadScalar {
        let d = unify_d(self.d, rhs.d);
        QuadScalar::new(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a, 'b> Mul<&'b QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: &'b QuadScalar) -> QuadScalar {
        let d = unify_d(self.d, rhs.d);
        let d_rat = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * d_rat;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadScalar::new(a, b, d)
    }
}

impl<'a, 'b> Div<&'b QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn div(self, rhs: &'b QuadScalar) -> QuadScalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl<'a> Neg for &'a QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar::new(-&self.a, -&self.b, self.d)
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qs(a: (i64, i64), b: (i64, i64), d: u64) -> QuadScalar {
        QuadScalar::new(
            Rational::new(BigInt::from(a.0), BigInt::from(a.1)),
            Rational::new(BigInt::from(b.0), BigInt::from(b.1)),
            d,
        )
    }

    #[test]
    fn sign_of_mixed_terms_uses_square_comparison() {
        // -5 + 3*sqrt(3) is positive because 27 > 25.
        assert_eq!(qs((-5, 1), (3, 1), 3).sign(), 1);
        // 1/2 - 1/3*sqrt(2) is positive because 1/4 > 2/9.
        assert_eq!(qs((1, 2), (-1, 3), 2).sign(), 1);
        assert_eq!(QuadScalar::zero().sign(), 0);
        // 2 - sqrt(3) > 0, sqrt(3) - 2 < 0.
        assert_eq!(qs((2, 1), (-1, 1), 3).sign(), 1);
        assert_eq!(qs((-2, 1), (1, 1), 3).sign(), -1);
    }

    #[test]
    fn sqrt_one_folds_into_rational_part() {
        let x = qs((1, 2), (3, 2), 1);
        assert!(x.is_rational());
        assert_eq!(x, QuadScalar::from_integer(2));
    }

    #[test]
    fn rational_zero_radical_normalizes_radicand() {
        let x = qs((5, 3), (0, 1), 7);
        assert_eq!(x.radicand(), 0);
        assert_eq!(x, QuadScalar::from_ratio(5, 3));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let cases = [
            QuadScalar::from_ratio(-3, 2),
            QuadScalar::zero(),
            qs((1, 2), (1, 2), 3),
            qs((0, 1), (-2, 1), 2),
        ];
        for x in &cases {
            let s = x.to_string();
            let back: QuadScalar = s.parse().unwrap();
            assert_eq!(&back, x, "round trip through {s}");
        }
        assert_eq!(qs((1, 2), (1, 2), 3).to_string(), "1/2+1/2*sqrt(3)");
        assert_eq!(qs((0, 1), (-2, 1), 2).to_string(), "0/1-2/1*sqrt(2)");
    }

    #[test]
    fn parse_accepts_integer_shorthand() {
        assert_eq!("3".parse::<QuadScalar>().unwrap(), QuadScalar::from_integer(3));
        assert_eq!("-4/6".parse::<QuadScalar>().unwrap(), QuadScalar::from_ratio(-2, 3));
        assert!("1/2 + 1/2*sqrt(3)".parse::<QuadScalar>().is_err());
        assert!("1/0".parse::<QuadScalar>().is_err());
        assert!("2+1/1*sqrt(12)".parse::<QuadScalar>().is_err());
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let x = qs((2, 1), (-1, 1), 3);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, QuadScalar::one());
        assert_eq!(QuadScalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn square_free_detection() {
        for d in [0u64, 1, 2, 3, 5, 6, 7, 10, 30] {
            assert!(is_square_free(d), "{d}");
        }
        for d in [4u64, 8, 9, 12, 18, 25, 50] {
            assert!(!is_square_free(d), "{d}");
        }
    }

    /// Brackets sqrt(d) by rationals accurate to ~30 digits, giving an
    /// independent interval check of the exact sign logic.
    fn sign_by_interval(x: &QuadScalar) -> Option<i8> {
        let scale = BigInt::from(10u8).pow(30u32);
        let target = BigInt::from(x.radicand()) * &scale * &scale;
        let root = target.sqrt();
        let lo = Rational::new(root.clone(), scale.clone());
        let hi = Rational::new(root + 1, scale);
        let b = x.radical_part();
        let (t1, t2) = (x.rational_part() + b * &lo, x.rational_part() + b * &hi);
        let (lo_v, hi_v) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        if lo_v.is_positive() {
            Some(1)
        } else if hi_v.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    proptest! {
        #[test]
        fn sign_agrees_with_interval_evaluation(
            an in -40i64..40, ad in 1i64..12,
            bn in -40i64..40, bd in 1i64..12,
            d in prop::sample::select(vec![2u64, 3, 5, 7])
        ) {
            let x = qs((an, ad), (bn, bd), d);
            if let Some(expected) = sign_by_interval(&x) {
                prop_assert_eq!(x.sign(), expected);
            } else {
                prop_assert_eq!(x.sign(), 0);
            }
        }

        #[test]
        fn ring_axioms_hold_on_samples(
            a1 in -9i64..9, b1 in -9i64..9,
            a2 in -9i64..9, b2 in -9i64..9
        ) {
            let x = qs((a1, 1), (b1, 1), 5);
            let y = qs((a2, 1), (b2, 1), 5);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            let z = qs((3, 2), (-1, 3), 5);
            let lhs = &x * &(&y + &z);
            let rhs = &(&x * &y) + &(&x * &z);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn order_is_total_and_consistent_with_sign(
            a1 in -20i64..20, b1 in -20i64..20,
            a2 in -20i64..20, b2 in -20i64..20
        ) {
            let x = qs((a1, 3), (b1, 7), 2);
            let y = qs((a2, 3), (b2, 7), 2);
            let diff_sign = (&x - &y).sign();
            prop_assert_eq!(x.cmp(&y) as i8, diff_sign);
        }
    }
}
