//! Exact coefficient rings.
//!
//! Two rings are supported: arbitrary-precision rationals and the dual numbers
//! `Q[eps]/(eps^2)`. Every verifier in the crate is generic over [`Scalar`], so
//! a first-order deformation `R + t*S` is checked by running the ordinary
//! checker over [`Dual`] with `t` played by `eps`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Which ring a scalar type lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    Rational,
    Dual,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Rational => f.write_str("rationals"),
            RingKind::Dual => f.write_str("dual numbers"),
        }
    }
}

/// An exact commutative coefficient ring containing the rationals.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    const RING: RingKind;

    fn from_rational(q: &Rational) -> Self;

    /// The rational value, when this ring is the rationals.
    fn to_rational(&self) -> Option<Rational>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// `self * other` without consuming either side.
    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other
    }
}

impl Scalar for Rational {
    const RING: RingKind = RingKind::Rational;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// `re + eps * eps_part` with `eps^2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dual {
    pub re: Rational,
    pub eps: Rational,
}

impl Dual {
    pub fn new(re: Rational, eps: Rational) -> Self {
        Dual { re, eps }
    }

    pub fn real(re: Rational) -> Self {
        Dual {
            re,
            eps: Rational::zero(),
        }
    }

    /// The nilpotent generator `eps`.
    pub fn epsilon() -> Self {
        Dual {
            re: Rational::zero(),
            eps: Rational::one(),
        }
    }
}

impl fmt::Display for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_zero() {
            write!(f, "{}", self.re)
        } else if self.eps.is_negative() {
            write!(f, "{} - {}e", self.re, -self.eps.clone())
        } else {
            write!(f, "{} + {}e", self.re, self.eps)
        }
    }
}

impl Zero for Dual {
    fn zero() -> Self {
        Dual::real(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl One for Dual {
    fn one() -> Self {
        Dual::real(Rational::one())
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.eps)
    }
}

impl<'a> Add<&'a Dual> for Dual {
    type Output = Dual;
    fn add(self, o: &'a Dual) -> Dual {
        Dual::new(self.re + &o.re, self.eps + &o.eps)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        self + &o
    }
}

impl<'a> Sub<&'a Dual> for Dual {
    type Output = Dual;
    fn sub(self, o: &'a Dual) -> Dual {
        Dual::new(self.re - &o.re, self.eps - &o.eps)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        self - &o
    }
}

impl<'a> Mul<&'a Dual> for Dual {
    type Output = Dual;
    fn mul(self, o: &'a Dual) -> Dual {
        let eps = &self.re * &o.eps + &self.eps * &o.re;
        Dual::new(self.re * &o.re, eps)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        self * &o
    }
}

impl AddAssign for Dual {
    fn add_assign(&mut self, o: Dual) {
        *self += &o;
    }
}

impl<'a> AddAssign<&'a Dual> for Dual {
    fn add_assign(&mut self, o: &'a Dual) {
        self.re += &o.re;
        self.eps += &o.eps;
    }
}

impl SubAssign for Dual {
    fn sub_assign(&mut self, o: Dual) {
        *self -= &o;
    }
}

impl<'a> SubAssign<&'a Dual> for Dual {
    fn sub_assign(&mut self, o: &'a Dual) {
        self.re -= &o.re;
        self.eps -= &o.eps;
    }
}

impl Scalar for Dual {
    const RING: RingKind = RingKind::Dual;

    fn from_rational(q: &Rational) -> Self {
        Dual::real(q.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn mul_ref(&self, o: &Self) -> Self {
        Dual::new(&self.re * &o.re, &self.re * &o.eps + &self.eps * &o.re)
    }
}

/// Parses `"p/q"` or `"p"` (optional sign, decimal digits) into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let t = text.trim();
    let bad = || Error::Input(format!("malformed rational literal {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let valid = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix(['-', '+']).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num, true) || !valid(den, false) {
        return Err(bad());
    }
    let p = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| bad())?;
    let q = BigInt::from_str(den).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::Input(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(p, q))
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Shorthand for `p/q` as a [`Rational`]. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for the integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(parse_rational("10/-4").ok(), None);
        assert_eq!(parse_rational(" -10/4 ").unwrap(), rat(-5, 2));
        assert_eq!(format_rational(&rat(-5, 2)), "-5/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn malformed_literals() {
        for s in ["", "1/", "/2", "1.5", "a", "1/0", "--1", "1/+2"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
        assert_eq!(parse_rational("+3").unwrap(), int(3));
    }

    #[test]
    fn dual_product_rule() {
        let a = Dual::new(int(2), int(3));
        let b = Dual::new(int(5), rat(1, 2));
        let p = a.clone() * &b;
        assert_eq!(p, Dual::new(int(10), int(1) + int(15)));
        assert_eq!(a.mul_ref(&b), p);
        let e = Dual::epsilon();
        assert!((e.clone() * e).is_zero());
    }

    #[test]
    fn dual_matches_first_order_taylor() {
        // p(x) = 3x^3 - 2x + 1/2, p'(x) = 9x^2 - 2
        let p = |x: Dual| {
            let three = Dual::from_int(3);
            let two = Dual::from_int(2);
            let half = Dual::from_rational(&rat(1, 2));
            three * &x * &x * &x - two * &x + half
        };
        for a in [-3i64, 0, 1, 4] {
            for b in [-2i64, 1, 7] {
                let out = p(Dual::new(int(a), int(b)));
                let av = int(a);
                let value = int(3) * &av * &av * &av - int(2) * &av + rat(1, 2);
                let deriv = int(9) * &av * &av - int(2);
                assert_eq!(out.re, value);
                assert_eq!(out.eps, deriv * int(b));
            }
        }
    }
}
