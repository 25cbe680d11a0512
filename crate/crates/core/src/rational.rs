//! Exact rationals with a machine-word fast path.
//!
//! Values that fit in `i128 / i128` are stored inline and fall back to
//! heap-allocated big integers on overflow. The representation is canonical
//! (a value is `Big` only when it does not fit), so equality and hashing are
//! structural.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseRationalError;

type Small = Ratio<i128>;

#[derive(Clone)]
enum Repr {
    Small(Small),
    Big(BigRational),
}

/// An arbitrary-precision reduced fraction with positive denominator.
#[derive(Clone)]
pub struct Rational(Repr);

fn fits(x: &BigInt) -> Option<i128> {
    let v = x.to_i128()?;
    // Keep headroom so that negation never overflows.
    (v != i128::MIN).then_some(v)
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(Small::zero()))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(Small::one()))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small(Small::from_integer(n as i128)))
    }

    /// `numer / denom`; panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(Repr::Small(Small::new(numer as i128, denom as i128)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(numer, denom))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }

    pub fn from_big(r: BigRational) -> Self {
        match (fits(r.numer()), fits(r.denom())) {
            (Some(n), Some(d)) => Rational(Repr::Small(Small::new_raw(n, d))),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn from_small(r: Small) -> Self {
        if r.numer() == &i128::MIN || r.denom() == &i128::MIN {
            return Self::from_big(to_big(&r));
        }
        Rational(Repr::Small(r))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(s) => to_big(s),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(s) => BigInt::from(*s.numer()),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(s) => BigInt::from(*s.denom()),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(s) => s.is_zero(),
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(s) => s.is_integer(),
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(s) => s.numer().signum() as i32,
            Repr::Big(b) => {
                if b.is_zero() {
                    0
                } else if b.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        match &self.0 {
            Repr::Small(s) => i64::try_from(*s.numer()).ok(),
            Repr::Big(b) => b.numer().to_i64(),
        }
    }

    pub fn floor(&self) -> Self {
        match &self.0 {
            Repr::Small(s) => Self::from_small(s.floor()),
            Repr::Big(b) => Self::from_big(b.floor()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(s) => *s.numer() as f64 / *s.denom() as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(s) => Self::from_small(s.recip()),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn mul_int(&self, k: i64) -> Self {
        match &self.0 {
            Repr::Small(s) => {
                let k = k as i128;
                let g = s.denom().gcd(&k);
                let (kr, dr) = if g.is_zero() { (0, 1) } else { (k / g, s.denom() / g) };
                match (*s.numer()).checked_mul(kr) {
                    Some(n) => Self::from_small(Small::new_raw(n, dr)),
                    None => Self::from_big(to_big(s) * BigInt::from(k)),
                }
            }
            Repr::Big(b) => Self::from_big(b * BigInt::from(k)),
        }
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        self * &Rational::new(1, k)
    }

    /// Remainder of `self` modulo a positive `m`, in `[0, m)`.
    pub fn rem_euclid(&self, m: &Rational) -> Self {
        assert!(m.is_positive(), "modulus must be positive");
        let q = (self / m).floor();
        self - &(&q * m)
    }

    /// Fixed-point decimal rendering with `digits` fractional digits (rounded half up).
    pub fn to_decimal(&self, digits: u32) -> String {
        let big = self.to_big();
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = big * BigRational::from_integer(scale.clone());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let rounded = if scaled.is_negative() {
            -((-scaled) + half).floor()
        } else {
            (scaled + half).floor()
        };
        let n = rounded.to_integer();
        let neg = n.is_negative();
        let (int_part, frac_part) = n.abs().div_rem(&scale);
        let frac = frac_part.to_string();
        let pad = "0".repeat(digits as usize - frac.len().min(digits as usize));
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{pad}{frac}")
        }
    }
}

fn to_big(s: &Small) -> BigRational {
    BigRational::new_raw(BigInt::from(*s.numer()), BigInt::from(*s.denom()))
}

/// Numerator and denominator as big integers, borrowed when already big.
fn parts(r: &Rational) -> (Cow<'_, BigInt>, Cow<'_, BigInt>) {
    match &r.0 {
        Repr::Small(s) => (Cow::Owned(BigInt::from(*s.numer())), Cow::Owned(BigInt::from(*s.denom()))),
        Repr::Big(b) => (Cow::Borrowed(b.numer()), Cow::Borrowed(b.denom())),
    }
}

/// `n / d` with `d > 0`, reduced.
fn reduced(n: BigInt, d: BigInt) -> Rational {
    if d.is_one() {
        return Rational::from_big(BigRational::new_raw(n, d));
    }
    // Denominators are usually small; reduce the numerator modulo them first.
    let g = match d.to_u64() {
        Some(du) => {
            let r = (&n % du).abs().to_u64().expect("remainder below a u64 modulus");
            BigInt::from(r.gcd(&du))
        }
        None => n.gcd(&d),
    };
    if g.is_one() {
        Rational::from_big(BigRational::new_raw(n, d))
    } else {
        Rational::from_big(BigRational::new_raw(n / &g, d / g))
    }
}

fn big_add(a: &Rational, b: &Rational, negate_b: bool) -> Rational {
    let ((an, ad), (bn, bd)) = (parts(a), parts(b));
    let bn = if negate_b { -bn.into_owned() } else { bn.into_owned() };
    if ad == bd {
        return reduced(&*an + bn, ad.into_owned());
    }
    reduced(&*an * &*bd + bn * &*ad, &*ad * &*bd)
}

fn big_mul(a: &Rational, b: &Rational) -> Rational {
    let ((an, ad), (bn, bd)) = (parts(a), parts(b));
    reduced(&*an * &*bn, &*ad * &*bd)
}

fn big_div(a: &Rational, b: &Rational) -> Rational {
    assert!(!b.is_zero(), "division by zero");
    let ((an, ad), (bn, bd)) = (parts(a), parts(b));
    let (n, d) = (&*an * &*bd, &*ad * &*bn);
    if d.is_negative() {
        reduced(-n, -d)
    } else {
        reduced(n, d)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $big:expr) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(r) = a.$checked(b) {
                        return Rational::from_small(r);
                    }
                }
                $big(self, rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

trait CheckedDivRatio: Sized {
    fn checked_quot(&self, rhs: &Self) -> Option<Self>;
}

impl CheckedDivRatio for Small {
    fn checked_quot(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            panic!("division by zero");
        }
        let g1 = self.numer().gcd(rhs.numer());
        let g2 = self.denom().gcd(rhs.denom());
        let n = (self.numer() / g1).checked_mul(rhs.denom() / g2)?;
        let d = (self.denom() / g2).checked_mul(rhs.numer() / g1)?;
        if d == i128::MIN || n == i128::MIN {
            return None;
        }
        Some(if d < 0 { Small::new_raw(-n, -d) } else { Small::new_raw(n, d) })
    }
}

trait CheckedMulRatio: Sized {
    fn checked_prod(&self, rhs: &Self) -> Option<Self>;
}

impl CheckedMulRatio for Small {
    fn checked_prod(&self, rhs: &Self) -> Option<Self> {
        let g1 = self.numer().gcd(rhs.denom());
        let g2 = rhs.numer().gcd(self.denom());
        let (g1, g2) = (if g1 == 0 { 1 } else { g1 }, if g2 == 0 { 1 } else { g2 });
        let n = (self.numer() / g1).checked_mul(rhs.numer() / g2)?;
        let d = (self.denom() / g2).checked_mul(rhs.denom() / g1)?;
        Some(Small::new_raw(n, d))
    }
}

trait CheckedSum: Sized {
    fn checked_sum(&self, rhs: &Self) -> Option<Self>;
    fn checked_diff(&self, rhs: &Self) -> Option<Self>;
}

impl CheckedSum for Small {
    fn checked_sum(&self, rhs: &Self) -> Option<Self> {
        if self.denom() == rhs.denom() {
            let n = self.numer().checked_add(rhs.numer())?;
            return Some(Small::new(n, *self.denom()));
        }
        CheckedAdd::checked_add(self, rhs)
    }
    fn checked_diff(&self, rhs: &Self) -> Option<Self> {
        if self.denom() == rhs.denom() {
            let n = self.numer().checked_sub(rhs.numer())?;
            return Some(Small::new(n, *self.denom()));
        }
        CheckedSub::checked_sub(self, rhs)
    }
}

binop!(Add, add, checked_sum, |a, b| big_add(a, b, false));
binop!(Sub, sub, checked_diff, |a, b| big_add(a, b, true));
binop!(Mul, mul, checked_prod, big_mul);
binop!(Div, div, checked_quot, big_div);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(s) => Rational(Repr::Small(-s)),
            Repr::Big(b) => Rational::from_big(-b),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.numer() == b.numer() && a.denom() == b.denom(),
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(s) => {
                0u8.hash(state);
                s.numer().hash(state);
                s.denom().hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                if a.denom() == b.denom() {
                    return a.numer().cmp(b.numer());
                }
                a.cmp(b)
            }
            _ => {
                let ((an, ad), (bn, bd)) = (parts(self), parts(other));
                if ad == bd {
                    an.cmp(&bn)
                } else {
                    (&*an * &*bd).cmp(&(&*bn * &*ad))
                }
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(s) if *s.denom() == 1 => write!(f, "{}", s.numer()),
            Repr::Small(s) => write!(f, "{}/{}", s.numer(), s.denom()),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseRationalError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_bigints(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as \"p/q\" or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational::from_bigint(BigInt::from(v)))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}
