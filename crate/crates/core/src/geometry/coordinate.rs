//! Exact rational coordinates.
//!
//! Values that fit a reduced `i64/i64` fraction stay on a machine-word path
//! (comparisons and arithmetic go through `i128` intermediates); everything
//! else is a heap-allocated [`BigRational`]. The representation is canonical:
//! a value is `Small` iff its reduced form fits, so derived equality and
//! hashing agree with the rational value.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone)]
enum Repr {
    /// Reduced, `den > 0`, `num != i64::MIN`.
    Small(i64, i64),
    Big(Box<BigRational>),
}

/// An exact rational number. Every geometric quantity in the crate is one.
#[derive(Clone)]
pub struct Coordinate(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    if a == 0 || b == 0 {
        return (a | b) as i128;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        if let (Ok(x), Ok(y)) = (u64::try_from(a), u64::try_from(b)) {
            return ((gcd_u64(x, y) as u128) << shift) as i128;
        }
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return (a << shift) as i128;
        }
    }
}

impl Coordinate {
    pub fn zero() -> Self {
        Coordinate(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Coordinate(Repr::Small(1, 1))
    }

    pub fn from_int(v: i64) -> Self {
        if v == i64::MIN {
            return Self::from_big(BigRational::from_integer(BigInt::from(v)));
        }
        Coordinate(Repr::Small(v, 1))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(v))
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_big_ratio(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    /// 2^e for e ≥ 0.
    pub fn pow2(e: u32) -> Self {
        if e < 62 {
            Coordinate(Repr::Small(1i64 << e, 1))
        } else {
            Self::from_bigint(BigInt::one() << e as usize)
        }
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = gcd_i128(num, den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Coordinate(Repr::Small(n, d)),
            _ => Coordinate(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            )))),
        }
    }

    /// Canonicalizes a big rational, demoting it when it fits.
    fn from_big(r: BigRational) -> Self {
        // BigRational::new reduces; new_raw callers reduce beforehand.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Coordinate(Repr::Small(n, d));
            }
        }
        Coordinate(Repr::Big(Box::new(r)))
    }

    fn parts(&self) -> (Cow<'_, BigInt>, Cow<'_, BigInt>) {
        match &self.0 {
            Repr::Small(n, d) => (Cow::Owned(BigInt::from(*n)), Cow::Owned(BigInt::from(*d))),
            Repr::Big(b) => (Cow::Borrowed(b.numer()), Cow::Borrowed(b.denom())),
        }
    }

    /// `self ± rhs` on the big path. Skips normalization when a denominator
    /// is one, since the result is then already reduced.
    fn big_add_sub(&self, rhs: &Coordinate, negate: bool) -> Coordinate {
        let (a, b) = self.parts();
        let (c, d) = rhs.parts();
        let c: BigInt = if negate { -c.into_owned() } else { c.into_owned() };
        if b.is_one() {
            return Coordinate::from_big(BigRational::new_raw(&*a * &*d + c, d.into_owned()));
        }
        if d.is_one() {
            return Coordinate::from_big(BigRational::new_raw(&*a + c * &*b, b.into_owned()));
        }
        if *b == *d {
            return Coordinate::from_big(BigRational::new(&*a + c, b.into_owned()));
        }
        Coordinate::from_big(BigRational::new(&*a * &*d + c * &*b, &*b * &*d))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Largest integer ≤ self.
    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n.div_floor(d)),
            Repr::Big(b) => b.floor().to_integer(),
        }
    }

    /// Smallest integer ≥ self.
    pub fn ceil(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n.div_ceil(d)),
            Repr::Big(b) => b.ceil().to_integer(),
        }
    }

    /// `⌊self / l⌋` for `l > 0`, without normalizing the quotient.
    pub fn floor_div(&self, l: &Coordinate) -> BigInt {
        debug_assert!(!l.is_negative() && !l.is_zero());
        if let (Repr::Small(..), Repr::Small(..)) = (&self.0, &l.0) {
            return (self / l).floor();
        }
        let (a, b) = self.parts();
        let (c, d) = l.parts();
        (&*a * &*d).div_floor(&(&*b * &*c))
    }

    /// `⌈hi − lo⌉` without normalizing the difference.
    pub fn diff_ceil(hi: &Coordinate, lo: &Coordinate) -> BigInt {
        if let (Repr::Small(..), Repr::Small(..)) = (&hi.0, &lo.0) {
            return (hi - lo).ceil();
        }
        let (a, b) = hi.parts();
        let (c, d) = lo.parts();
        if *b == *d {
            return (&*a - &*c).div_ceil(&b);
        }
        (&*a * &*d - &*c * &*b).div_ceil(&(&*b * &*d))
    }

    /// Floor as `i64` when it fits. Used on hot paths (unit-cell counting).
    pub fn floor_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, d) => Some(n.div_floor(d)),
            Repr::Big(b) => b.floor().to_integer().to_i64(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Lossy conversion for statistics and reporting only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => {
                let n = b.numer().to_f64().unwrap_or(f64::NAN);
                let d = b.denom().to_f64().unwrap_or(f64::NAN);
                if n.is_finite() && d.is_finite() {
                    n / d
                } else {
                    // Scale both down by the same power of two.
                    let shift = b.numer().bits().max(b.denom().bits()).saturating_sub(1000);
                    let n = (b.numer() >> shift as usize).to_f64().unwrap_or(f64::NAN);
                    let d = (b.denom() >> shift as usize).to_f64().unwrap_or(f64::NAN);
                    n / d
                }
            }
        }
    }

    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(..))
    }
}

impl Default for Coordinate {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Coordinate {
    fn from(v: i64) -> Self {
        Coordinate::from_int(v)
    }
}

impl From<i32> for Coordinate {
    fn from(v: i32) -> Self {
        Coordinate::from_int(v as i64)
    }
}

impl From<u64> for Coordinate {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(v) => Coordinate::from_int(v),
            Err(_) => Coordinate::from_bigint(BigInt::from(v)),
        }
    }
}

impl From<usize> for Coordinate {
    fn from(v: usize) -> Self {
        Coordinate::from(v as u64)
    }
}

impl From<BigInt> for Coordinate {
    fn from(v: BigInt) -> Self {
        Coordinate::from_bigint(v)
    }
}

impl From<BigRational> for Coordinate {
    fn from(v: BigRational) -> Self {
        Coordinate::from_big(v)
    }
}

impl PartialEq for Coordinate {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            // Canonical form: a Small never equals a Big.
            _ => false,
        }
    }
}

impl Eq for Coordinate {}

impl Hash for Coordinate {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl Ord for Coordinate {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    a.cmp(c)
                } else {
                    (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
                }
            }
            _ => {
                let (a, b) = self.parts();
                let (c, d) = other.parts();
                if *b == *d {
                    a.cmp(&c)
                } else {
                    (&*a * &*d).cmp(&(&*c * &*b))
                }
            }
        }
    }
}

impl PartialOrd for Coordinate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Coordinate> for &'a Coordinate {
    type Output = Coordinate;
    fn add(self, rhs: &Coordinate) -> Coordinate {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Coordinate::from_i128(a + c, b);
            }
            if let Some(n) = (a * d).checked_add(c * b) {
                if let Some(den) = b.checked_mul(d) {
                    return Coordinate::from_i128(n, den);
                }
            }
        }
        self.big_add_sub(rhs, false)
    }
}

impl<'a> Sub<&'a Coordinate> for &'a Coordinate {
    type Output = Coordinate;
    fn sub(self, rhs: &Coordinate) -> Coordinate {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Coordinate::from_i128(a - c, b);
            }
            if let Some(n) = (a * d).checked_sub(c * b) {
                if let Some(den) = b.checked_mul(d) {
                    return Coordinate::from_i128(n, den);
                }
            }
        }
        self.big_add_sub(rhs, true)
    }
}

impl<'a> Mul<&'a Coordinate> for &'a Coordinate {
    type Output = Coordinate;
    fn mul(self, rhs: &Coordinate) -> Coordinate {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Coordinate::from_i128(a * c, b * d);
        }
        let (a, b) = self.parts();
        let (c, d) = rhs.parts();
        if b.is_one() && d.is_one() {
            return Coordinate::from_big(BigRational::new_raw(&*a * &*c, BigInt::one()));
        }
        Coordinate::from_big(BigRational::new(&*a * &*c, &*b * &*d))
    }
}

impl<'a> Div<&'a Coordinate> for &'a Coordinate {
    type Output = Coordinate;
    fn div(self, rhs: &Coordinate) -> Coordinate {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Coordinate::from_i128(a * d, b * c);
        }
        let (a, b) = self.parts();
        let (c, d) = rhs.parts();
        Coordinate::from_big(BigRational::new(&*a * &*d, &*b * &*c))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coordinate> for Coordinate {
            type Output = Coordinate;
            fn $m(self, rhs: Coordinate) -> Coordinate {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Coordinate> for Coordinate {
            type Output = Coordinate;
            fn $m(self, rhs: &Coordinate) -> Coordinate {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Coordinate> for &'a Coordinate {
            type Output = Coordinate;
            fn $m(self, rhs: Coordinate) -> Coordinate {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for &Coordinate {
    type Output = Coordinate;
    fn neg(self) -> Coordinate {
        match &self.0 {
            Repr::Small(n, d) => Coordinate(Repr::Small(-n, *d)),
            Repr::Big(b) => Coordinate::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Coordinate {
    type Output = Coordinate;
    fn neg(self) -> Coordinate {
        -&self
    }
}

impl std::iter::Sum for Coordinate {
    fn sum<I: Iterator<Item = Coordinate>>(iter: I) -> Self {
        iter.fold(Coordinate::zero(), |a, b| a + b)
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Coordinate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            msg: format!("not a rational: {s:?}"),
        };
        let parse_int = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Coordinate::from_bigint(parse_int(s)?)),
            Some((p, q)) => {
                let p = parse_int(p)?;
                if q.starts_with('-') {
                    return Err(bad());
                }
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Coordinate::from_big_ratio(p, q))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Coordinate {
        s.parse().unwrap()
    }

    #[test]
    fn reduces_and_orders() {
        assert_eq!(Coordinate::ratio(2, 4), Coordinate::ratio(1, 2));
        assert_eq!(Coordinate::ratio(3, -6), Coordinate::ratio(-1, 2));
        assert!(Coordinate::ratio(1, 3) < Coordinate::ratio(1, 2));
        assert_eq!(c("7/2") - c("1/2"), Coordinate::from(3));
    }

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let big = Coordinate::from(i64::MAX);
        let sum = &big + &big;
        assert!(!sum.is_small());
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert!(back.is_small());
        assert_eq!(back, big);
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(c("-3/2").floor(), BigInt::from(-2));
        assert_eq!(c("-3/2").ceil(), BigInt::from(-1));
        assert_eq!(c("5").ceil(), BigInt::from(5));
        let huge = Coordinate::pow2(100) + Coordinate::ratio(1, 3);
        assert_eq!(huge.floor(), BigInt::one() << 100usize);
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "-17", "3/4", "-5/9", "1267650600228229401496703205376/3"] {
            assert_eq!(c(s).to_string(), s);
        }
        assert!("1/0".parse::<Coordinate>().is_err());
        assert!("1/-2".parse::<Coordinate>().is_err());
        assert!("1.5".parse::<Coordinate>().is_err());
        assert!("".parse::<Coordinate>().is_err());
    }

    #[test]
    fn hash_agrees_with_eq_across_paths() {
        use std::collections::HashSet;
        let a = Coordinate::pow2(70) / Coordinate::pow2(69);
        let mut set = HashSet::new();
        set.insert(Coordinate::from(2));
        assert!(set.contains(&a));
    }
}
