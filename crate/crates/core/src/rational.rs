//! Exact rational numbers.
//!
//! Small values live in a pair of machine words; anything that overflows is
//! promoted to a big rational and demoted again once it fits.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_rational::BigRational;

/// A rational number in lowest terms with positive denominator.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Large(BigRational),
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_int(n: i64) -> Rational {
        Rational::Small(n, 1)
    }

    pub fn zero() -> Rational {
        Rational::Small(0, 1)
    }

    pub fn one() -> Rational {
        Rational::Small(1, 1)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Rational {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn from_i128(mut num: i128, mut den: i128) -> Rational {
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Large(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Large(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Large(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Large(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Large(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Large(r) => r.denom().is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Large(r) => r.numer().is_negative(),
        }
    }

    /// The value as an `i64` if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rational::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Large(r) => Self::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::Small(n, 1)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::Small(n as i64, 1)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::from_i128(n as i128, 1)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_big(BigRational::new_raw(n, BigInt::one()))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            // normalized: a Large value never equals a Small one
            (Rational::Large(x), Rational::Large(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rational::Large(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => {
                let (x, y) = (self.to_big(), other.to_big());
                x.cmp(&y)
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(a, 1), Rational::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Rational::Small(s, 1),
                None => Rational::from_i128(*a as i128 + *c as i128, 1),
            },
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(a, 1), Rational::Small(c, 1)) => match a.checked_mul(*c) {
                Some(s) => Rational::Small(s, 1),
                None => Rational::from_i128(*a as i128 * *c as i128, 1),
            },
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        self * &rhs.recip()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Rational::from_i128(-(*n as i128), *d as i128),
            },
            Rational::Large(r) => {
                Rational::from_big(-r.clone())
            }
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

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

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Large(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Rational::Large(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rational::from_bigints(n, d))
    }
}

/// Serialized as `[num, den]`; components that do not fit an `i64` are
/// written as decimal strings.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(2)?;
        match self {
            Rational::Small(n, d) => {
                t.serialize_element(n)?;
                t.serialize_element(d)?;
            }
            Rational::Large(r) => {
                t.serialize_element(&IntRepr::from_big(r.numer()))?;
                t.serialize_element(&IntRepr::from_big(r.denom()))?;
            }
        }
        t.end()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_big(n: &BigInt) -> IntRepr {
        match n.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(n.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (n, m): (IntRepr, IntRepr) = Deserialize::deserialize(d)?;
        let n = n.to_big().map_err(serde::de::Error::custom)?;
        let m = m.to_big().map_err(serde::de::Error::custom)?;
        if m.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational::from_bigints(n, m))
    }
}
