use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::InvalidInput(alloc::format!("`{s}` is not a rational number"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element of Q/Z, stored as its unique representative in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QmodZ(Rational);

impl QmodZ {
    pub fn new(r: Rational) -> Self {
        let floor = r.numer().div_floor(r.denom());
        QmodZ(r - Rational::from_integer(floor))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(rational(numer, denom))
    }

    pub fn zero() -> Self {
        QmodZ(Rational::zero())
    }

    pub fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `n * self` for an integer multiplier.
    pub fn times(&self, n: i64) -> Self {
        Self::new(&self.0 * int(n))
    }

    pub fn times_big(&self, n: &BigInt) -> Self {
        Self::new(&self.0 * Rational::from_integer(n.clone()))
    }

    /// Multiply by an arbitrary rational; only meaningful when the caller
    /// knows the result is independent of the chosen lift.
    pub fn times_rational(&self, r: &Rational) -> Self {
        Self::new(&self.0 * r)
    }

    /// Denominator as a machine integer (the order of `e^{2 pi i r}`).
    pub fn denom_u64(&self) -> u64 {
        u64::try_from(self.0.denom()).expect("denominator fits in u64")
    }

    pub fn numer_u64(&self) -> u64 {
        u64::try_from(self.0.numer()).expect("numerator fits in u64")
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl FromStr for QmodZ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_rational(s).map(QmodZ::new)
    }
}

impl From<Rational> for QmodZ {
    fn from(r: Rational) -> Self {
        QmodZ::new(r)
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a QmodZ> for &'a QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 + &rhs.0)
    }
}

impl AddAssign<&QmodZ> for QmodZ {
    fn add_assign(&mut self, rhs: &QmodZ) {
        *self = &*self + rhs;
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a QmodZ> for &'a QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 - &rhs.0)
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.0)
    }
}

impl Neg for &QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.0.clone())
    }
}

/// True when `r` is an integer.
pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Sign of a rational as -1, 0, 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
