use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::poly;
use super::qmodz::{format_rational, int, QmodZ, Rational};
use crate::arith::{factorize, lcm};
use crate::error::{Error, Result};

/// Largest cyclotomic order arithmetic will promote to unless told otherwise.
pub const DEFAULT_ORDER_CAP: u64 = 100_000;

/// An element of the cyclotomic field Q(zeta_N), stored as the coefficients
/// of a polynomial in `zeta_N` reduced modulo the `N`-th cyclotomic
/// polynomial (so exactly `phi(N)` coefficients, lowest power first).
///
/// The order is the field the value was built in, not the smallest field
/// containing it. Binary operations promote both sides to the lcm of the
/// orders. Equality compares across orders.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn reduced(order: u64, mut dense: Vec<Rational>) -> Self {
        let phi = poly::cyclotomic_polynomial(order);
        poly::reduce_mod_monic(&mut dense, &phi);
        Cyclotomic { order, coeffs: dense }
    }

    /// Build from an arbitrary coefficient list in powers of `zeta_order`;
    /// the list may be longer than `phi(order)` and is reduced.
    pub fn from_coefficients(order: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("cyclotomic order must be positive".into()));
        }
        if order > DEFAULT_ORDER_CAP {
            return Err(Error::OrderOverflow { order, cap: DEFAULT_ORDER_CAP });
        }
        Ok(Self::reduced(order, coeffs))
    }

    /// `sum_k c_k zeta_order^k` for exponents taken modulo `order`.
    pub fn from_exponent_sum<I>(order: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        let mut dense = vec![Rational::zero(); order as usize];
        for (k, c) in terms {
            dense[(k % order) as usize] += c;
        }
        Self::reduced(order, dense)
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![r] }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `zeta_n^k = e^{2 pi i k / n}`.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as u64;
        Self::from_exponent_sum(n, [(k, Rational::one())])
    }

    pub fn zeta(n: u64) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// `e^{2 pi i r}`, built in Q(zeta_d) with `d` the denominator of `r`.
    pub fn root_of_unity(r: &QmodZ) -> Self {
        Self::zeta_pow(r.denom_u64(), r.numer_u64() as i64)
    }

    /// The positive square root of `n`. Square factors are pulled out; each
    /// remaining prime uses a quadratic Gauss sum (`zeta_8 + zeta_8^{-1}` for 2).
    pub fn sqrt_nat(n: u64) -> Self {
        assert!(n >= 1, "sqrt_nat needs a positive argument");
        let mut outside = 1i64;
        let mut out = Cyclotomic::one();
        for (p, e) in factorize(n) {
            outside *= (p as i64).pow(e / 2);
            if e % 2 == 1 {
                out = &out * &sqrt_prime(p);
            }
        }
        out.scale(&int(outside))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the value is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Re-express in Q(zeta_m); `m` must be a multiple of the current order.
    pub fn promote(&self, m: u64) -> Result<Self> {
        self.promote_capped(m, DEFAULT_ORDER_CAP)
    }

    pub fn promote_capped(&self, m: u64, cap: u64) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.order) {
            return Err(Error::InvalidInput(alloc::format!("cannot embed Q(zeta_{}) into Q(zeta_{m})", self.order)));
        }
        if m > cap {
            return Err(Error::OrderOverflow { order: m, cap });
        }
        Ok(self.promote_unchecked(m))
    }

    fn promote_unchecked(&self, m: u64) -> Self {
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut dense = vec![Rational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            dense[k * step] = c.clone();
        }
        Self::reduced(m, dense)
    }

    fn common(&self, other: &Self, cap: u64) -> Result<(Self, Self)> {
        let m = lcm(self.order, other.order);
        if m > cap {
            return Err(Error::OrderOverflow { order: m, cap });
        }
        Ok((self.promote_unchecked(m), other.promote_unchecked(m)))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other, DEFAULT_ORDER_CAP)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(Cyclotomic { order: a.order, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.try_mul_capped(other, DEFAULT_ORDER_CAP)
    }

    pub fn try_mul_capped(&self, other: &Self, cap: u64) -> Result<Self> {
        let (a, b) = self.common(other, cap)?;
        Ok(Self::reduced(a.order, poly::mul(&a.coeffs, &b.coeffs)))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Cyclotomic::from_rational(r.recip()).promote_unchecked(self.order));
        }
        let phi = poly::cyclotomic_polynomial(self.order);
        let coeffs = poly::inverse_mod(&self.coeffs, &phi).ok_or(Error::DivisionByZero)?;
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn try_pow(&self, exp: i64) -> Result<Self> {
        let mut base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Cyclotomic::one().promote_unchecked(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, exp: i64) -> Self {
        self.try_pow(exp).expect("cyclotomic power")
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn neg_ref(&self) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order;
        Self::from_exponent_sum(n, self.coeffs.iter().enumerate().map(|(k, c)| ((n - k as u64) % n, c.clone())))
    }

    /// Evaluate at `zeta_N = e^{2 pi i / N}`. Only for display and cross
    /// checks; `f64` carries at most about 15 significant digits, so larger
    /// `precision` requests are served at that accuracy.
    pub fn to_complex(&self, precision: u32) -> Complex64 {
        debug_assert!(precision >= 1);
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * core::f64::consts::PI * (k as f64) / n;
            acc += Complex64::new(libm::cos(angle), libm::sin(angle)) * x;
        }
        acc
    }

    /// If the value is a root of unity, its multiplicative order.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        let limit = 2 * self.order;
        let one = Cyclotomic::one();
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc == one {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Human readable form such as `1/2 + z8^3` (with `zN` standing for
    /// `e^{2 pi i / N}`).
    pub fn to_expression(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => alloc::format!("z{}", self.order),
                _ => alloc::format!("z{}^{k}", self.order),
            };
            if k == 0 {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format_rational(&mag));
                out.push('*');
                out.push_str(&power);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        return &Cyclotomic::zeta_pow(8, 1) + &Cyclotomic::zeta_pow(8, -1);
    }
    let gauss = Cyclotomic::from_exponent_sum(p, (0..p).map(|a| (a * a % p, Rational::one())));
    if p % 4 == 1 {
        gauss
    } else {
        // the quadratic Gauss sum is i * sqrt(p) here
        &gauss * &Cyclotomic::zeta_pow(4, 3)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = lcm(self.order, other.order);
        self.promote_unchecked(m).coeffs == other.promote_unchecked(m).coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl From<BigInt> for Cyclotomic {
    fn from(n: BigInt) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(n))
    }
}

// Operator forms panic on order overflow, like integer overflow in debug
// builds; the `try_*` methods report it instead.
macro_rules! forward_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$try(rhs).expect("cyclotomic order overflow")
            }
        }
        impl $trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$try(&rhs).expect("cyclotomic order overflow")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl core::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qmodz::rational;

    #[test]
    fn roots_of_unity() {
        assert_eq!(Cyclotomic::root_of_unity(&QmodZ::zero()), Cyclotomic::one());
        assert_eq!(Cyclotomic::root_of_unity(&QmodZ::half()), Cyclotomic::from_integer(-1));
        let z8 = Cyclotomic::root_of_unity(&QmodZ::from_ratio(1, 8));
        assert_eq!(z8.pow(8), Cyclotomic::one());
        assert_ne!(z8.pow(4), Cyclotomic::one());
        assert_eq!(z8.coefficients().len(), 4);
    }

    #[test]
    fn field_ops_examples() {
        let z8 = Cyclotomic::zeta(8);
        assert_eq!(&z8 * &z8.inv().unwrap(), Cyclotomic::one());
        assert_eq!(&z8 * &Cyclotomic::zeta_pow(8, -1), Cyclotomic::one());
        let sum = Cyclotomic::zeta(3) + Cyclotomic::zeta_pow(3, 2) + Cyclotomic::one();
        assert!(sum.is_zero());

        // (zeta_4 + zeta_6)^2 = zeta_12^6 + 2 zeta_12^5 + zeta_12^4, expanded by hand
        let s = Cyclotomic::zeta(4) + Cyclotomic::zeta(6);
        assert_eq!(s.order(), 12);
        let direct = Cyclotomic::from_exponent_sum(12, [(6, int(1)), (5, int(2)), (4, int(1))]);
        assert_eq!(&s * &s, direct);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Cyclotomic::one().try_div(&Cyclotomic::zero()), Err(Error::DivisionByZero));
        let vanishing = Cyclotomic::zeta(3) + Cyclotomic::zeta_pow(3, 2) + Cyclotomic::one();
        assert_eq!(vanishing.inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn order_cap_is_enforced() {
        let a = Cyclotomic::zeta(99_991);
        let b = Cyclotomic::zeta(2 * 3);
        assert!(matches!(a.try_mul(&b), Err(Error::OrderOverflow { .. })));
        assert!(matches!(
            Cyclotomic::zeta(8).try_mul_capped(&Cyclotomic::zeta(3), 12),
            Err(Error::OrderOverflow { order: 24, cap: 12 })
        ));
    }

    #[test]
    fn square_roots() {
        assert_eq!(Cyclotomic::sqrt_nat(1), Cyclotomic::one());
        assert_eq!(Cyclotomic::sqrt_nat(4), Cyclotomic::from_integer(2));
        let r2 = Cyclotomic::sqrt_nat(2);
        assert_eq!(r2, Cyclotomic::zeta(8) + Cyclotomic::zeta_pow(8, -1));
        assert_eq!(&r2 * &r2, Cyclotomic::from_integer(2));
        for n in 1..=60u64 {
            let r = Cyclotomic::sqrt_nat(n);
            assert_eq!(&r * &r, Cyclotomic::from_integer(n as i64), "n = {n}");
            let z = r.to_complex(12);
            assert!((z.re - libm::sqrt(n as f64)).abs() < 1e-9, "n = {n}");
            assert!(z.im.abs() < 1e-9);
        }
    }

    #[test]
    fn complex_embedding() {
        let z = Cyclotomic::one().to_complex(12);
        assert_eq!((z.re, z.im), (1.0, 0.0));
        let i = Cyclotomic::zeta(4).to_complex(12);
        assert!(i.re.abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
        let r5 = Cyclotomic::sqrt_nat(5).to_complex(10);
        assert!((r5.re - 2.236_067_977_499_79).abs() < 1e-9);
    }

    #[test]
    fn rational_detection_and_conjugation() {
        let r2 = Cyclotomic::sqrt_nat(2);
        assert_eq!(r2.to_rational(), None);
        assert_eq!((&r2 * &r2).to_rational(), Some(int(2)));
        let z = Cyclotomic::zeta(12);
        assert_eq!(&z * &z.conj(), Cyclotomic::one());
        assert_eq!(r2.conj(), r2);
        assert_eq!(Cyclotomic::from_rational(rational(3, 4)).scale(&int(4)), Cyclotomic::from_integer(3));
    }

    #[test]
    fn root_of_unity_orders() {
        assert_eq!(Cyclotomic::zeta_pow(24, 4).root_of_unity_order(), Some(6));
        assert_eq!(Cyclotomic::one().root_of_unity_order(), Some(1));
        assert_eq!(Cyclotomic::from_integer(2).root_of_unity_order(), None);
    }

    #[test]
    fn expressions() {
        assert_eq!(Cyclotomic::zero().to_expression(), "0");
        assert_eq!((Cyclotomic::zeta(8) - Cyclotomic::from_integer(2)).to_expression(), "-2 + z8");
    }
}
