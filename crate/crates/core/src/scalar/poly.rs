//! Dense univariate polynomials, lowest degree first.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::qmodz::Rational;
use crate::arith::divisors;

/// Strip trailing zero coefficients (the zero polynomial becomes empty).
pub fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact quotient of integer polynomials where `den` is monic.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(den.last().is_some_and(|c| c.is_one()));
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let c = core::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate().take(dn) {
            rem[i - dn + j] -= &c * d;
        }
        quot[i - dn] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    quot
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by
/// `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let divs = divisors(n);
    let mut table: Vec<(u64, Vec<BigInt>)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = -BigInt::one();
        p[d as usize] = BigInt::one();
        for (e, phi_e) in &table {
            if d % e == 0 {
                p = div_exact_monic(&p, phi_e);
            }
        }
        table.push((d, p));
    }
    table.pop().expect("n is its own divisor").1
}

/// Reduce `p` modulo the monic integer polynomial `modulus` in place; the
/// result has length exactly `deg(modulus)`.
pub fn reduce_mod_monic(p: &mut Vec<Rational>, modulus: &[BigInt]) {
    let dn = modulus.len() - 1;
    if p.len() > dn {
        for i in (dn..p.len()).rev() {
            let c = core::mem::take(&mut p[i]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in modulus.iter().enumerate().take(dn) {
                if !m.is_zero() {
                    p[i - dn + j] -= &c * Rational::from_integer(m.clone());
                }
            }
        }
    }
    p.resize(dn, Rational::zero());
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), Rational::zero());
    }
    for (o, y) in out.iter_mut().zip(b) {
        *o -= y;
    }
    trim(&mut out);
    out
}

/// Euclidean division over Q; `b` must be nonzero (trimmed).
fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = core::mem::take(&mut rem[i]) / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(db) {
            rem[i - db + j] -= &c * y;
        }
        quot[i - db] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Inverse of `a` modulo an irreducible `modulus`, via the extended
/// Euclidean algorithm. Returns `None` when `a` is zero modulo `modulus`.
pub fn inverse_mod(a: &[Rational], modulus: &[BigInt]) -> Option<Vec<Rational>> {
    let mut r0: Vec<Rational> = modulus.iter().cloned().map(Rational::from_integer).collect();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant because the modulus is irreducible.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: Vec<Rational> = s0.into_iter().map(|x| x / &c).collect();
    reduce_mod_monic(&mut inv, modulus);
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), [-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(2)), [1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), [1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), [1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(8)), [1, 0, 0, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), [1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let p = ints(&cyclotomic_polynomial(105));
        assert_eq!(p.len(), 49);
        assert_eq!(p[7], -2);
        assert_eq!(p[41], -2);
    }
}
