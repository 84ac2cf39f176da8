use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::group::{FiniteAbelianGroup, GroupElement};
use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};
use crate::scalar::{int, Cyclotomic, QmodZ, Rational};

/// Exhaustive bilinearity checks are skipped above this size.
pub const BILINEARITY_CHECK_LIMIT: usize = 10_000;

/// A Q/Z valued function on a finite abelian group whose associated form
/// `b(x,y) = q(x+y) - q(x) - q(y) + q(0)` is bilinear. Values are stored as a
/// dense table of numerators over a common denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticForm {
    group: FiniteAbelianGroup,
    modulus: u64,
    table: Vec<u64>,
}

fn den_u64(r: &Rational) -> Result<u64> {
    r.denom().to_u64().ok_or_else(|| Error::InvalidInput("denominator too large".into()))
}

impl QuadraticForm {
    /// `q(x) = sum_ij M_ij x_i x_j mod 1` on residue tuples.
    pub fn from_gram(group: FiniteAbelianGroup, gram: &[Vec<Rational>]) -> Result<Self> {
        let k = group.rank();
        if gram.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: gram.len() });
        }
        for row in gram {
            if row.len() != k {
                return Err(Error::DimensionMismatch { expected: k, found: row.len() });
            }
        }
        for i in 0..k {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
                }
            }
        }
        // q(x + n_i e_i) - q(x) = n_i^2 M_ii + 2 n_i sum_j M_ij x_j is affine in
        // x, so testing x = 0 and x = e_j decides well-definedness.
        for i in 0..k {
            let n = int(group.orders()[i] as i64);
            let integral = |r: Rational| r.denom().is_one();
            if !integral(&n * &n * &gram[i][i]) || (0..k).any(|j| !integral(int(2) * &n * &gram[i][j])) {
                return Err(Error::NotWellDefined { generator: i });
            }
        }
        let mut modulus = 1u64;
        for row in gram {
            for m in row {
                modulus = lcm(modulus, den_u64(m)?);
            }
        }
        let md = BigInt::from(modulus);
        let a: Vec<Vec<i128>> = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|m| {
                        let v = (m * Rational::from_integer(md.clone())).to_integer().mod_floor(&md);
                        v.to_i128().expect("fits")
                    })
                    .collect()
            })
            .collect();
        let m = modulus as i128;
        let table = (0..group.size())
            .map(|idx| {
                let x = group.element(idx);
                let mut acc: i128 = 0;
                for i in 0..k {
                    for j in 0..k {
                        let t = (a[i][j] * x.0[i] as i128).rem_euclid(m) * x.0[j] as i128;
                        acc = (acc + t).rem_euclid(m);
                    }
                }
                acc as u64
            })
            .collect();
        Self::from_raw(group, modulus, table)
    }

    /// From values listed in the group's enumeration order.
    pub fn from_values(group: FiniteAbelianGroup, values: &[QmodZ]) -> Result<Self> {
        if values.len() != group.size() {
            return Err(Error::DimensionMismatch { expected: group.size(), found: values.len() });
        }
        let mut modulus = 1u64;
        for v in values {
            modulus = lcm(modulus, v.denom_u64());
        }
        let table = values.iter().map(|v| v.numer_u64() * (modulus / v.denom_u64())).collect();
        Self::from_raw(group, modulus, table)
    }

    pub fn from_fn<F: FnMut(&GroupElement) -> QmodZ>(group: FiniteAbelianGroup, mut f: F) -> Result<Self> {
        let values: Vec<QmodZ> = group.elements().map(|x| f(&x)).collect();
        Self::from_values(group, &values)
    }

    /// `table[i] / modulus` is the value on the `i`-th element.
    pub fn from_raw(group: FiniteAbelianGroup, modulus: u64, table: Vec<u64>) -> Result<Self> {
        let q = Self::from_raw_unchecked(group, modulus, table);
        q.check_bilinear()?;
        Ok(q)
    }

    pub(crate) fn from_raw_unchecked(group: FiniteAbelianGroup, modulus: u64, mut table: Vec<u64>) -> Self {
        for v in table.iter_mut() {
            *v %= modulus;
        }
        let g = table.iter().fold(modulus, |acc, &v| gcd(acc, v));
        let modulus = modulus / g;
        for v in table.iter_mut() {
            *v /= g;
        }
        QuadraticForm { group, modulus, table }
    }

    fn check_bilinear(&self) -> Result<()> {
        let n = self.group.size();
        if n > BILINEARITY_CHECK_LIMIT {
            return Ok(());
        }
        let shifts = self.group.generator_shifts();
        let mut row = vec![0u64; n];
        for z in 0..n {
            for (x, r) in row.iter_mut().enumerate() {
                *r = self.bilinear_raw(x, z);
            }
            for (i, shift) in shifts.iter().enumerate() {
                let bi = row[shift[0]];
                if (0..n).any(|x| row[shift[x]] != (row[x] + bi) % self.modulus) {
                    return Err(Error::NotBilinear { generator: i });
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Common denominator of all values (minimal).
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn raw(&self, idx: usize) -> u64 {
        self.table[idx]
    }

    pub fn raw_table(&self) -> &[u64] {
        &self.table
    }

    pub fn value_at(&self, idx: usize) -> QmodZ {
        QmodZ::from_ratio(self.table[idx] as i64, self.modulus as i64)
    }

    pub fn value(&self, x: &GroupElement) -> QmodZ {
        self.value_at(self.group.index(x))
    }

    pub fn values(&self) -> Vec<QmodZ> {
        (0..self.table.len()).map(|i| self.value_at(i)).collect()
    }

    /// Numerator of `b(x, y)` over `modulus`, from element indices.
    pub fn bilinear_raw(&self, x: usize, y: usize) -> u64 {
        let m = self.modulus;
        let s = self.table[self.group.add_index(x, y)] + self.table[0] + 2 * m - self.table[x] - self.table[y];
        s % m
    }

    pub fn bilinear(&self, x: &GroupElement, y: &GroupElement) -> QmodZ {
        let r = self.bilinear_raw(self.group.index(x), self.group.index(y));
        QmodZ::from_ratio(r as i64, self.modulus as i64)
    }

    /// `q(n x) = n^2 q(x)` for all `x` and `n` up to the exponent (at least 2,
    /// so that `q(2x) = 4 q(x)` is always tested).
    pub fn is_homogeneous(&self) -> bool {
        let m = self.modulus as u128;
        let top = self.group.exponent().max(2);
        self.group.elements().enumerate().all(|(idx, x)| {
            (0..=top).all(|n| {
                let nx = self.group.index(&self.group.scale(n as i64, &x));
                self.table[nx] as u128 == (n as u128 * n as u128 % m) * self.table[idx] as u128 % m
            })
        })
    }

    /// Elements `x` with `b(x, y) = 0` for all `y`.
    pub fn radical(&self) -> Vec<GroupElement> {
        let gens: Vec<usize> = (0..self.group.rank()).map(|i| self.group.index(&self.group.generator(i))).collect();
        (0..self.group.size())
            .filter(|&x| gens.iter().all(|&e| self.bilinear_raw(x, e) == 0))
            .map(|x| self.group.element(x))
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().len() == 1
    }

    /// `sum_g e^{2 pi i sign q(g)}` without normalization.
    pub fn gauss_numerator(&self, sign: i8) -> Cyclotomic {
        let m = self.modulus;
        let mut counts = vec![0i64; m as usize];
        for &v in &self.table {
            let k = if sign >= 0 { v } else { (m - v) % m };
            counts[k as usize] += 1;
        }
        Cyclotomic::from_exponent_sum(
            m,
            counts.into_iter().enumerate().filter(|&(_, c)| c != 0).map(|(k, c)| (k as u64, int(c))),
        )
    }

    /// `|G|^{-1/2} sum_g e^{2 pi i sign q(g)}`.
    pub fn gauss_sum(&self, sign: i8) -> Cyclotomic {
        let n = self.group.size() as u64;
        let root = Cyclotomic::sqrt_nat(n);
        (&self.gauss_numerator(sign) * &root).scale(&Rational::new(BigInt::one(), BigInt::from(n)))
    }

    /// The `sigma` mod 8 with `gauss_sum(+1) = e^{2 pi i sigma / 8}`.
    pub fn signature(&self) -> Result<u8> {
        let tau = self.gauss_sum(1);
        (0..8u8)
            .find(|&k| tau == Cyclotomic::zeta_pow(8, k as i64))
            .ok_or_else(|| Error::GaussMilgram(tau.to_expression()))
    }

    /// A witness `delta` with `self(g) = other(g - delta)` for all `g`.
    pub fn qclass_equivalent(&self, other: &QuadraticForm) -> Option<GroupElement> {
        if self.group != other.group {
            return None;
        }
        let (m1, m2) = (self.modulus as u128, other.modulus as u128);
        let n = self.group.size();
        (0..n)
            .find(|&d| {
                let nd = self.group.neg_index(d);
                (0..n).all(|g| self.table[g] as u128 * m2 == other.table[self.group.add_index(g, nd)] as u128 * m1)
            })
            .map(|d| self.group.element(d))
    }

    /// `g -> self(g - delta)`.
    pub fn shifted(&self, delta: &GroupElement) -> QuadraticForm {
        let nd = self.group.index(&self.group.neg(delta));
        let table = (0..self.group.size()).map(|g| self.table[self.group.add_index(g, nd)]).collect();
        Self::from_raw_unchecked(self.group.clone(), self.modulus, table)
    }

    /// `g -> self(g) + c`.
    pub fn plus_constant(&self, c: &QmodZ) -> QuadraticForm {
        let m = lcm(self.modulus, c.denom_u64());
        let add = c.numer_u64() * (m / c.denom_u64());
        let table = self.table.iter().map(|&v| (v * (m / self.modulus) + add) % m).collect();
        Self::from_raw_unchecked(self.group.clone(), m, table)
    }

    /// The values as a `{"(residues)": "p/q"}` style list.
    pub fn entries(&self) -> Vec<(GroupElement, QmodZ)> {
        self.group.elements().enumerate().map(|(i, x)| (x, self.value_at(i))).collect()
    }

    pub fn zero_form(group: FiniteAbelianGroup) -> Self {
        let n = group.size();
        Self::from_raw_unchecked(group, 1, vec![0; n])
    }
}

/// Every homogeneous form on `group`. A homogeneous form is determined by
/// `q(e_i) in (1/2n_i) Z` and `b(e_i, e_j) in (1/gcd(n_i, n_j)) Z`, so
/// running over those values is exhaustive. Duplicate tables are removed.
pub fn homogeneous_forms(group: &FiniteAbelianGroup) -> Vec<QuadraticForm> {
    let k = group.rank();
    let n = group.orders();
    let mut ranges: Vec<(usize, usize, u64)> = Vec::new();
    for i in 0..k {
        ranges.push((i, i, 2 * n[i]));
        for j in i + 1..k {
            ranges.push((i, j, gcd(n[i], n[j])));
        }
    }
    let mut out: Vec<QuadraticForm> = Vec::new();
    let mut digits = vec![0u64; ranges.len()];
    loop {
        let mut gram = vec![vec![Rational::from_integer(BigInt::from(0)); k]; k];
        for (&(i, j, d), &c) in ranges.iter().zip(&digits) {
            if i == j {
                gram[i][i] = Rational::new(BigInt::from(c), BigInt::from(d));
            } else {
                // x^T M x counts the off-diagonal entry twice
                let v = Rational::new(BigInt::from(c), BigInt::from(2 * d));
                gram[i][j] = v.clone();
                gram[j][i] = v;
            }
        }
        // for odd n_i only even numerators on the diagonal are well defined
        if let Ok(q) = QuadraticForm::from_gram(group.clone(), &gram) {
            if !out.contains(&q) {
                out.push(q);
            }
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return out;
            }
            digits[pos] += 1;
            if digits[pos] < ranges[pos].2 {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
