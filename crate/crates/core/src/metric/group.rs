use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::intmat::{self, LatticeQuotient};

/// A tuple of residues, one per cyclic factor of its group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<u64>> for GroupElement {
    fn from(v: Vec<u64>) -> Self {
        GroupElement(v)
    }
}

/// Parse `"(1,0)"`, `"1,0"` or `"3"`.
pub fn parse_element(s: &str) -> Result<GroupElement> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    if t.trim().is_empty() {
        return Ok(GroupElement(Vec::new()));
    }
    t.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| Error::InvalidInput(alloc::format!("bad residue tuple `{s}`"))))
        .collect::<Result<Vec<_>>>()
        .map(GroupElement)
}

/// `Z_{n_1} x ... x Z_{n_k}`. Elements are enumerated lexicographically in
/// their residue tuples; `index` is the position in that enumeration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
    canonical: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
}

/// Groups beyond this many elements are refused; every table in the crate is
/// dense in the group.
pub const MAX_GROUP_SIZE: u64 = 1 << 24;

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidInput("cyclic orders must be at least 1".into()));
        }
        let size = orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n)).filter(|&s| s <= MAX_GROUP_SIZE);
        let size = size.ok_or(Error::EnumerationTooLarge {
            size: orders.iter().map(|&n| n as u128).product(),
            cap: MAX_GROUP_SIZE as u128,
        })? as usize;
        let k = orders.len();
        let mut strides = alloc::vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        let relations =
            (0..k).map(|i| (0..k).map(|j| BigInt::from(if i == j { orders[i] } else { 0 })).collect()).collect();
        let canonical =
            LatticeQuotient::new(k, intmat::identity(k), &relations).expect("finite by construction").orders();
        Ok(FiniteAbelianGroup { orders, canonical, strides, size })
    }

    pub fn trivial() -> Self {
        Self::new(Vec::new()).unwrap()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(alloc::vec![n]).unwrap()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Invariant factors `d_1 | d_2 | ...`, each at least 2.
    pub fn canonical_orders(&self) -> &[u64] {
        &self.canonical
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &n| lcm(a, n))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(alloc::vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut r = alloc::vec![0; self.rank()];
        r[i] = 1 % self.orders[i];
        GroupElement(r)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.rank() && x.0.iter().zip(&self.orders).all(|(r, n)| r < n)
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInGroup(alloc::format!("{x} in {}", self.describe())))
        }
    }

    /// Reduce arbitrary integers into residues.
    pub fn reduce(&self, v: &[i64]) -> GroupElement {
        GroupElement(v.iter().zip(&self.orders).map(|(&x, &n)| x.rem_euclid(n as i64) as u64).collect())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(x.0.iter().zip(&y.0).zip(&self.orders).map(|((a, b), n)| (a + b) % n).collect())
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement(x.0.iter().zip(&self.orders).map(|(a, n)| (n - a) % n).collect())
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    pub fn scale(&self, k: i64, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| ((a as i128 * k as i128).rem_euclid(n as i128)) as u64)
                .collect(),
        )
    }

    pub fn element_order(&self, x: &GroupElement) -> u64 {
        x.0.iter().zip(&self.orders).fold(1, |acc, (&a, &n)| lcm(acc, n / crate::arith::gcd(a, n)))
    }

    pub fn index(&self, x: &GroupElement) -> usize {
        x.0.iter().zip(&self.strides).map(|(&r, &s)| r as usize * s).sum()
    }

    pub fn element(&self, mut idx: usize) -> GroupElement {
        let mut r = alloc::vec![0; self.rank()];
        for (i, &s) in self.strides.iter().enumerate() {
            r[i] = (idx / s) as u64;
            idx %= s;
        }
        GroupElement(r)
    }

    /// Index of `x + y` from indices.
    pub fn add_index(&self, x: usize, y: usize) -> usize {
        let mut out = 0;
        for (i, &s) in self.strides.iter().enumerate() {
            let n = self.orders[i] as usize;
            let a = (x / s) % n;
            let b = (y / s) % n;
            out += ((a + b) % n) * s;
        }
        out
    }

    pub fn neg_index(&self, x: usize) -> usize {
        let mut out = 0;
        for (i, &s) in self.strides.iter().enumerate() {
            let n = self.orders[i] as usize;
            out += ((n - (x / s) % n) % n) * s;
        }
        out
    }

    /// For each generator, the permutation `idx(x) -> idx(x + e_i)`.
    pub fn generator_shifts(&self) -> Vec<Vec<usize>> {
        (0..self.rank())
            .map(|i| {
                let (s, n) = (self.strides[i], self.orders[i] as usize);
                (0..self.size).map(|x| if (x / s) % n == n - 1 { x - (n - 1) * s } else { x + s }).collect()
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(move |i| self.element(i))
    }

    pub fn describe(&self) -> String {
        if self.orders.is_empty() {
            return "trivial group".into();
        }
        let parts: Vec<String> = self.orders.iter().map(|n| alloc::format!("Z_{n}")).collect();
        parts.join(" x ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_orders_by_snf() {
        assert_eq!(FiniteAbelianGroup::new(alloc::vec![2, 3]).unwrap().canonical_orders(), [6]);
        assert_eq!(FiniteAbelianGroup::new(alloc::vec![4, 2, 1]).unwrap().canonical_orders(), [2, 4]);
        assert!(FiniteAbelianGroup::trivial().canonical_orders().is_empty());
        assert_eq!(FiniteAbelianGroup::new(alloc::vec![6, 4]).unwrap().canonical_orders(), [2, 12]);
    }

    #[test]
    fn indexing_is_lexicographic() {
        let g = FiniteAbelianGroup::new(alloc::vec![2, 3]).unwrap();
        let all: Vec<_> = g.elements().collect();
        assert_eq!(all[1], GroupElement(alloc::vec![0, 1]));
        assert_eq!(all[3], GroupElement(alloc::vec![1, 0]));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for x in 0..6 {
            assert_eq!(g.index(&g.element(x)), x);
            for y in 0..6 {
                assert_eq!(g.add_index(x, y), g.index(&g.add(&all[x], &all[y])));
            }
            assert_eq!(g.neg_index(x), g.index(&g.neg(&all[x])));
        }
        let shifts = g.generator_shifts();
        for i in 0..2 {
            for x in 0..6 {
                assert_eq!(shifts[i][x], g.index(&g.add(&all[x], &g.generator(i))));
            }
        }
    }

    #[test]
    fn parse_tuples() {
        assert_eq!(parse_element("(1, 0)").unwrap(), GroupElement(alloc::vec![1, 0]));
        assert_eq!(parse_element("3").unwrap(), GroupElement(alloc::vec![3]));
        assert_eq!(parse_element("()").unwrap(), GroupElement(alloc::vec![]));
        assert!(parse_element("(a)").is_err());
    }
}
