//! Surgery presentations by linking matrices, spin structures as
//! characteristic sublinks, and the abelian spin and oriented invariants.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, rational, Cyclotomic, Rational};
use crate::spin::PointedSpinModular;

/// Bound on the number of colorings summed by one evaluation.
pub const COLORING_BOUND: u64 = 10_000_000;

/// Bound on the number of link components for spin-structure enumeration.
pub const MAX_SUBLINK_COMPONENTS: usize = 24;

/// Symmetric integer matrix: framings on the diagonal, linking numbers off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidInput(format!("linking matrix is not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(LinkingMatrix { entries })
    }

    pub fn zero(n: usize) -> Self {
        LinkingMatrix { entries: vec![vec![0; n]; n] }
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let n = d.len();
        LinkingMatrix { entries: (0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect()).collect() }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// Simultaneous permutation of rows and columns: component `i` of the
    /// result is component `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        LinkingMatrix { entries: perm.iter().map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect()).collect() }
    }

    /// Block sum with an unlinked component of the given framing.
    pub fn with_unlinked(&self, framing: i64) -> Self {
        let mut e: Vec<Vec<i64>> = self.entries.iter().map(|r| r.iter().copied().chain([0]).collect()).collect();
        let mut last = vec![0; self.size() + 1];
        last[self.size()] = framing;
        e.push(last);
        LinkingMatrix { entries: e }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub b_plus: usize,
    pub b_minus: usize,
    pub b_one: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }
}

/// Sylvester inertia by congruence diagonalization over Q.
pub fn inertia(l: &LinkingMatrix) -> Inertia {
    let mut a: Vec<Vec<Rational>> = l.entries.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut out = Inertia { b_plus: 0, b_minus: 0, b_one: 0 };
    while !a.is_empty() {
        let n = a.len();
        let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) else {
            let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
            else {
                out.b_one += n;
                break;
            };
            // zero diagonal, a_ij != 0: e_i -> e_i + e_j gives diagonal 2 a_ij
            for k in 0..n {
                let v = a[j][k].clone();
                a[i][k] += v;
            }
            for k in 0..n {
                let v = a[k][j].clone();
                a[k][i] += v;
            }
            continue;
        };
        let piv = a[p][p].clone();
        if piv.is_positive() {
            out.b_plus += 1;
        } else {
            out.b_minus += 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&k| k != p).collect();
        a = rest.iter().map(|&r| rest.iter().map(|&c| &a[r][c] - &a[r][p] * &a[p][c] / &piv).collect()).collect();
    }
    out
}

/// Gaussian elimination over F_2. Returns a particular solution and a kernel
/// basis of `m x = rhs`, or `None` if inconsistent.
fn solve_mod2(m: &[Vec<u8>], rhs: &[u8], cols: usize) -> Option<(Vec<u8>, Vec<Vec<u8>>)> {
    let rows = m.len();
    let mut a: Vec<Vec<u8>> = m.iter().zip(rhs).map(|(r, &b)| r.iter().copied().chain([b]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] == 1) else { continue };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] == 1 {
                let src = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| row[cols] == 1) {
        return None;
    }
    let mut particular = vec![0u8; cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = a[i][cols];
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u8; cols];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = a[i][f];
            }
            v
        })
        .collect();
    Some((particular, kernel))
}

fn mod2(l: &LinkingMatrix) -> Vec<Vec<u8>> {
    l.entries.iter().map(|r| r.iter().map(|&x| x.rem_euclid(2) as u8).collect()).collect()
}

pub fn is_characteristic(l: &LinkingMatrix, s: &[u8]) -> bool {
    s.len() == l.size()
        && (0..l.size()).all(|i| {
            let lhs: i64 = (0..l.size()).map(|j| l.get(i, j) * s[j] as i64).sum();
            (lhs - l.get(i, i)).rem_euclid(2) == 0
        })
}

/// Dimension of the kernel of `L mod 2`.
pub fn mod2_nullity(l: &LinkingMatrix) -> usize {
    let n = l.size();
    solve_mod2(&mod2(l), &vec![0; n], n).map_or(0, |(_, k)| k.len())
}

/// All `s in {0,1}^n` with `L s = diag(L) mod 2`, in lexicographic order.
pub fn characteristic_sublinks(l: &LinkingMatrix) -> Result<Vec<Vec<u8>>> {
    let n = l.size();
    if n > MAX_SUBLINK_COMPONENTS {
        return Err(Error::EnumerationTooLarge { size: 1u128 << n, cap: 1u128 << MAX_SUBLINK_COMPONENTS });
    }
    let m = mod2(l);
    let diag: Vec<u8> = (0..n).map(|i| m[i][i]).collect();
    // s^T L s = s^T diag(L) mod 2 for every s, so diag(L) lies in the image
    let (part, kernel) = solve_mod2(&m, &diag, n).expect("diagonal is always in the image mod 2");
    let mut out: Vec<Vec<u8>> = (0..1u64 << kernel.len())
        .map(|mask| {
            let mut v = part.clone();
            for (b, k) in kernel.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(k) {
                        *x ^= y;
                    }
                }
            }
            v
        })
        .collect();
    out.sort();
    debug_assert!(out.iter().all(|s| is_characteristic(l, s)));
    Ok(out)
}

/// `p(l_i) = sum_j Link(l_i, L_j) s_j + 1 mod 2` for each loop `l_i`.
pub fn framing_parities_from_sublink(loop_linking: &[Vec<i64>], s: &[u8]) -> Result<Vec<u8>> {
    loop_linking
        .iter()
        .map(|row| {
            if row.len() != s.len() {
                return Err(Error::DimensionMismatch { expected: s.len(), found: row.len() });
            }
            let t: i64 = row.iter().zip(s).map(|(&a, &b)| a * b as i64).sum();
            Ok((t + 1).rem_euclid(2) as u8)
        })
        .collect()
}

/// Inverts `framing_parities_from_sublink` when the loop linking matrix is
/// invertible mod 2.
pub fn sublink_from_framing_parities(loop_linking: &[Vec<i64>], parities: &[u8]) -> Option<Vec<u8>> {
    let cols = loop_linking.first().map_or(0, Vec::len);
    let m: Vec<Vec<u8>> = loop_linking.iter().map(|r| r.iter().map(|&x| x.rem_euclid(2) as u8).collect()).collect();
    let rhs: Vec<u8> = parities.iter().map(|&p| p ^ 1).collect();
    match solve_mod2(&m, &rhs, cols) {
        Some((s, kernel)) if kernel.is_empty() => Some(s),
        _ => None,
    }
}

/// Sums of `e^{2 pi i (sum_i L_ii q(g_i) + sum_{i<j} L_ij b(g_i, g_j))}` over
/// colorings `g_i in sets[i]`. Colorings are numbered in odometer order (last
/// component fastest) so that disjoint index ranges can be summed separately
/// and merged.
pub struct ColoringSum<'a> {
    psm: &'a PointedSpinModular,
    link: &'a LinkingMatrix,
    sets: Vec<Vec<usize>>,
    btab: Option<Vec<u64>>,
    count: u64,
}

impl<'a> ColoringSum<'a> {
    pub fn new(psm: &'a PointedSpinModular, link: &'a LinkingMatrix, sets: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != link.size() {
            return Err(Error::DimensionMismatch { expected: link.size(), found: sets.len() });
        }
        let count = sets
            .iter()
            .try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64))
            .filter(|&c| c <= COLORING_BOUND)
            .ok_or_else(|| Error::EnumerationTooLarge {
                size: sets.iter().map(|s| s.len() as u128).fold(1u128, |a, b| a.saturating_mul(b)),
                cap: COLORING_BOUND as u128,
            })?;
        let n = psm.group().size();
        let btab = (n * n <= 1 << 22).then(|| {
            let q = psm.form();
            (0..n * n).map(|k| q.bilinear_raw(k / n, k % n)).collect()
        });
        Ok(ColoringSum { psm, link, sets, btab, count })
    }

    /// Colorings with `g_i` in the graded part `omega_{s_i}`.
    pub fn graded(psm: &'a PointedSpinModular, link: &'a LinkingMatrix, s: &[u8]) -> Result<Self> {
        if s.len() != link.size() {
            return Err(Error::DimensionMismatch { expected: link.size(), found: s.len() });
        }
        let even = psm.kirby_indices(0);
        let odd = psm.kirby_indices(1);
        Self::new(psm, link, s.iter().map(|&si| if si == 0 { even.clone() } else { odd.clone() }).collect())
    }

    /// All colorings.
    pub fn all(psm: &'a PointedSpinModular, link: &'a LinkingMatrix) -> Result<Self> {
        let all: Vec<usize> = (0..psm.group().size()).collect();
        Self::new(psm, link, vec![all; link.size()])
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn modulus(&self) -> u64 {
        self.psm.form().modulus()
    }

    fn b(&self, x: usize, y: usize) -> u64 {
        match &self.btab {
            Some(t) => t[x * self.psm.group().size() + y],
            None => self.psm.form().bilinear_raw(x, y),
        }
    }

    /// Phase exponent (over `modulus`) of one coloring given by group indices.
    pub fn exponent(&self, colors: &[usize]) -> u64 {
        let m = self.modulus() as i128;
        let q = self.psm.form();
        let n = colors.len();
        let mut acc: i128 = 0;
        for i in 0..n {
            acc += self.link.get(i, i) as i128 * q.raw(colors[i]) as i128;
            for j in i + 1..n {
                acc += self.link.get(i, j) as i128 * self.b(colors[i], colors[j]) as i128;
            }
            acc = acc.rem_euclid(m);
        }
        acc as u64
    }

    /// Histogram of phase exponents over the colorings numbered in `range`.
    pub fn histogram(&self, range: Range<u64>) -> Vec<u64> {
        let mut hist = vec![0u64; self.modulus() as usize];
        let end = range.end.min(self.count);
        if range.start >= end {
            return hist;
        }
        let n = self.sets.len();
        let mut digits = vec![0usize; n];
        let mut rem = range.start;
        for i in (0..n).rev() {
            let base = self.sets[i].len() as u64;
            digits[i] = (rem % base) as usize;
            rem /= base;
        }
        let mut colors: Vec<usize> = (0..n).map(|i| self.sets[i][digits[i]]).collect();
        for _ in range.start..end {
            hist[self.exponent(&colors) as usize] += 1;
            for i in (0..n).rev() {
                digits[i] += 1;
                if digits[i] < self.sets[i].len() {
                    colors[i] = self.sets[i][digits[i]];
                    break;
                }
                digits[i] = 0;
                colors[i] = self.sets[i][0];
            }
        }
        hist
    }

    pub fn from_histogram(&self, hist: &[u64]) -> Cyclotomic {
        Cyclotomic::from_exponent_sum(
            self.modulus(),
            hist.iter().enumerate().filter(|&(_, &c)| c != 0).map(|(k, &c)| (k as u64, int(c as i64))),
        )
    }

    pub fn evaluate(&self) -> Cyclotomic {
        self.from_histogram(&self.histogram(0..self.count))
    }
}

/// Merge per-range histograms.
pub fn merge_histograms(parts: impl IntoIterator<Item = Vec<u64>>) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for p in parts {
        if out.len() < p.len() {
            out.resize(p.len(), 0);
        }
        for (o, x) in out.iter_mut().zip(p) {
            *o += x;
        }
    }
    out
}

/// The evaluation of `L` with component `i` colored by the element with
/// index `coloring[i]`.
pub fn abelian_link_eval(psm: &PointedSpinModular, l: &LinkingMatrix, coloring: &[usize]) -> Result<Cyclotomic> {
    let sum = ColoringSum::new(psm, l, coloring.iter().map(|&c| vec![c]).collect())?;
    Ok(Cyclotomic::zeta_pow(sum.modulus(), sum.exponent(coloring) as i64))
}

/// `F(L(omega_{s_1}, ..., omega_{s_n}))`; the empty link evaluates to 1.
pub fn graded_eval(psm: &PointedSpinModular, l: &LinkingMatrix, s: &[u8]) -> Result<Cyclotomic> {
    Ok(ColoringSum::graded(psm, l, s)?.evaluate())
}

/// `U_+` and `U_-`, the unnormalized Gauss sums.
pub fn gauss_pair(psm: &PointedSpinModular) -> (Cyclotomic, Cyclotomic) {
    (psm.form().gauss_numerator(1), psm.form().gauss_numerator(-1))
}

/// `sqrt(n)^e` for any integer `e`.
fn sqrt_pow(n: u64, e: i64) -> Cyclotomic {
    let half = e.div_euclid(2);
    let base = Cyclotomic::from_rational(rational(n as i64, 1).pow(half as i32));
    if e.rem_euclid(2) == 1 {
        &base * &Cyclotomic::sqrt_nat(n)
    } else {
        base
    }
}

/// `graded / (U_+^{b_+} U_-^{b_-})`.
pub fn tau_from_graded(psm: &PointedSpinModular, l: &LinkingMatrix, graded: &Cyclotomic) -> Result<Cyclotomic> {
    let inn = inertia(l);
    let (up, um) = gauss_pair(psm);
    let den = up.try_pow(inn.b_plus as i64)?.try_mul(&um.try_pow(inn.b_minus as i64)?)?;
    graded.try_div(&den)
}

pub fn tau_spin(psm: &PointedSpinModular, l: &LinkingMatrix, s: &[u8]) -> Result<Cyclotomic> {
    tau_from_graded(psm, l, &graded_eval(psm, l, s)?)
}

/// `2 D^{-1-b_1} tau` with `D = sqrt(|G|)`.
pub fn z_spin_from_tau(psm: &PointedSpinModular, l: &LinkingMatrix, tau: &Cyclotomic) -> Result<Cyclotomic> {
    let b1 = inertia(l).b_one as i64;
    let d = sqrt_pow(psm.group().size() as u64, -1 - b1);
    Ok(d.try_mul(tau)?.scale(&int(2)))
}

pub fn z_spin(psm: &PointedSpinModular, l: &LinkingMatrix, s: &[u8]) -> Result<Cyclotomic> {
    z_spin_from_tau(psm, l, &tau_spin(psm, l, s)?)
}

/// `D^{-1-n} delta^{-sigma(L)} F(L(omega, ..., omega))`, `delta = U_+ / D`.
pub fn rt_oriented_from_sum(psm: &PointedSpinModular, l: &LinkingMatrix, total: &Cyclotomic) -> Result<Cyclotomic> {
    let n = l.size() as i64;
    let delta = psm.form().gauss_sum(1);
    let d = sqrt_pow(psm.group().size() as u64, -1 - n);
    d.try_mul(&delta.try_pow(-inertia(l).signature())?)?.try_mul(total)
}

pub fn rt_oriented(psm: &PointedSpinModular, l: &LinkingMatrix) -> Result<Cyclotomic> {
    rt_oriented_from_sum(psm, l, &ColoringSum::all(psm, l)?.evaluate())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementReport {
    /// `(1/2) sum_s z_spin(L, s)`.
    pub spin_side: Cyclotomic,
    pub oriented: Cyclotomic,
    /// `spin_side / oriented`, when the oriented value is nonzero.
    pub kappa: Option<Cyclotomic>,
    pub structures: usize,
}

impl RefinementReport {
    /// The identity `spin_side = kappa * oriented` holds for the given constant.
    pub fn holds_with(&self, kappa: &Cyclotomic) -> bool {
        self.spin_side == kappa * &self.oriented
    }
}

pub fn refinement_check(psm: &PointedSpinModular, l: &LinkingMatrix) -> Result<RefinementReport> {
    let subs = characteristic_sublinks(l)?;
    let mut total = Cyclotomic::zero();
    for s in &subs {
        total = total.try_add(&z_spin(psm, l, s)?)?;
    }
    let spin_side = total.scale(&rational(1, 2));
    let oriented = rt_oriented(psm, l)?;
    let kappa = if oriented.is_zero() { None } else { Some(spin_side.try_div(&oriented)?) };
    Ok(RefinementReport { spin_side, oriented, kappa, structures: subs.len() })
}

/// Blow-up: add an unlinked component with framing `sign` (+1 or -1); its
/// characteristic value is forced to 1.
pub fn stabilize(l: &LinkingMatrix, s: &[u8], sign: i64) -> (LinkingMatrix, Vec<u8>) {
    let mut s2 = s.to_vec();
    s2.push(1);
    (l.with_unlinked(sign), s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{FiniteAbelianGroup, GroupElement, QuadraticForm};
    use crate::scalar::rational;

    fn lm(rows: &[&[i64]]) -> LinkingMatrix {
        LinkingMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn psm(orders: Vec<u64>, gram: &[&[(i64, i64)]], f: &[u64]) -> PointedSpinModular {
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let m: Vec<Vec<Rational>> = gram.iter().map(|r| r.iter().map(|&(a, b)| rational(a, b)).collect()).collect();
        PointedSpinModular::new(QuadraticForm::from_gram(g, &m).unwrap(), GroupElement(f.to_vec())).unwrap()
    }

    fn z4() -> PointedSpinModular {
        psm(vec![4], &[&[(1, 8)]], &[2])
    }

    fn z12() -> PointedSpinModular {
        psm(vec![12], &[&[(1, 24)]], &[6])
    }

    fn z2z2() -> PointedSpinModular {
        psm(vec![2, 2], &[&[(1, 4), (0, 1)], &[(0, 1), (1, 4)]], &[1, 1])
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inertia(&LinkingMatrix::diagonal(&[2, 2, 2])), Inertia { b_plus: 3, b_minus: 0, b_one: 0 });
        assert_eq!(inertia(&lm(&[&[0]])), Inertia { b_plus: 0, b_minus: 0, b_one: 1 });
        assert_eq!(inertia(&lm(&[&[0, 1], &[1, 0]])), Inertia { b_plus: 1, b_minus: 1, b_one: 0 });
        assert_eq!(inertia(&lm(&[&[1, 1], &[1, 1]])), Inertia { b_plus: 1, b_minus: 0, b_one: 1 });
        assert_eq!(inertia(&lm(&[&[0, 0, 1], &[0, -2, 0], &[1, 0, 0]])), Inertia { b_plus: 1, b_minus: 2, b_one: 0 });
        assert_eq!(inertia(&LinkingMatrix::zero(0)), Inertia { b_plus: 0, b_minus: 0, b_one: 0 });
    }

    #[test]
    fn sublinks() {
        for p in -5i64..=9 {
            let subs = characteristic_sublinks(&lm(&[&[p]])).unwrap();
            if p % 2 != 0 {
                assert_eq!(subs, [vec![1]]);
            } else {
                assert_eq!(subs, [vec![0], vec![1]]);
            }
        }
        assert_eq!(characteristic_sublinks(&LinkingMatrix::zero(3)).unwrap().len(), 8);
        assert_eq!(characteristic_sublinks(&lm(&[&[0, 1], &[1, 0]])).unwrap(), [vec![0, 0]]);
        assert_eq!(
            characteristic_sublinks(&LinkingMatrix::zero(25)).unwrap_err(),
            Error::EnumerationTooLarge { size: 1 << 25, cap: 1 << 24 }
        );
    }

    #[test]
    fn framing_parities() {
        assert_eq!(framing_parities_from_sublink(&[vec![0]], &[1]).unwrap(), [1]);
        assert_eq!(framing_parities_from_sublink(&[vec![1]], &[1]).unwrap(), [0]);
        let loops = vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]];
        let m3 = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]];
        for bits in 0..8u8 {
            let s: Vec<u8> = (0..3).map(|i| bits >> i & 1).collect();
            let p = framing_parities_from_sublink(&m3, &s).unwrap();
            assert_eq!(sublink_from_framing_parities(&m3, &p).unwrap(), s);
        }
        // singular mod 2: no unique inverse
        let p = framing_parities_from_sublink(&loops, &[1, 0, 0]).unwrap();
        assert_eq!(sublink_from_framing_parities(&loops, &p), None);
    }

    #[test]
    fn link_evaluations() {
        let p = z4();
        let unknot = lm(&[&[1]]);
        assert_eq!(abelian_link_eval(&p, &unknot, &[0]).unwrap(), Cyclotomic::one());
        assert_eq!(abelian_link_eval(&p, &unknot, &[1]).unwrap(), Cyclotomic::zeta(8));
        let hopf = lm(&[&[0, 1], &[1, 0]]);
        assert_eq!(abelian_link_eval(&p, &hopf, &[1, 1]).unwrap(), Cyclotomic::zeta(4));
        assert_eq!(graded_eval(&p, &lm(&[&[0]]), &[0]).unwrap(), Cyclotomic::from_integer(2));
        assert_eq!(graded_eval(&p, &lm(&[&[2]]), &[0]).unwrap(), Cyclotomic::from_integer(2));
        assert_eq!(graded_eval(&p, &lm(&[&[1]]), &[1]).unwrap(), Cyclotomic::zeta(8).scale(&int(2)));
        assert_eq!(graded_eval(&p, &LinkingMatrix::zero(0), &[]).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn chunked_histograms_merge_to_the_full_sum() {
        let p = z12();
        let l = lm(&[&[1, 2, 0], &[2, -3, 1], &[0, 1, 2]]);
        let sum = ColoringSum::all(&p, &l).unwrap();
        let full = sum.evaluate();
        let n = sum.len();
        let parts = (0..7).map(|k| sum.histogram(k * n / 7..(k + 1) * n / 7));
        assert_eq!(sum.from_histogram(&merge_histograms(parts)), full);
    }

    #[test]
    fn invariant_examples() {
        let p = z4();
        assert_eq!(tau_spin(&p, &lm(&[&[2]]), &[0]).unwrap(), Cyclotomic::zeta_pow(8, -1));
        assert_eq!(tau_spin(&p, &LinkingMatrix::zero(0), &[]).unwrap(), Cyclotomic::one());
        for q in [z4(), z12(), z2z2()] {
            let n = q.group().size() as i64;
            let t3 = LinkingMatrix::zero(3);
            for s in characteristic_sublinks(&t3).unwrap() {
                assert_eq!(tau_spin(&q, &t3, &s).unwrap(), Cyclotomic::from_rational(rational(n, 2).pow(3)));
                assert_eq!(z_spin(&q, &t3, &s).unwrap(), Cyclotomic::from_rational(rational(n, 4)));
            }
            assert_eq!(rt_oriented(&q, &t3).unwrap(), Cyclotomic::from_integer(n));
            let s3 = rt_oriented(&q, &LinkingMatrix::zero(0)).unwrap();
            assert_eq!(&s3 * &s3, Cyclotomic::from_rational(rational(1, n)));
            let zs3 = z_spin(&q, &LinkingMatrix::zero(0), &[]).unwrap();
            assert_eq!(zs3, s3.scale(&int(2)));
        }
    }

    #[test]
    fn lens_space_oriented_formula() {
        let p = z12();
        for k in 1..=9i64 {
            let l = lm(&[&[k]]);
            let sum: Cyclotomic = (0..12).map(|g| abelian_link_eval(&p, &l, &[g]).unwrap()).sum();
            let expect = sqrt_pow(12, -2).try_mul(&p.form().gauss_sum(1).pow(-1)).unwrap().try_mul(&sum).unwrap();
            assert_eq!(rt_oriented(&p, &l).unwrap(), expect);
        }
    }

    #[test]
    fn refinement_constant_is_one() {
        let one = Cyclotomic::one();
        for q in [z4(), z12(), z2z2()] {
            for l in [
                lm(&[&[2]]),
                lm(&[&[3]]),
                lm(&[&[0, 1], &[1, 0]]),
                LinkingMatrix::zero(3),
                LinkingMatrix::diagonal(&[2, 2, 2]),
            ] {
                let r = refinement_check(&q, &l).unwrap();
                assert!(r.holds_with(&one), "{:?}", l);
            }
        }
    }

    #[test]
    fn stabilization_preserves_z_spin() {
        let p = z4();
        let l = lm(&[&[2, 1], &[1, 0]]);
        for s in characteristic_sublinks(&l).unwrap() {
            let z = z_spin(&p, &l, &s).unwrap();
            for sign in [1, -1] {
                let (l2, s2) = stabilize(&l, &s, sign);
                assert!(is_characteristic(&l2, &s2));
                assert_eq!(z_spin(&p, &l2, &s2).unwrap(), z);
            }
        }
    }

    #[test]
    fn coloring_bound() {
        let p = z12();
        let l = LinkingMatrix::zero(7);
        assert!(matches!(ColoringSum::all(&p, &l), Err(Error::EnumerationTooLarge { .. })));
        assert!(ColoringSum::graded(&p, &l, &[0; 7]).is_ok());
    }

    use proptest::prelude::*;

    fn symmetric(n: usize, vals: &[i64]) -> LinkingMatrix {
        let mut e = vec![vec![0; n]; n];
        let mut it = vals.iter().cycle();
        for i in 0..n {
            for j in i..n {
                let v = *it.next().unwrap();
                e[i][j] = v;
                e[j][i] = v;
            }
        }
        LinkingMatrix::new(e).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn permutation_invariance(n in 1usize..4, vals in proptest::collection::vec(-3i64..4, 10), seed in 0usize..24) {
            let l = symmetric(n, &vals);
            let mut perm: Vec<usize> = (0..n).collect();
            // a permutation derived from the seed
            for i in (1..n).rev() {
                perm.swap(i, seed % (i + 1));
            }
            let lp = l.permuted(&perm);
            let p = z4();
            for s in characteristic_sublinks(&l).unwrap() {
                let sp: Vec<u8> = perm.iter().map(|&i| s[i]).collect();
                prop_assert!(is_characteristic(&lp, &sp));
                prop_assert_eq!(z_spin(&p, &l, &s).unwrap(), z_spin(&p, &lp, &sp).unwrap());
            }
        }

        #[test]
        fn inertia_is_a_congruence_invariant(n in 1usize..5, vals in proptest::collection::vec(-3i64..4, 15), shear in -2i64..3) {
            let l = symmetric(n, &vals);
            let inn = inertia(&l);
            prop_assert_eq!(inn.b_plus + inn.b_minus + inn.b_one, n);
            // P^T L P with P = I + shear * E_{0,n-1}
            let mut p = vec![vec![0i64; n]; n];
            for i in 0..n { p[i][i] = 1; }
            if n > 1 { p[0][n - 1] += shear; }
            let e = l.entries();
            let conj: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| {
                (0..n).map(|a| (0..n).map(|b| p[a][i] * e[a][b] * p[b][j]).sum::<i64>()).sum()
            }).collect()).collect();
            prop_assert_eq!(inertia(&LinkingMatrix::new(conj).unwrap()), inn);
            prop_assert_eq!(characteristic_sublinks(&l).unwrap().len(), 1usize << mod2_nullity(&l));
        }
    }
}
