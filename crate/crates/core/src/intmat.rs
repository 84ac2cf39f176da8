//! Dense integer matrices, Smith normal form with transforms, and quotients
//! of finitely generated integer lattices.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

/// Row vector times matrix.
pub fn vecmul(v: &[BigInt], m: &IntMatrix, cols: usize) -> Vec<BigInt> {
    (0..cols).map(|j| v.iter().zip(m).fold(BigInt::zero(), |acc, (x, row)| acc + x * &row[j])).collect()
}

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal with
/// nonnegative entries `d_0 | d_1 | ...`. `v_inv` is the inverse of `v`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// The diagonal, length `min(rows, cols)`.
    pub diag: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x += c * y;
            }
        }
    }

    /// col_i += c * col_j; v_inv gets row_j -= c * row_i
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let y = row[j].clone();
                row[i] += c * y;
            }
        }
        let src = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(src) {
            *x -= c * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -core::mem::take(x);
            }
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix, rows: usize, cols: usize) -> SmithForm {
    let mut w = Work { a: a.clone(), u: identity(rows), v: identity(cols), v_inv: identity(cols) };
    let steps = rows.min(cols);
    let mut t = 0;
    while t < steps {
        // pivot: smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let mut fix = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !w.a[i][j].is_multiple_of(&w.a[t][t]) {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..steps).map(|i| w.a[i][i].clone()).collect();
    SmithForm { rows, cols, u: w.u, v: w.v, v_inv: w.v_inv, diag }
}

/// Generators (rows) of `{x : x * a = 0}`.
pub fn left_kernel(a: &IntMatrix, rows: usize, cols: usize) -> IntMatrix {
    let snf = smith_normal_form(a, rows, cols);
    let r = snf.rank();
    snf.u[r..].to_vec()
}

/// Some integer `c` with `c * a = b`, if one exists.
pub fn solve_left(snf: &SmithForm, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let bv = vecmul(b, &snf.v, snf.cols);
    let r = snf.rank();
    if bv[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut z = vec![BigInt::zero(); snf.rows];
    for i in 0..r {
        let (q, rem) = bv[i].div_rem(&snf.diag[i]);
        if !rem.is_zero() {
            return None;
        }
        z[i] = q;
    }
    Some(vecmul(&z, &snf.u, snf.rows))
}

/// The finite abelian group `L1 / L2` for integer lattices `L2 <= L1 <= Z^n`
/// given by generating rows.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    dim: usize,
    gens: IntMatrix,
    gens_snf: SmithForm,
    rel_snf: SmithForm,
    /// Positions of the SNF diagonal that are not 1, with their values.
    kept: Vec<(usize, u64)>,
}

impl LatticeQuotient {
    pub fn new(dim: usize, gens: IntMatrix, sub: &IntMatrix) -> Result<Self> {
        let m = gens.len();
        let gens_snf = smith_normal_form(&gens, m, dim);
        let mut relations = left_kernel(&gens, m, dim);
        for b in sub {
            let c = solve_left(&gens_snf, b)
                .ok_or_else(|| Error::InvalidInput("sublattice generator is not in the ambient lattice".into()))?;
            relations.push(c);
        }
        let rel_snf = smith_normal_form(&relations, relations.len(), m);
        let mut kept = Vec::new();
        for i in 0..m {
            let d = rel_snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                return Err(Error::InfiniteQuotient);
            }
            if !d.is_one() {
                let d = u64::try_from(&d).map_err(|_| Error::InvalidInput("quotient too large".into()))?;
                kept.push((i, d));
            }
        }
        Ok(LatticeQuotient { dim, gens, gens_snf, rel_snf, kept })
    }

    /// Cyclic orders of the quotient, `d_1 | d_2 | ...`, all at least 2.
    pub fn orders(&self) -> Vec<u64> {
        self.kept.iter().map(|&(_, d)| d).collect()
    }

    /// Residues of the class of `x`, or `None` if `x` is not in `L1`.
    pub fn project(&self, x: &[BigInt]) -> Option<Vec<u64>> {
        let c = solve_left(&self.gens_snf, x)?;
        let y = vecmul(&c, &self.rel_snf.v, self.gens.len());
        Some(
            self.kept.iter().map(|&(i, d)| u64::try_from(y[i].mod_floor(&BigInt::from(d))).expect("residue")).collect(),
        )
    }

    /// A lattice vector in the class with the given residues.
    pub fn lift(&self, residues: &[u64]) -> Vec<BigInt> {
        let m = self.gens.len();
        let mut y = vec![BigInt::zero(); m];
        for (&(i, _), &r) in self.kept.iter().zip(residues) {
            y[i] = BigInt::from(r);
        }
        let c = vecmul(&y, &self.rel_snf.v_inv, m);
        vecmul(&c, &self.gens, self.dim)
    }
}

/// Inverse over Q of a square integer matrix, or `None` if singular.
pub fn rational_inverse(a: &[Vec<i64>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|&x| int(x)).chain((0..n).map(|j| int(i64::from(i == j)))).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let src = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(src) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}
