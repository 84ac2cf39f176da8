//! Torus mapping-class-group action: the spin T and S operators in the
//! `e_g^±` basis, the oriented operators they restrict from, and the
//! comparison with the wavefunction-basis matrices on `D`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::classify::{functor_f, AscsTriple, FunctorImage};
use crate::error::{Error, Result};
use crate::metric::{FiniteAbelianGroup, GroupElement};
use crate::scalar::{Cyclotomic, QmodZ, Rational};
use crate::spin::PointedSpinModular;

/// `m[row][col]`; column `j` holds the image of basis vector `j`.
pub type CycMatrix = Vec<Vec<Cyclotomic>>;

/// `alpha` selects `e^+` (0) or `e^-` (1); `beta` the parity of the labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sector {
    pub alpha: u8,
    pub beta: u8,
}

impl Sector {
    pub const fn new(alpha: u8, beta: u8) -> Self {
        Sector { alpha, beta }
    }

    pub fn all() -> [Sector; 4] {
        [Sector::new(0, 0), Sector::new(1, 0), Sector::new(0, 1), Sector::new(1, 1)]
    }

    pub fn t_target(self) -> Sector {
        if self.beta == 0 {
            Sector::new(self.alpha ^ 1, 0)
        } else {
            self
        }
    }

    pub fn s_target(self) -> Sector {
        Sector::new(self.beta, self.alpha)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representatives {
    Smallest,
    Largest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinTorusBasis {
    pub sector: Sector,
    /// One representative per coset of `<f>` in `G_beta`, cosets ordered by
    /// their smallest element.
    pub labels: Vec<GroupElement>,
}

impl SpinTorusBasis {
    pub fn new(psm: &PointedSpinModular, sector: Sector, reps: Representatives) -> Self {
        let g = psm.group();
        let f = psm.fermion();
        let mut seen = vec![false; g.size()];
        let mut labels = Vec::new();
        for x in g.elements().filter(|x| psm.grading_degree(x) == sector.beta) {
            let i = g.index(&x);
            if seen[i] {
                continue;
            }
            let y = g.add(&x, f);
            seen[i] = true;
            seen[g.index(&y)] = true;
            labels.push(match reps {
                Representatives::Smallest => x,
                Representatives::Largest => y.max(x),
            });
        }
        SpinTorusBasis { sector, labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `e_g^± = coev_g ± coev_{g+f}` in the oriented basis.
    pub fn embed(&self, psm: &PointedSpinModular, j: usize) -> Vec<Cyclotomic> {
        let g = psm.group();
        let mut v = vec![Cyclotomic::zero(); g.size()];
        let x = &self.labels[j];
        v[g.index(x)] = Cyclotomic::one();
        v[g.index(&g.add(x, psm.fermion()))] = Cyclotomic::from_integer(if self.sector.alpha == 0 { 1 } else { -1 });
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorMap {
    pub source: SpinTorusBasis,
    pub target: SpinTorusBasis,
    pub matrix: CycMatrix,
}

fn phase(r: &QmodZ) -> Cyclotomic {
    Cyclotomic::root_of_unity(r)
}

pub fn spin_t(psm: &PointedSpinModular, sector: Sector) -> SectorMap {
    spin_t_with(psm, sector, Representatives::Smallest)
}

pub fn spin_t_with(psm: &PointedSpinModular, sector: Sector, reps: Representatives) -> SectorMap {
    let source = SpinTorusBasis::new(psm, sector, reps);
    let target = SpinTorusBasis::new(psm, sector.t_target(), reps);
    let n = source.len();
    let mut matrix = vec![vec![Cyclotomic::zero(); n]; n];
    for (j, x) in source.labels.iter().enumerate() {
        matrix[j][j] = phase(&-psm.form().value(x));
    }
    SectorMap { source, target, matrix }
}

pub fn spin_s(psm: &PointedSpinModular, sector: Sector) -> SectorMap {
    spin_s_with(psm, sector, Representatives::Smallest)
}

pub fn spin_s_with(psm: &PointedSpinModular, sector: Sector, reps: Representatives) -> SectorMap {
    let source = SpinTorusBasis::new(psm, sector, reps);
    let target = SpinTorusBasis::new(psm, sector.s_target(), reps);
    let scale = Cyclotomic::from_integer(2).try_div(&Cyclotomic::sqrt_nat(psm.group().size() as u64)).expect("nonzero");
    let q = psm.form();
    let matrix = target
        .labels
        .iter()
        .map(|y| source.labels.iter().map(|x| &scale * &phase(&q.bilinear(x, y))).collect())
        .collect();
    SectorMap { source, target, matrix }
}

pub fn oriented_t(psm: &PointedSpinModular) -> CycMatrix {
    let g = psm.group();
    let mut m = vec![vec![Cyclotomic::zero(); g.size()]; g.size()];
    for i in 0..g.size() {
        m[i][i] = phase(&-psm.form().value_at(i));
    }
    m
}

pub fn oriented_s(psm: &PointedSpinModular) -> CycMatrix {
    let g = psm.group();
    let scale = Cyclotomic::one().try_div(&Cyclotomic::sqrt_nat(g.size() as u64)).expect("nonzero");
    (0..g.size())
        .map(|h| (0..g.size()).map(|x| &scale * &phase(&psm.form().bilinear(&g.element(x), &g.element(h)))).collect())
        .collect()
}

pub fn matmul(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).filter(|&k| !row[k].is_zero() && !b[k][c].is_zero()).map(|k| &row[k] * &b[k][c]).sum()
                })
                .collect()
        })
        .collect()
}

fn apply(m: &CycMatrix, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
    m.iter()
        .map(|row| row.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
        .collect()
}

/// `(S^2)_{g,h} = delta_{g,-h}`.
pub fn oriented_s_squared_check(psm: &PointedSpinModular) -> bool {
    let g = psm.group();
    let s2 = matmul(&oriented_s(psm), &oriented_s(psm));
    (0..g.size()).all(|h| (0..g.size()).all(|x| s2[h][x] == Cyclotomic::from_integer(i64::from(g.neg_index(x) == h))))
}

fn rank(vectors: &[Vec<Cyclotomic>]) -> usize {
    // embedded vectors have integer entries
    let mut rows: Vec<Vec<Rational>> =
        vectors.iter().map(|v| v.iter().map(|c| c.to_rational().expect("integral")).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != Rational::from_integer(0.into())) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != Rational::from_integer(0.into()) {
                let factor = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x -= &factor * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// The oriented operators carry each embedded sector to its target sector
/// with exactly the spin matrices, and the embedded sectors span the whole
/// oriented space.
pub fn oriented_restriction_check(psm: &PointedSpinModular) -> Result<bool> {
    restriction_with(psm, Representatives::Smallest)
}

pub fn restriction_with(psm: &PointedSpinModular, reps: Representatives) -> Result<bool> {
    let ot = oriented_t(psm);
    let os = oriented_s(psm);
    let mut all = Vec::new();
    for sector in Sector::all() {
        for (oriented, map) in [(&ot, spin_t_with(psm, sector, reps)), (&os, spin_s_with(psm, sector, reps))] {
            for j in 0..map.source.len() {
                let lhs = apply(oriented, &map.source.embed(psm, j));
                let mut rhs = vec![Cyclotomic::zero(); lhs.len()];
                for (i, row) in map.matrix.iter().enumerate() {
                    if row[j].is_zero() {
                        continue;
                    }
                    for (r, e) in rhs.iter_mut().zip(map.target.embed(psm, i)) {
                        if !e.is_zero() {
                            *r = &*r + &(&row[j] * &e);
                        }
                    }
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        let basis = SpinTorusBasis::new(psm, sector, reps);
        if basis.len() * 4 != psm.group().size() {
            return Err(Error::CheckFailed(format!("sector {sector:?} has {} labels", basis.len())));
        }
        all.extend((0..basis.len()).map(|j| basis.embed(psm, j)));
    }
    Ok(rank(&all) == psm.group().size())
}

fn is_monomial(m: &CycMatrix) -> bool {
    let n = m.len();
    let row_ok = m.iter().all(|r| r.iter().filter(|x| !x.is_zero()).count() == 1);
    let col_ok = (0..n).all(|c| m.iter().filter(|r| !r[c].is_zero()).count() == 1);
    row_ok && col_ok
}

/// `S` composed with itself through the sector mapping is a nonzero multiple
/// of a permutation; hence every spin S block is invertible.
pub fn spin_s_invertible(psm: &PointedSpinModular) -> bool {
    Sector::all().into_iter().all(|sector| {
        let first = spin_s(psm, sector);
        let second = spin_s(psm, sector.s_target());
        is_monomial(&matmul(&second.matrix, &first.matrix))
    })
}

/// Largest-representative matrices equal the smallest-representative ones
/// conjugated by the diagonal sign change `e_{g+f}^± = ±e_g^±`.
pub fn representative_independence(psm: &PointedSpinModular) -> bool {
    let signs = |small: &SpinTorusBasis, large: &SpinTorusBasis| -> Vec<i64> {
        small
            .labels
            .iter()
            .zip(&large.labels)
            .map(|(a, b)| if a != b && small.sector.alpha == 1 { -1 } else { 1 })
            .collect()
    };
    Sector::all().into_iter().all(|sector| {
        [
            (spin_t(psm, sector), spin_t_with(psm, sector, Representatives::Largest)),
            (spin_s(psm, sector), spin_s_with(psm, sector, Representatives::Largest)),
        ]
        .into_iter()
        .all(|(small, large)| {
            let ds = signs(&small.source, &large.source);
            let dt = signs(&small.target, &large.target);
            small.matrix.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, x)| large.matrix[i][j] == x * &Cyclotomic::from_integer(dt[i] * ds[j]))
            })
        })
    })
}

/// Label `(b, a)` of a wavefunction sector, standing for `Psi_{., b/2, a/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsiLabel {
    pub b: u8,
    pub a: u8,
}

impl PsiLabel {
    pub const fn new(b: u8, a: u8) -> Self {
        PsiLabel { b, a }
    }

    pub fn of(sector: Sector) -> Self {
        PsiLabel::new(sector.beta, sector.alpha)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    T,
    S,
}

/// A wavefunction-basis matrix on `D`, rows and columns in the index order
/// of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bm05Map {
    pub source: PsiLabel,
    pub target: PsiLabel,
    pub matrix: CycMatrix,
}

/// The six displayed families, without the `e^{2 pi i sigma/24}` factor.
/// `w2` is the class of `2a` in `D`.
pub fn bm05_matrix(ascs: &AscsTriple, w2: &GroupElement, generator: Generator, source: PsiLabel) -> Bm05Map {
    let d = ascs.group();
    let q = ascs.form();
    let n = d.size();
    let q0 = q.value_at(0);
    let mut matrix = vec![vec![Cyclotomic::zero(); n]; n];
    let target = match generator {
        Generator::T => {
            let target = PsiLabel::of(Sector::new(source.a, source.b).t_target());
            for (i, row) in matrix.iter_mut().enumerate() {
                let minus = q.value_at(d.neg_index(i));
                let e = match (source.b, source.a) {
                    (0, 1) => &q.value_at(i) - &q0,
                    (0, 0) => &minus - &q0,
                    _ => minus,
                };
                row[i] = phase(&-e);
            }
            target
        }
        Generator::S => {
            let scale = Cyclotomic::one().try_div(&Cyclotomic::sqrt_nat(n as u64)).expect("nonzero");
            let shift = source.a == 1;
            let extra = if source == PsiLabel::new(1, 1) { q0.times(2) } else { QmodZ::zero() };
            for (gp, row) in matrix.iter_mut().enumerate() {
                let y = d.element(gp);
                let y = if shift { d.add(&y, w2) } else { y };
                for (g, entry) in row.iter_mut().enumerate() {
                    *entry = &scale * &phase(&(&q.bilinear(&d.element(g), &y) + &extra));
                }
            }
            PsiLabel::new(source.a, source.b)
        }
    };
    Bm05Map { source, target, matrix }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerReport {
    pub s_agrees: bool,
    /// The single ratio between conjugated spin T and wavefunction T, if one exists.
    pub t_phase: Option<Cyclotomic>,
    pub t_phase_order: Option<u64>,
}

impl IntertwinerReport {
    pub fn holds(&self) -> bool {
        self.s_agrees && self.t_phase_order.is_some_and(|o| 24 % o == 0)
    }
}

/// Index in `D` and coefficient of the image of basis vector `j` under
/// `e_g^+ -> Psi_[g]`, `e_g^- -> e^{-2 pi i b(a,g)} Psi_[g]` (labels in `G_1`
/// enter as `[g - a]`).
fn basis_map(
    psm: &PointedSpinModular,
    image: &FunctorImage,
    basis: &SpinTorusBasis,
) -> Result<Vec<(usize, Cyclotomic)>> {
    let g = psm.group();
    let d: &FiniteAbelianGroup = image.ascs.group();
    basis
        .labels
        .iter()
        .map(|x| {
            let even = if basis.sector.beta == 0 { x.clone() } else { g.sub(x, &image.a) };
            let c = if basis.sector.alpha == 0 { Cyclotomic::one() } else { phase(&-psm.form().bilinear(&image.a, x)) };
            Ok((d.index(&image.project(&even)?), c))
        })
        .collect()
}

/// Conjugates `map` through the basis isomorphism into a matrix on `D`.
fn conjugate(psm: &PointedSpinModular, image: &FunctorImage, map: &SectorMap) -> Result<CycMatrix> {
    let n = image.ascs.group().size();
    let src = basis_map(psm, image, &map.source)?;
    let dst = basis_map(psm, image, &map.target)?;
    let mut out = vec![vec![Cyclotomic::zero(); n]; n];
    for (i, (di, ci)) in dst.iter().enumerate() {
        for (j, (dj, cj)) in src.iter().enumerate() {
            out[*di][*dj] = (ci * &map.matrix[i][j]).try_div(cj)?;
        }
    }
    Ok(out)
}

pub fn intertwiner_check(psm: &PointedSpinModular) -> Result<IntertwinerReport> {
    let image = functor_f(psm)?;
    let mut s_agrees = true;
    let mut t_phase: Option<Cyclotomic> = None;
    let mut t_consistent = true;
    for sector in Sector::all() {
        let label = PsiLabel::of(sector);
        let s = conjugate(psm, &image, &spin_s(psm, sector))?;
        let bs = bm05_matrix(&image.ascs, &image.w2, Generator::S, label);
        s_agrees &= bs.target == PsiLabel::of(sector.s_target()) && s == bs.matrix;
        let t = conjugate(psm, &image, &spin_t(psm, sector))?;
        let bt = bm05_matrix(&image.ascs, &image.w2, Generator::T, label);
        t_consistent &= bt.target == PsiLabel::of(sector.t_target());
        for (row_t, row_b) in t.iter().zip(&bt.matrix) {
            for (x, y) in row_t.iter().zip(row_b) {
                match (x.is_zero(), y.is_zero()) {
                    (true, true) => {}
                    (false, false) => {
                        let r = x.try_div(y)?;
                        match &t_phase {
                            None => t_phase = Some(r),
                            Some(c) => t_consistent &= *c == r,
                        }
                    }
                    _ => t_consistent = false,
                }
            }
        }
    }
    let t_phase = t_phase.filter(|_| t_consistent);
    let t_phase_order = t_phase.as_ref().and_then(Cyclotomic::root_of_unity_order);
    Ok(IntertwinerReport { s_agrees, t_phase, t_phase_order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::QuadraticForm;
    use crate::scalar::rational;
    use crate::spin::enumerate_pointed;

    fn psm(orders: Vec<u64>, gram: &[&[(i64, i64)]], f: &[u64]) -> PointedSpinModular {
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let m: Vec<Vec<Rational>> = gram.iter().map(|r| r.iter().map(|&(a, b)| rational(a, b)).collect()).collect();
        PointedSpinModular::new(QuadraticForm::from_gram(g, &m).unwrap(), GroupElement(f.to_vec())).unwrap()
    }

    fn corpus() -> Vec<PointedSpinModular> {
        vec![
            psm(vec![4], &[&[(1, 8)]], &[2]),
            psm(vec![12], &[&[(1, 24)]], &[6]),
            psm(vec![2, 2], &[&[(1, 4), (0, 1)], &[(0, 1), (1, 4)]], &[1, 1]),
            psm(vec![4, 4], &[&[(1, 8), (0, 1)], &[(0, 1), (1, 8)]], &[2, 0]),
            psm(vec![4, 4], &[&[(1, 8), (0, 1)], &[(0, 1), (-1, 8)]], &[2, 0]),
        ]
    }

    #[test]
    fn small_examples() {
        let p = &corpus()[0];
        let s = spin_s(p, Sector::new(0, 0));
        assert_eq!(s.matrix, vec![vec![Cyclotomic::one()]]);
        let t = spin_t(p, Sector::new(0, 0));
        assert_eq!(t.matrix, vec![vec![Cyclotomic::one()]]);
        assert_eq!(t.target.sector, Sector::new(1, 0));
        // e_0^+ -> coev_0 - coev_f
        let v = apply(&oriented_t(p), &t.source.embed(p, 0));
        assert_eq!(v, t.target.embed(p, 0));
        let p = &corpus()[1];
        let t = spin_t(p, Sector::new(0, 1));
        assert_eq!(t.source.labels[0], GroupElement(vec![1]));
        assert_eq!(t.matrix[0][0], Cyclotomic::zeta_pow(24, -1));
        assert_eq!(t.target.sector, Sector::new(0, 1));
        let z = bm05_matrix(
            &functor_f(&corpus()[0]).unwrap().ascs,
            &GroupElement(vec![]),
            Generator::S,
            PsiLabel::new(0, 0),
        );
        assert_eq!(z.matrix, vec![vec![Cyclotomic::one()]]);
    }

    #[test]
    fn corpus_checks() {
        for p in corpus() {
            assert!(oriented_s_squared_check(&p));
            assert!(oriented_restriction_check(&p).unwrap());
            assert!(restriction_with(&p, Representatives::Largest).unwrap());
            assert!(spin_s_invertible(&p));
            assert!(representative_independence(&p));
            let r = intertwiner_check(&p).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn intertwiner_on_all_small_pointed_data() {
        for orders in [vec![2, 4], vec![2, 2]] {
            for p in enumerate_pointed(&FiniteAbelianGroup::new(orders).unwrap()) {
                let r = intertwiner_check(&p).unwrap();
                assert!(r.holds());
                assert_eq!(r.t_phase, Some(Cyclotomic::one()));
            }
        }
    }

    #[test]
    fn bm05_t_diagonal_at_zero() {
        let img = functor_f(&corpus()[1]).unwrap();
        let m = bm05_matrix(&img.ascs, &img.w2, Generator::T, PsiLabel::new(0, 1));
        assert_eq!(m.matrix[0][0], Cyclotomic::one());
        assert_eq!(m.target, PsiLabel::new(0, 0));
    }
}
