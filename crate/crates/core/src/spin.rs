//! Pointed spin-modular data, abstract spin-modular summaries and the
//! dimensions of spin state spaces of closed surfaces.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::metric::{homogeneous_forms, FiniteAbelianGroup, GroupElement, QuadraticForm};
use crate::scalar::{int, rational, Cyclotomic, QmodZ, Rational};

/// A nondegenerate homogeneous metric group `(G, q)` with a fermion `f`:
/// `f != 0`, `2f = 0`, `q(f) = 1/2`. All quantum dimensions are +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedSpinModular {
    form: QuadraticForm,
    fermion: GroupElement,
    fermion_index: usize,
    degrees: Vec<u8>,
}

impl PointedSpinModular {
    pub fn new(form: QuadraticForm, fermion: GroupElement) -> Result<Self> {
        let g = form.group().clone();
        g.check(&fermion)
            .map_err(|_| Error::InvalidPointed(format!("fermion {fermion} is not in {}", g.describe())))?;
        if fermion == g.zero() {
            return Err(Error::InvalidPointed("fermion must be nonzero".into()));
        }
        if g.scale(2, &fermion) != g.zero() {
            return Err(Error::InvalidPointed(format!("fermion {fermion} does not have order 2")));
        }
        let qf = form.value(&fermion);
        if qf != QmodZ::half() {
            return Err(Error::InvalidPointed(format!("q({fermion}) = {qf}, expected 1/2")));
        }
        if !form.is_homogeneous() {
            return Err(Error::InvalidPointed("quadratic form is not homogeneous".into()));
        }
        if !form.is_nondegenerate() {
            return Err(Error::InvalidPointed("quadratic form is degenerate".into()));
        }
        let fermion_index = g.index(&fermion);
        let degrees = (0..g.size()).map(|x| u8::from(form.bilinear_raw(x, fermion_index) != 0)).collect();
        Ok(PointedSpinModular { form, fermion, fermion_index, degrees })
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.form.group()
    }

    pub fn fermion(&self) -> &GroupElement {
        &self.fermion
    }

    pub fn fermion_index(&self) -> usize {
        self.fermion_index
    }

    /// 0 when `b(g, f) = 0`, else 1.
    pub fn grading_degree(&self, g: &GroupElement) -> u8 {
        self.degrees[self.group().index(g)]
    }

    pub fn degree_at(&self, idx: usize) -> u8 {
        self.degrees[idx]
    }

    /// Indices of the simples of the given degree.
    pub fn kirby_indices(&self, parity: u8) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&i| self.degrees[i] == parity).collect()
    }

    pub fn kirby_color(&self, parity: u8) -> Vec<GroupElement> {
        self.kirby_indices(parity).into_iter().map(|i| self.group().element(i)).collect()
    }
}

/// Every pointed spin-modular structure on `group`: all nondegenerate
/// homogeneous forms together with each of their fermions.
pub fn enumerate_pointed(group: &FiniteAbelianGroup) -> Vec<PointedSpinModular> {
    let mut out = Vec::new();
    for q in homogeneous_forms(group) {
        if !q.is_nondegenerate() {
            continue;
        }
        for f in group.elements() {
            if f != group.zero() && group.scale(2, &f) == group.zero() && q.value(&f) == QmodZ::half() {
                out.push(PointedSpinModular::new(q.clone(), f).expect("checked"));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simple {
    pub label: String,
    pub dim: Cyclotomic,
    pub degree: u8,
    pub fixed_by_f: bool,
}

/// Just enough of a spin-modular category for the state-space formula. The
/// first simple is the tensor unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinModularSummary {
    simples: Vec<Simple>,
    total_dim_sq: Cyclotomic,
    fermion_dim: i8,
}

impl SpinModularSummary {
    pub fn new(simples: Vec<Simple>, fermion_dim: i8) -> Result<Self> {
        let bad = |m: String| Err(Error::InconsistentSummary(m));
        if fermion_dim != 1 && fermion_dim != -1 {
            return bad(format!("fermion dimension must be +1 or -1, got {fermion_dim}"));
        }
        let Some(unit) = simples.first() else {
            return bad("no simple objects".into());
        };
        if unit.dim != Cyclotomic::one() || unit.degree != 0 || unit.fixed_by_f {
            return bad(format!("unit `{}` must have dim 1, degree 0 and not be fixed by f", unit.label));
        }
        for s in &simples {
            if s.degree > 1 {
                return bad(format!("simple `{}` has degree {}", s.label, s.degree));
            }
            if s.fixed_by_f && s.degree != 1 {
                return bad(format!("simple `{}` is fixed by f but even", s.label));
            }
            let z = s.dim.to_complex(15);
            if s.dim != s.dim.conj() || z.re <= 0.0 {
                return bad(format!("dimension of `{}` is not positive real", s.label));
            }
        }
        let total_dim_sq = simples.iter().map(|s| &s.dim * &s.dim).sum();
        Ok(SpinModularSummary { simples, total_dim_sq, fermion_dim })
    }

    pub fn simples(&self) -> &[Simple] {
        &self.simples
    }

    pub fn total_dim_sq(&self) -> &Cyclotomic {
        &self.total_dim_sq
    }

    pub fn fermion_dim(&self) -> i8 {
        self.fermion_dim
    }
}

pub fn summary_from_pointed(psm: &PointedSpinModular) -> SpinModularSummary {
    let g = psm.group();
    let simples = g
        .elements()
        .enumerate()
        .map(|(i, x)| Simple {
            label: x.to_string(),
            dim: Cyclotomic::one(),
            degree: psm.degree_at(i),
            fixed_by_f: false,
        })
        .collect();
    SpinModularSummary::new(simples, 1).expect("pointed data is consistent")
}

pub fn summary_ising() -> SpinModularSummary {
    let simples = vec![
        Simple { label: "1".into(), dim: Cyclotomic::one(), degree: 0, fixed_by_f: false },
        Simple { label: "epsilon".into(), dim: Cyclotomic::one(), degree: 0, fixed_by_f: false },
        Simple { label: "sigma".into(), dim: Cyclotomic::sqrt_nat(2), degree: 1, fixed_by_f: true },
    ];
    SpinModularSummary::new(simples, 1).expect("Ising data is consistent")
}

/// A spin structure on a closed genus-`g` surface, as the tuple `(a_i, b_i)`
/// of its values on a symplectic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpinStructure {
    pairs: Vec<(u8, u8)>,
}

impl SurfaceSpinStructure {
    pub fn new(genus: usize, pairs: Vec<(u8, u8)>) -> Result<Self> {
        if pairs.len() != genus {
            return Err(Error::DimensionMismatch { expected: genus, found: pairs.len() });
        }
        if pairs.iter().any(|&(a, b)| a > 1 || b > 1) {
            return Err(Error::InvalidInput("spin structure entries must be 0 or 1".into()));
        }
        Ok(SurfaceSpinStructure { pairs })
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    /// All `4^g` spin structures of genus `g`.
    pub fn all(genus: usize) -> impl Iterator<Item = SurfaceSpinStructure> {
        (0..1usize << (2 * genus)).map(move |bits| SurfaceSpinStructure {
            pairs: (0..genus).map(|i| (((bits >> (2 * i)) & 1) as u8, ((bits >> (2 * i + 1)) & 1) as u8)).collect(),
        })
    }
}

pub fn arf(sigma: &SurfaceSpinStructure) -> u8 {
    sigma.pairs.iter().map(|&(a, b)| a & b).fold(0, |x, y| x ^ y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateDims {
    pub plus: Cyclotomic,
    pub minus: Cyclotomic,
}

impl StateDims {
    pub fn as_integers(&self) -> (Rational, Rational) {
        (self.plus.to_rational().expect("checked"), self.minus.to_rational().expect("checked"))
    }
}

/// Dimensions of the even and odd parts of the state space of a genus-`g`
/// surface with spin structure `sigma`.
pub fn spin_state_dims(summary: &SpinModularSummary, sigma: &SurfaceSpinStructure) -> Result<StateDims> {
    let g = sigma.genus() as i64;
    let d2 = summary.total_dim_sq();
    let pre = d2.try_pow(g - 1)?;
    let arf_sign = if arf(sigma) == 1 { -1 } else { 1 };
    let fixed_w = rational(arf_sign, 1 << g);
    let free_w = rational(1, 1 << (2 * g));
    let eval = |eps: i64| -> Result<Cyclotomic> {
        let mut acc = Cyclotomic::zero();
        for s in summary.simples() {
            let dsq = &s.dim * &s.dim;
            let w = if s.fixed_by_f { &fixed_w } else { &free_w };
            let sign = if eps < 0 && s.degree == 1 { -1 } else { 1 };
            acc = acc.try_add(&dsq.try_pow(1 - g)?.scale(&(w * int(sign))))?;
        }
        let fsign = if eps < 0 && summary.fermion_dim() == -1 { -1 } else { 1 };
        Ok(pre.try_mul(&acc)?.scale(&int(fsign)))
    };
    let dims = StateDims { plus: eval(1)?, minus: eval(-1)? };
    for (name, v) in [("dim_plus", &dims.plus), ("dim_minus", &dims.minus)] {
        match v.to_rational() {
            Some(r) if r.is_integer() && r >= int(0) => {}
            _ => {
                return Err(Error::InconsistentSummary(format!(
                    "{name} = {} is not a non-negative integer",
                    v.to_expression()
                )))
            }
        }
    }
    Ok(dims)
}

/// The closed form `2 sum_l {1/4 if l is not fixed by f, (-1)^{s1 s2 s3} / 2 if fixed}`.
pub fn t3_closed_form(summary: &SpinModularSummary, s: [u8; 3]) -> Cyclotomic {
    let sign = if s[0] & s[1] & s[2] == 1 { -1 } else { 1 };
    let total: Rational =
        summary.simples().iter().map(|l| if l.fixed_by_f { rational(sign, 2) } else { rational(1, 4) }).sum();
    Cyclotomic::from_rational(total * int(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: &[u64]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    pub(crate) fn z4() -> PointedSpinModular {
        let q = QuadraticForm::from_gram(FiniteAbelianGroup::cyclic(4), &[vec![rational(1, 8)]]).unwrap();
        PointedSpinModular::new(q, el(&[2])).unwrap()
    }

    fn z2z2() -> PointedSpinModular {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let q =
            QuadraticForm::from_gram(g, &[vec![rational(1, 4), rational(0, 1)], vec![rational(0, 1), rational(1, 4)]])
                .unwrap();
        PointedSpinModular::new(q, el(&[1, 1])).unwrap()
    }

    fn z12() -> PointedSpinModular {
        let q = QuadraticForm::from_gram(FiniteAbelianGroup::cyclic(12), &[vec![rational(1, 24)]]).unwrap();
        PointedSpinModular::new(q, el(&[6])).unwrap()
    }

    #[test]
    fn validation() {
        let q = QuadraticForm::from_gram(FiniteAbelianGroup::cyclic(4), &[vec![rational(1, 8)]]).unwrap();
        assert!(matches!(PointedSpinModular::new(q.clone(), el(&[0])), Err(Error::InvalidPointed(_))));
        assert!(matches!(PointedSpinModular::new(q.clone(), el(&[1])), Err(Error::InvalidPointed(_))));
        assert!(matches!(PointedSpinModular::new(q, el(&[5])), Err(Error::InvalidPointed(_))));
        // x^2/16 on Z_8 has q(4) = 0: no fermion
        let q8 = QuadraticForm::from_gram(FiniteAbelianGroup::cyclic(8), &[vec![rational(1, 16)]]).unwrap();
        assert!(PointedSpinModular::new(q8, el(&[4])).is_err());
    }

    #[test]
    fn pointed_structures_by_group() {
        let count = |o: Vec<u64>| enumerate_pointed(&FiniteAbelianGroup::new(o).unwrap()).len();
        assert_eq!(count(vec![2, 4]), 16);
        assert_eq!(count(vec![2, 2]), 12);
        assert_eq!(count(vec![12]), 8);
        assert_eq!(count(vec![8]), 0);
        assert_eq!(count(vec![2, 8]), 0);
        assert_eq!(count(vec![4, 4]), 192);
        assert_eq!(count(vec![2, 2, 2]), 336);
    }

    #[test]
    fn grading_and_kirby_colors() {
        let p = z4();
        assert_eq!(p.grading_degree(&el(&[0])), 0);
        assert_eq!(p.grading_degree(&el(&[1])), 1);
        assert_eq!(p.grading_degree(&el(&[2])), 0);
        assert_eq!(p.kirby_color(0), [el(&[0]), el(&[2])]);
        assert_eq!(p.kirby_color(1), [el(&[1]), el(&[3])]);
        assert_eq!(z2z2().kirby_color(0), [el(&[0, 0]), el(&[1, 1])]);
        for p in [z4(), z2z2(), z12()] {
            let n = p.group().size();
            assert_eq!(p.kirby_indices(0).len(), n / 2);
            assert_eq!(p.kirby_indices(1).len(), n / 2);
        }
    }

    #[test]
    fn summaries() {
        let s = summary_from_pointed(&z4());
        let degs: Vec<u8> = s.simples().iter().map(|x| x.degree).collect();
        assert_eq!(degs, [0, 1, 0, 1]);
        assert_eq!(*s.total_dim_sq(), Cyclotomic::from_integer(4));
        assert!(s.simples().iter().all(|x| !x.fixed_by_f));
        let i = summary_ising();
        assert!(i.simples()[2].fixed_by_f);
        assert_eq!(i.simples()[1].degree, 0);
        assert_eq!(*i.total_dim_sq(), Cyclotomic::from_integer(4));
    }

    #[test]
    fn summary_rejections() {
        let one = || Cyclotomic::one();
        let bad_fixed = vec![
            Simple { label: "1".into(), dim: one(), degree: 0, fixed_by_f: false },
            Simple { label: "x".into(), dim: one(), degree: 0, fixed_by_f: true },
        ];
        assert!(SpinModularSummary::new(bad_fixed, 1).is_err());
        let bad_dim = vec![
            Simple { label: "1".into(), dim: one(), degree: 0, fixed_by_f: false },
            Simple { label: "x".into(), dim: Cyclotomic::zeta(4), degree: 1, fixed_by_f: false },
        ];
        assert!(SpinModularSummary::new(bad_dim, 1).is_err());
        assert!(SpinModularSummary::new(Vec::new(), 1).is_err());
    }

    #[test]
    fn arf_examples() {
        let s = |g, p| SurfaceSpinStructure::new(g, p).unwrap();
        assert_eq!(arf(&s(1, vec![(1, 1)])), 1);
        assert_eq!(arf(&s(1, vec![(0, 1)])), 0);
        assert_eq!(arf(&s(2, vec![(1, 1), (1, 1)])), 0);
        assert!(SurfaceSpinStructure::new(2, vec![(1, 1)]).is_err());
        assert_eq!(SurfaceSpinStructure::all(2).count(), 16);
    }

    #[test]
    fn pointed_dims_do_not_depend_on_spin_structure() {
        for p in [z4(), z2z2(), z12()] {
            let s = summary_from_pointed(&p);
            let n = p.group().size() as i64;
            for g in 1..=2usize {
                for sigma in SurfaceSpinStructure::all(g) {
                    let d = spin_state_dims(&s, &sigma).unwrap();
                    assert_eq!(d.plus, Cyclotomic::from_rational(rational(n, 4).pow(g as i32)));
                    assert!(d.minus.is_zero());
                }
            }
        }
    }

    #[test]
    fn ising_parity_is_arf() {
        let s = summary_ising();
        let one = Cyclotomic::one();
        let d = spin_state_dims(&s, &SurfaceSpinStructure::new(1, vec![(1, 1)]).unwrap()).unwrap();
        assert!(d.plus.is_zero());
        assert_eq!(d.minus, one);
        for g in 1..=3 {
            for sigma in SurfaceSpinStructure::all(g) {
                let d = spin_state_dims(&s, &sigma).unwrap();
                assert_eq!(&d.plus + &d.minus, one);
                assert_eq!(d.minus == one, arf(&sigma) == 1);
            }
        }
    }

    #[test]
    fn t3_closed_form_values() {
        assert_eq!(t3_closed_form(&summary_from_pointed(&z12()), [1, 0, 1]), Cyclotomic::from_integer(6));
        assert!(t3_closed_form(&summary_ising(), [1, 1, 1]).is_zero());
        assert_eq!(t3_closed_form(&summary_ising(), [0, 0, 0]), Cyclotomic::from_integer(2));
    }
}
