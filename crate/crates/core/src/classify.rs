//! The functor from pointed spin-modular data to abelian spin Chern-Simons
//! triples, and lattice constructions of both.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::intmat::{identity, rational_inverse, IntMatrix, LatticeQuotient};
use crate::metric::{
    automorphisms, for_each_isomorphism, pullback, FiniteAbelianGroup, GroupElement, GroupHom, IsoConstraints,
    QuadraticForm, DEFAULT_ENUMERATION_CAP,
};
use crate::scalar::{int, rational, Cyclotomic, QmodZ, Rational};
use crate::spin::PointedSpinModular;
use crate::surgery::{inertia, LinkingMatrix};

/// `(D, [q], sigma)`: a nondegenerate form, stored through one representative
/// of its shift class, and `sigma` mod 8 with `tau_+(D, q) = e^{2 pi i sigma/8}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AscsTriple {
    q: QuadraticForm,
    sigma: u8,
}

impl AscsTriple {
    pub fn new(q: QuadraticForm, sigma: u8) -> Result<Self> {
        if !q.is_nondegenerate() {
            return Err(Error::InvalidInput("ASCS form is degenerate".into()));
        }
        let sigma = sigma % 8;
        let tau = q.gauss_sum(1);
        if tau != Cyclotomic::zeta_pow(8, sigma as i64) {
            return Err(Error::GaussMilgram(format!("{} (expected e^(2 pi i {sigma}/8))", tau.to_expression())));
        }
        Ok(AscsTriple { q, sigma })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.q.group()
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.q
    }

    pub fn sigma(&self) -> u8 {
        self.sigma
    }

    /// No representative `q(. - delta)` of the class vanishes at 0, i.e. `q`
    /// takes no zero value.
    pub fn is_spin(&self) -> bool {
        (0..self.group().size()).all(|i| self.q.raw(i) != 0)
    }
}

/// An isomorphism `phi: D_a -> D_b` with `[q_b o phi] = [q_a]`, together with
/// the shift witnessing it.
pub fn ascs_isomorphism(a: &AscsTriple, b: &AscsTriple, cap: usize) -> Result<Option<(GroupHom, GroupElement)>> {
    if a.sigma != b.sigma {
        return Ok(None);
    }
    let mut found = None;
    for_each_isomorphism(a.group(), b.group(), IsoConstraints::default(), cap, |phi| {
        match pullback(b.form(), phi, a.group()).qclass_equivalent(a.form()) {
            Some(delta) => {
                found = Some((phi.clone(), delta));
                false
            }
            None => true,
        }
    })?;
    Ok(found)
}

/// `D = G_0 / <f>` with projection data, the chosen `a in G \ G_0`, and the
/// class of `2a` in `D`.
#[derive(Clone, Debug)]
pub struct FunctorImage {
    pub ascs: AscsTriple,
    pub a: GroupElement,
    pub w2: GroupElement,
    pub even: Vec<GroupElement>,
    lattice: LatticeQuotient,
    source: FiniteAbelianGroup,
    section: Vec<usize>,
}

impl FunctorImage {
    /// Class in `D` of an element of `G_0`.
    pub fn project(&self, x: &GroupElement) -> Result<GroupElement> {
        let v: Vec<BigInt> = x.0.iter().map(|&r| BigInt::from(r)).collect();
        self.lattice
            .project(&v)
            .map(GroupElement)
            .ok_or_else(|| Error::NotInGroup(format!("{x} is not in the even part")))
    }

    /// Lexicographically smallest representative in `G_0`.
    pub fn section(&self, y: &GroupElement) -> GroupElement {
        self.source.element(self.section[self.ascs.group().index(y)])
    }

    /// `F(phi)` for an isomorphism `phi: G -> G'` of pointed data, where
    /// `self` is the image of the source and `target` of the target.
    pub fn induced(&self, phi: &GroupHom, target: &FunctorImage) -> Result<GroupHom> {
        let d = self.ascs.group();
        let images = (0..d.rank())
            .map(|i| target.project(&phi.apply(&target.source, &self.section(&d.generator(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHom { images })
    }
}

/// Generators of `{x in Z^k : c . x = 0 mod 2}` for a 0/1 vector `c`.
fn even_kernel_basis(c: &[u8]) -> IntMatrix {
    let k = c.len();
    let unit = |i: usize, scale: i64| -> Vec<BigInt> {
        (0..k).map(|t| BigInt::from(if t == i { scale } else { 0 })).collect()
    };
    let Some(j) = c.iter().position(|&x| x == 1) else { return identity(k) };
    (0..k)
        .map(|i| {
            if i == j {
                unit(j, 2)
            } else if c[i] == 1 {
                let mut v = unit(i, 1);
                v[j] += 1;
                v
            } else {
                unit(i, 1)
            }
        })
        .collect()
}

pub fn functor_f(psm: &PointedSpinModular) -> Result<FunctorImage> {
    let g = psm.group();
    let q = psm.form();
    let f = psm.fermion();
    let k = g.rank();
    let parity: Vec<u8> = (0..k).map(|i| psm.grading_degree(&g.generator(i))).collect();
    let mut sub: IntMatrix =
        (0..k).map(|i| (0..k).map(|j| BigInt::from(if i == j { g.orders()[i] } else { 0 })).collect()).collect();
    sub.push(f.0.iter().map(|&r| BigInt::from(r)).collect());
    let lattice = LatticeQuotient::new(k, even_kernel_basis(&parity), &sub)?;
    let d = FiniteAbelianGroup::new(lattice.orders())?;
    let even: Vec<GroupElement> = g.elements().filter(|x| psm.grading_degree(x) == 0).collect();
    let a = g.elements().find(|x| psm.grading_degree(x) == 1).expect("grading is onto");
    let mut image = FunctorImage {
        ascs: AscsTriple { q: QuadraticForm::zero_form(d.clone()), sigma: 0 },
        w2: d.zero(),
        a: a.clone(),
        even,
        lattice,
        source: g.clone(),
        section: vec![usize::MAX; d.size()],
    };
    let mut qa_raw = vec![0u64; d.size()];
    for x in &image.even {
        let y = d.index(&image.project(x)?);
        let val = q.raw(g.index(&g.sub(x, &a)));
        if image.section[y] == usize::MAX {
            image.section[y] = g.index(x);
            qa_raw[y] = val;
        } else if qa_raw[y] != val {
            return Err(Error::CheckFailed(format!("q(x - a) is not constant on the coset of {x}")));
        }
    }
    let qa = QuadraticForm::from_raw(d.clone(), q.modulus(), qa_raw)?;
    let sigma = q.signature()?;
    image.ascs = AscsTriple::new(qa, sigma)?;
    image.w2 = image.project(&g.scale(2, &a))?;
    Ok(image)
}

/// `x -> x + 2 b(x, f) f`, after checking that it is a nontrivial involutive
/// automorphism of `(G, q, f)` that `F` sends to the identity.
pub fn kernel_automorphism(psm: &PointedSpinModular) -> Result<GroupHom> {
    let g = psm.group();
    let f = psm.fermion();
    let images: Vec<GroupElement> = (0..g.rank())
        .map(|i| {
            let e = g.generator(i);
            if psm.grading_degree(&e) == 1 {
                g.add(&e, f)
            } else {
                e
            }
        })
        .collect();
    let phi = GroupHom { images };
    let fail = |m: &str| Err(Error::CheckFailed(format!("kernel automorphism: {m}")));
    let mut seen = vec![false; g.size()];
    for x in g.elements() {
        let y = phi.apply(g, &x);
        seen[g.index(&y)] = true;
        if psm.form().value(&y) != psm.form().value(&x) {
            return fail("does not preserve q");
        }
        if phi.apply(g, &y) != x {
            return fail("is not an involution");
        }
    }
    if seen.iter().any(|s| !s) {
        return fail("is not bijective");
    }
    if phi.apply(g, f) != *f {
        return fail("does not fix f");
    }
    if phi.is_identity(g) {
        return fail("is the identity");
    }
    let image = functor_f(psm)?;
    if !image.induced(&phi, &image)?.is_identity(image.ascs.group()) {
        return fail("is not sent to the identity of D");
    }
    Ok(phi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoToOneReport {
    /// `|Aut(G, q, f)|`
    pub pointed: usize,
    /// `|Aut(D, [q])|`
    pub ascs: usize,
    /// Number of distinct `F(phi)`; equals `ascs` when F is onto.
    pub image: usize,
}

impl TwoToOneReport {
    pub fn holds(&self) -> bool {
        self.pointed == 2 * self.ascs && self.image == self.ascs
    }
}

pub fn two_to_one_check(psm: &PointedSpinModular, cap: usize) -> Result<TwoToOneReport> {
    let g = psm.group();
    let image = functor_f(psm)?;
    let d = image.ascs.group();
    let pointed = automorphisms(g, Some(psm.form()), Some(psm.fermion()), cap)?;
    let ascs: Vec<GroupHom> = automorphisms(d, None, None, cap)?
        .into_iter()
        .filter(|phi| pullback(image.ascs.form(), phi, d).qclass_equivalent(image.ascs.form()).is_some())
        .collect();
    let mut induced: Vec<GroupHom> = Vec::new();
    for phi in &pointed {
        let m = image.induced(phi, &image)?;
        if !ascs.contains(&m) {
            return Err(Error::CheckFailed("F(phi) does not preserve the class of q".into()));
        }
        if !induced.contains(&m) {
            induced.push(m);
        }
    }
    Ok(TwoToOneReport { pointed: pointed.len(), ascs: ascs.len(), image: induced.len() })
}

/// A nondegenerate integral lattice `Z^n` with Gram matrix `gram` and a
/// characteristic vector given in dual coordinates `w2_i = (W_2, e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    gram: Vec<Vec<i64>>,
    w2: Vec<i64>,
    inverse: Vec<Vec<Rational>>,
}

impl LatticeData {
    pub fn new(gram: Vec<Vec<i64>>, w2: Vec<i64>) -> Result<Self> {
        let n = gram.len();
        if w2.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: w2.len() });
        }
        LinkingMatrix::new(gram.clone()).map_err(|e| Error::InvalidLattice(format!("{e}")))?;
        let inverse = rational_inverse(&gram).ok_or_else(|| Error::InvalidLattice("Gram matrix is singular".into()))?;
        for i in 0..n {
            if (w2[i] - gram[i][i]).rem_euclid(2) != 0 {
                return Err(Error::InvalidLattice(format!("w2 is not characteristic at basis vector {i}")));
            }
        }
        Ok(LatticeData { gram, w2, inverse })
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn w2(&self) -> &[i64] {
        &self.w2
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// `x^T G^{-1} y` for dual coordinate vectors.
    fn dual_pairing(&self, x: &[BigInt], y: &[BigInt]) -> Rational {
        let mut acc = int(0);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += &self.inverse[i][j] * Rational::from_integer(xi * yj);
            }
        }
        acc
    }

    pub fn signature(&self) -> i64 {
        inertia(&LinkingMatrix::new(self.gram.clone()).expect("validated")).signature()
    }

    fn dual_rows(&self) -> IntMatrix {
        self.gram.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn w2_big(&self) -> Vec<BigInt> {
        self.w2.iter().map(|&x| BigInt::from(x)).collect()
    }
}

/// `D = L*/L` with `q([x]) = (x, x - W_2)/2 + (W_2, W_2)/8` and `sigma` the
/// signature of the lattice.
pub fn ascs_from_lattice(lat: &LatticeData) -> Result<AscsTriple> {
    let n = lat.rank();
    let lq = LatticeQuotient::new(n, identity(n), &lat.dual_rows())?;
    let d = FiniteAbelianGroup::new(lq.orders())?;
    let w = lat.w2_big();
    let shift = lat.dual_pairing(&w, &w) * rational(1, 8);
    let q = QuadraticForm::from_fn(d.clone(), |x| {
        let y = lq.lift(&x.0);
        let y_minus_w: Vec<BigInt> = y.iter().zip(&w).map(|(a, b)| a - b).collect();
        QmodZ::new(lat.dual_pairing(&y, &y_minus_w) * rational(1, 2) + &shift)
    })?;
    AscsTriple::new(q, lat.signature().rem_euclid(8) as u8)
}

/// `G = L_0*/L_0` for the even sublattice `L_0 = {x : (W_2, x) even}`, with
/// `q([x]) = (x, x)/2` and `f` the class of `L \ L_0`.
pub fn psm_from_even_sublattice(lat: &LatticeData) -> Result<PointedSpinModular> {
    let n = lat.rank();
    let parity: Vec<u8> = lat.w2.iter().map(|&x| x.rem_euclid(2) as u8).collect();
    let Some(j) = parity.iter().position(|&p| p == 1) else {
        return Err(Error::NotSpin);
    };
    // coordinates Y = 2 y with y dual coordinates: L_0* = span(2 e_i, w2)
    let mut gens: IntMatrix = identity(n).into_iter().map(|r| r.into_iter().map(|x| x * 2).collect()).collect();
    gens.push(lat.w2_big());
    let rows = lat.dual_rows();
    let twice_image = |x: &[BigInt]| -> Vec<BigInt> {
        (0..n).map(|c| x.iter().zip(&rows).map(|(a, r)| a * &r[c]).sum::<BigInt>() * 2).collect()
    };
    let sub: IntMatrix = even_kernel_basis(&parity).iter().map(|x| twice_image(x)).collect();
    let lq = LatticeQuotient::new(n, gens, &sub)?;
    let g = FiniteAbelianGroup::new(lq.orders())?;
    let q = QuadraticForm::from_fn(g.clone(), |x| {
        let y = lq.lift(&x.0);
        QmodZ::new(lat.dual_pairing(&y, &y) * rational(1, 8))
    })?;
    let ej: Vec<BigInt> = (0..n).map(|i| BigInt::from(i64::from(i == j))).collect();
    let f = GroupElement(lq.project(&twice_image(&ej)).expect("L is inside L_0*"));
    PointedSpinModular::new(q, f)
}

/// `F(psm_from_even_sublattice(lat))` agrees with `ascs_from_lattice(lat)`.
pub fn lattice_round_trip(lat: &LatticeData) -> Result<bool> {
    let direct = ascs_from_lattice(lat)?;
    let psm = psm_from_even_sublattice(lat)?;
    let via = functor_f(&psm)?;
    Ok(ascs_isomorphism(&via.ascs, &direct, DEFAULT_ENUMERATION_CAP.max(direct.group().size()))?.is_some())
}

/// `P^T G P` and `P^T w2` for an integer change of basis `P`.
pub fn change_basis(lat: &LatticeData, p: &[Vec<i64>]) -> Result<LatticeData> {
    let n = lat.rank();
    let g = &lat.gram;
    let gram = (0..n)
        .map(|i| {
            (0..n).map(|j| (0..n).map(|a| (0..n).map(|b| p[a][i] * g[a][b] * p[b][j]).sum::<i64>()).sum()).collect()
        })
        .collect();
    let w2 = (0..n).map(|i| (0..n).map(|a| p[a][i] * lat.w2[a]).sum()).collect();
    LatticeData::new(gram, w2)
}

/// Determinant of the Gram matrix, from the rational inverse.
pub fn lattice_determinant(lat: &LatticeData) -> i64 {
    let n = lat.rank();
    let lq = LatticeQuotient::new(n, identity(n), &lat.dual_rows()).expect("nondegenerate");
    let size: u64 = lq.orders().iter().product();
    let sign = if inertia(&LinkingMatrix::new(lat.gram.clone()).expect("validated")).b_minus % 2 == 1 { -1 } else { 1 };
    sign * size.to_i64().expect("fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::enumerate_pointed;

    fn el(v: &[u64]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    fn psm(orders: Vec<u64>, gram: &[&[(i64, i64)]], f: &[u64]) -> PointedSpinModular {
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let m: Vec<Vec<Rational>> = gram.iter().map(|r| r.iter().map(|&(a, b)| rational(a, b)).collect()).collect();
        PointedSpinModular::new(QuadraticForm::from_gram(g, &m).unwrap(), GroupElement(f.to_vec())).unwrap()
    }

    fn z4() -> PointedSpinModular {
        psm(vec![4], &[&[(1, 8)]], &[2])
    }

    fn z2z2() -> PointedSpinModular {
        psm(vec![2, 2], &[&[(1, 4), (0, 1)], &[(0, 1), (1, 4)]], &[1, 1])
    }

    fn z12() -> PointedSpinModular {
        psm(vec![12], &[&[(1, 24)]], &[6])
    }

    #[test]
    fn functor_examples() {
        let i = functor_f(&z4()).unwrap();
        assert_eq!(i.ascs.group().size(), 1);
        assert_eq!(i.ascs.sigma(), 1);
        assert_eq!(i.a, el(&[1]));
        let i = functor_f(&z2z2()).unwrap();
        assert_eq!(i.ascs.group().size(), 1);
        assert_eq!(i.ascs.sigma(), 2);
        let i = functor_f(&z12()).unwrap();
        assert_eq!(i.ascs.group().canonical_orders(), [3]);
        assert_eq!(i.even, [el(&[0]), el(&[2]), el(&[4]), el(&[6]), el(&[8]), el(&[10])]);
    }

    #[test]
    fn functor_preserves_gauss_sums() {
        for orders in [vec![4], vec![2, 2], vec![12], vec![2, 4]] {
            for p in enumerate_pointed(&FiniteAbelianGroup::new(orders).unwrap()) {
                let i = functor_f(&p).unwrap();
                assert_eq!(i.ascs.form().gauss_sum(1), p.form().gauss_sum(1));
            }
        }
    }

    #[test]
    fn kernel_automorphism_examples() {
        let phi = kernel_automorphism(&z4()).unwrap();
        let g = FiniteAbelianGroup::cyclic(4);
        assert_eq!(phi.apply(&g, &el(&[1])), el(&[3]));
        assert_eq!(phi.apply(&g, &el(&[2])), el(&[2]));
        let p = z2z2();
        let phi = kernel_automorphism(&p).unwrap();
        assert_eq!(phi.apply(p.group(), &el(&[1, 0])), el(&[0, 1]));
        let p = z12();
        let phi = kernel_automorphism(&p).unwrap();
        for x in functor_f(&p).unwrap().even {
            assert_eq!(phi.apply(p.group(), &x), x);
        }
    }

    #[test]
    fn two_to_one() {
        let r = two_to_one_check(&z4(), 64).unwrap();
        assert_eq!((r.pointed, r.ascs), (2, 1));
        assert!(two_to_one_check(&z2z2(), 64).unwrap().holds());
        assert!(two_to_one_check(&z12(), 64).unwrap().holds());
        for p in enumerate_pointed(&FiniteAbelianGroup::new(vec![2, 4]).unwrap()) {
            assert!(two_to_one_check(&p, 64).unwrap().holds());
        }
    }

    #[test]
    fn lattice_examples() {
        let a = ascs_from_lattice(&LatticeData::new(vec![vec![2]], vec![0]).unwrap()).unwrap();
        assert_eq!(a.group().orders(), [2]);
        assert_eq!(a.form().value(&el(&[1])), QmodZ::from_ratio(1, 4));
        assert_eq!(a.sigma(), 1);
        let a = ascs_from_lattice(&LatticeData::new(vec![vec![1]], vec![1]).unwrap()).unwrap();
        assert_eq!(a.group().size(), 1);
        assert_eq!(a.form().value_at(0), QmodZ::from_ratio(1, 8));
        assert!(a.is_spin());
        let a = ascs_from_lattice(&LatticeData::new(vec![vec![1, 0], vec![0, -1]], vec![1, 1]).unwrap()).unwrap();
        assert_eq!(a.sigma(), 0);
        assert!(a.form().value_at(0).is_zero());
        assert!(!a.is_spin());
        assert!(matches!(LatticeData::new(vec![vec![1]], vec![0]), Err(Error::InvalidLattice(_))));
        assert!(matches!(LatticeData::new(vec![vec![1, 1], vec![1, 1]], vec![1, 1]), Err(Error::InvalidLattice(_))));
    }

    #[test]
    fn even_sublattice_examples() {
        let p = psm_from_even_sublattice(&LatticeData::new(vec![vec![1]], vec![1]).unwrap()).unwrap();
        assert_eq!(p.group().canonical_orders(), [4]);
        assert_eq!(*p.form(), *z4().form());
        assert_eq!(p.fermion(), &el(&[2]));
        let lat = LatticeData::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![1, 1, 1]).unwrap();
        let p = psm_from_even_sublattice(&lat).unwrap();
        assert_eq!(p.group().size(), 4);
        assert_eq!(p.form().signature().unwrap(), 3);
        assert_eq!(psm_from_even_sublattice(&LatticeData::new(vec![vec![2]], vec![0]).unwrap()), Err(Error::NotSpin));
    }

    #[test]
    fn round_trips() {
        for (gram, w2) in [
            (vec![vec![1]], vec![1]),
            (vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![1, 1, 1]),
            (vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 1]], vec![1, 1, 1]),
            (vec![vec![3]], vec![1]),
            (vec![vec![2, 1], vec![1, 3]], vec![0, 1]),
            (vec![vec![1, 0], vec![0, 5]], vec![3, 1]),
        ] {
            let lat = LatticeData::new(gram, w2).unwrap();
            assert!(lattice_round_trip(&lat).unwrap(), "{lat:?}");
        }
    }

    #[test]
    fn lattice_triple_is_basis_independent() {
        let lat = LatticeData::new(vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 3]], vec![1, 1, 1]).unwrap();
        let p = vec![vec![1, 2, -1], vec![0, 1, 3], vec![0, 0, 1]];
        let lat2 = change_basis(&lat, &p).unwrap();
        assert_eq!(lattice_determinant(&lat2), -3);
        let a = ascs_from_lattice(&lat).unwrap();
        let b = ascs_from_lattice(&lat2).unwrap();
        assert!(ascs_isomorphism(&a, &b, 64).unwrap().is_some());
    }

    use proptest::prelude::*;

    fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
        let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for &(i, j, k) in ops {
            let (i, j) = (i % n, j % n);
            if i != j {
                for r in p.iter_mut() {
                    r[j] += k * r[i];
                }
            }
        }
        p
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn basis_change_preserves_triple(
            diag in proptest::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(3), Just(-3), Just(5)], 1..4),
            shifts in proptest::collection::vec(-2i64..3, 3),
            ops in proptest::collection::vec((0usize..3, 0usize..3, -2i64..3), 0..4),
        ) {
            let n = diag.len();
            let gram: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
            let w2: Vec<i64> = (0..n).map(|i| 1 + 2 * shifts[i]).collect();
            let lat = LatticeData::new(gram, w2).unwrap();
            let moved = change_basis(&lat, &unimodular(n, &ops)).unwrap();
            let a = ascs_from_lattice(&lat).unwrap();
            let b = ascs_from_lattice(&moved).unwrap();
            prop_assert!(ascs_isomorphism(&a, &b, 1 << 12).unwrap().is_some());
            prop_assert!(lattice_round_trip(&moved).unwrap());
        }
    }
}
