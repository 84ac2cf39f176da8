use alloc::vec;
use alloc::vec::Vec;

use super::form::QuadraticForm;
use super::group::{FiniteAbelianGroup, GroupElement};
use crate::error::{Error, Result};

/// Largest group order for which automorphisms are enumerated by brute force.
pub const DEFAULT_ENUMERATION_CAP: usize = 64;

/// Bound on search nodes, as a guard for high-rank elementary groups.
const SEARCH_NODE_LIMIT: u64 = 50_000_000;

/// A homomorphism out of `Z_{n_1} x ... x Z_{n_k}`, given by the images of
/// the standard generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    pub images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        GroupHom { images: (0..group.rank()).map(|i| group.generator(i)).collect() }
    }

    pub fn apply(&self, dst: &FiniteAbelianGroup, x: &GroupElement) -> GroupElement {
        let mut acc = dst.zero();
        for (&c, img) in x.0.iter().zip(&self.images) {
            acc = dst.add(&acc, &dst.scale(c as i64, img));
        }
        acc
    }

    /// Is the identity map of `group`.
    pub fn is_identity(&self, group: &FiniteAbelianGroup) -> bool {
        *self == Self::identity(group)
    }
}

/// `q o phi` as a form on `src`.
pub fn pullback(q: &QuadraticForm, phi: &GroupHom, src: &FiniteAbelianGroup) -> QuadraticForm {
    let dst = q.group();
    let table = src.elements().map(|x| q.raw(dst.index(&phi.apply(dst, &x)))).collect();
    QuadraticForm::from_raw_unchecked(src.clone(), q.modulus(), table)
}

/// Constraints for an isomorphism search `src -> dst`.
#[derive(Clone, Copy, Default)]
pub struct IsoConstraints<'a> {
    /// Require `dst_q o phi = src_q`.
    pub forms: Option<(&'a QuadraticForm, &'a QuadraticForm)>,
    /// Require `phi(a) = b`.
    pub point: Option<(&'a GroupElement, &'a GroupElement)>,
}

struct Search<'a, F: FnMut(&GroupHom) -> bool> {
    src: &'a FiniteAbelianGroup,
    dst: &'a FiniteAbelianGroup,
    cons: IsoConstraints<'a>,
    visit: F,
    nodes: u64,
}

impl<F: FnMut(&GroupHom) -> bool> Search<'_, F> {
    /// `pairs` lists (src index, dst index) over the subgroup generated by
    /// the first `images.len()` generators. Returns false to stop.
    fn go(&mut self, images: &mut Vec<GroupElement>, pairs: &[(usize, usize)], used: &mut [bool]) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > SEARCH_NODE_LIMIT {
            return Err(Error::EnumerationTooLarge { size: self.nodes as u128, cap: SEARCH_NODE_LIMIT as u128 });
        }
        let j = images.len();
        if j == self.src.rank() {
            let phi = GroupHom { images: images.clone() };
            if let Some((a, b)) = self.cons.point {
                if phi.apply(self.dst, a) != *b {
                    return Ok(true);
                }
            }
            return Ok((self.visit)(&phi));
        }
        let n = self.src.orders()[j];
        let gen = self.src.generator(j);
        for cand in 0..self.dst.size() {
            let y = self.dst.element(cand);
            if !self.dst.scale(n as i64, &y).0.iter().all(|&r| r == 0) {
                continue;
            }
            // extend the partial map to the next subgroup, checking injectivity
            // and form preservation on the new elements
            let mut next = Vec::with_capacity(pairs.len() * n as usize);
            next.extend_from_slice(pairs);
            let mut ok = true;
            let mut fresh = Vec::new();
            'grow: for c in 1..n {
                let sc = self.src.scale(c as i64, &gen);
                let dc = self.dst.scale(c as i64, &y);
                for &(s, d) in pairs {
                    let s2 = self.src.index(&self.src.add(&self.src.element(s), &sc));
                    let d2 = self.dst.index(&self.dst.add(&self.dst.element(d), &dc));
                    if used[d2] {
                        ok = false;
                        break 'grow;
                    }
                    if let Some((qs, qd)) = self.cons.forms {
                        if qs.value_at(s2) != qd.value_at(d2) {
                            ok = false;
                            break 'grow;
                        }
                    }
                    used[d2] = true;
                    fresh.push(d2);
                    next.push((s2, d2));
                }
            }
            if ok {
                images.push(y);
                let cont = self.go(images, &next, used)?;
                images.pop();
                if !cont {
                    for d in fresh {
                        used[d] = false;
                    }
                    return Ok(false);
                }
            }
            for d in fresh {
                used[d] = false;
            }
        }
        Ok(true)
    }
}

/// Calls `visit` on every isomorphism `src -> dst` meeting the constraints,
/// until it returns false.
pub fn for_each_isomorphism<F: FnMut(&GroupHom) -> bool>(
    src: &FiniteAbelianGroup,
    dst: &FiniteAbelianGroup,
    cons: IsoConstraints<'_>,
    cap: usize,
    visit: F,
) -> Result<()> {
    if src.size().max(dst.size()) > cap {
        return Err(Error::EnumerationTooLarge { size: src.size().max(dst.size()) as u128, cap: cap as u128 });
    }
    if src.size() != dst.size() || src.canonical_orders() != dst.canonical_orders() {
        return Ok(());
    }
    if let Some((qs, qd)) = cons.forms {
        if qs.value_at(0) != qd.value_at(0) {
            return Ok(());
        }
    }
    let mut used = vec![false; dst.size()];
    used[0] = true;
    let mut search = Search { src, dst, cons, visit, nodes: 0 };
    search.go(&mut Vec::new(), &[(0, 0)], &mut used)?;
    Ok(())
}

pub fn isomorphisms(
    src: &FiniteAbelianGroup,
    dst: &FiniteAbelianGroup,
    cons: IsoConstraints<'_>,
    cap: usize,
) -> Result<Vec<GroupHom>> {
    let mut out = Vec::new();
    for_each_isomorphism(src, dst, cons, cap, |phi| {
        out.push(phi.clone());
        true
    })?;
    Ok(out)
}

pub fn find_isomorphism(
    src: &FiniteAbelianGroup,
    dst: &FiniteAbelianGroup,
    cons: IsoConstraints<'_>,
    cap: usize,
) -> Result<Option<GroupHom>> {
    let mut found = None;
    for_each_isomorphism(src, dst, cons, cap, |phi| {
        found = Some(phi.clone());
        false
    })?;
    Ok(found)
}

/// Automorphisms of `group`, optionally preserving `q` and fixing `f`.
pub fn automorphisms(
    group: &FiniteAbelianGroup,
    q: Option<&QuadraticForm>,
    f: Option<&GroupElement>,
    cap: usize,
) -> Result<Vec<GroupHom>> {
    let cons = IsoConstraints { forms: q.map(|q| (q, q)), point: f.map(|f| (f, f)) };
    isomorphisms(group, group, cons, cap)
}
