use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::group::{FiniteAbelianGroup, GroupElement};
use crate::error::Result;
use crate::intmat::{self, LatticeQuotient};

/// `G / H` with a linear projection and a lexicographically smallest coset
/// representative for every quotient element.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    group: FiniteAbelianGroup,
    quotient: FiniteAbelianGroup,
    images: Vec<GroupElement>,
    section: Vec<usize>,
}

impl QuotientPresentation {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn quotient(&self) -> &FiniteAbelianGroup {
        &self.quotient
    }

    pub fn project(&self, x: &GroupElement) -> GroupElement {
        let mut acc = self.quotient.zero();
        for (&c, img) in x.0.iter().zip(&self.images) {
            acc = self.quotient.add(&acc, &self.quotient.scale(c as i64, img));
        }
        acc
    }

    pub fn section(&self, y: &GroupElement) -> GroupElement {
        self.group.element(self.section_index(self.quotient.index(y)))
    }

    /// Representative (as a group index) of the quotient element with index `y`.
    pub fn section_index(&self, y: usize) -> usize {
        self.section[y]
    }

    pub fn kernel(&self) -> Vec<GroupElement> {
        let zero = self.quotient.zero();
        self.group.elements().filter(|x| self.project(x) == zero).collect()
    }
}

/// Quotient of `group` by the subgroup generated by `gens`, via the Smith
/// form of the stacked relations (cyclic orders and generators).
pub fn quotient(group: &FiniteAbelianGroup, gens: &[GroupElement]) -> Result<QuotientPresentation> {
    for g in gens {
        group.check(g)?;
    }
    let k = group.rank();
    let mut relations: intmat::IntMatrix =
        (0..k).map(|i| (0..k).map(|j| BigInt::from(if i == j { group.orders()[i] } else { 0 })).collect()).collect();
    relations.extend(gens.iter().map(|g| g.0.iter().map(|&r| BigInt::from(r)).collect()));
    let lq = LatticeQuotient::new(k, intmat::identity(k), &relations)?;
    let quotient = FiniteAbelianGroup::new(lq.orders())?;
    let images: Vec<GroupElement> = intmat::identity(k)
        .iter()
        .map(|e| GroupElement(lq.project(e).expect("generator of the ambient lattice")))
        .collect();
    let mut pres = QuotientPresentation { group: group.clone(), quotient, images, section: Vec::new() };
    let mut section = vec![usize::MAX; pres.quotient.size()];
    for (idx, x) in group.elements().enumerate() {
        let y = pres.quotient.index(&pres.project(&x));
        if section[y] == usize::MAX {
            section[y] = idx;
        }
    }
    pres.section = section;
    Ok(pres)
}

/// Elements satisfying `pred`, in enumeration order. The caller promises the
/// result is a subgroup; debug builds verify closure.
pub fn subgroup_elements<P: FnMut(&GroupElement) -> bool>(
    group: &FiniteAbelianGroup,
    mut pred: P,
) -> Vec<GroupElement> {
    let out: Vec<GroupElement> = group.elements().filter(|x| pred(x)).collect();
    #[cfg(debug_assertions)]
    {
        let mut member = vec![false; group.size()];
        for x in &out {
            member[group.index(x)] = true;
        }
        for x in &out {
            for y in &out {
                debug_assert!(member[group.index(&group.add(x, y))], "predicate does not define a subgroup");
            }
        }
    }
    out
}

/// The subgroup generated by `gens`.
pub fn generated_subgroup(group: &FiniteAbelianGroup, gens: &[GroupElement]) -> Vec<GroupElement> {
    let mut member = vec![false; group.size()];
    member[0] = true;
    let mut frontier = vec![group.zero()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = group.add(&x, g);
            let i = group.index(&y);
            if !member[i] {
                member[i] = true;
                frontier.push(y);
            }
        }
    }
    (0..group.size()).filter(|&i| member[i]).map(|i| group.element(i)).collect()
}
