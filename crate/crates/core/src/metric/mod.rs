//! Finite abelian groups with quadratic forms.

mod form;
mod group;
mod hom;
mod quotient;

pub use form::{homogeneous_forms, QuadraticForm, BILINEARITY_CHECK_LIMIT};
pub use group::{parse_element, FiniteAbelianGroup, GroupElement, MAX_GROUP_SIZE};
pub use hom::{
    automorphisms, find_isomorphism, for_each_isomorphism, isomorphisms, pullback, GroupHom, IsoConstraints,
    DEFAULT_ENUMERATION_CAP,
};
pub use quotient::{generated_subgroup, quotient, subgroup_elements, QuotientPresentation};
