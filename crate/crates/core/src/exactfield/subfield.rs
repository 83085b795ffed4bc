use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::automorphism::FieldAutomorphism;
use super::field::{FieldElement, NumberField};
use super::linalg::solve_in_span;
use super::qpoly::{QPoly, Q};
use crate::error::{Error, Result};

/// Random combinations tried after the traces of generator powers.
const RANDOM_CANDIDATES: usize = 50;

/// A subfield `Q(θ)` of an ambient field, described by a primitive element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldDescription {
    ambient: NumberField,
    primitive: FieldElement,
    min_poly: QPoly,
}

impl SubfieldDescription {
    pub fn new(primitive: FieldElement) -> Self {
        let min_poly = primitive.min_poly();
        SubfieldDescription {
            ambient: primitive.field().clone(),
            primitive,
            min_poly,
        }
    }

    /// The prime field inside `ambient`.
    pub fn rationals_in(ambient: &NumberField) -> Self {
        Self::new(ambient.one())
    }

    /// The ambient field viewed as its own subfield.
    pub fn whole(ambient: &NumberField) -> Self {
        Self::new(ambient.generator())
    }

    pub fn ambient(&self) -> &NumberField {
        &self.ambient
    }

    pub fn primitive_element(&self) -> &FieldElement {
        &self.primitive
    }

    pub fn min_poly_over_q(&self) -> &QPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    /// Basis `1, θ, ..., θ^(e-1)` as ambient coordinate vectors.
    fn power_basis(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::with_capacity(self.degree());
        let mut cur = self.ambient.one();
        for _ in 0..self.degree() {
            out.push(cur.coords().to_vec());
            cur = &cur * &self.primitive;
        }
        out
    }

    /// Coordinates of `a` on the power basis of the primitive element, when
    /// `a` lies in this subfield.
    pub fn coordinates_of(&self, a: &FieldElement) -> Option<Vec<Q>> {
        if a.field() != &self.ambient {
            return None;
        }
        solve_in_span(&self.power_basis(), a.coords())
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        self.coordinates_of(a).is_some()
    }

    /// Rebuilds an ambient element from subfield coordinates.
    pub fn element_from_coordinates(&self, coords: &[Q]) -> FieldElement {
        let mut acc = self.ambient.zero();
        let mut pow = self.ambient.one();
        for c in coords {
            acc = &acc + &pow.scale(c);
            pow = &pow * &self.primitive;
        }
        acc
    }
}

/// Membership test with coordinates over the subfield's primitive element.
pub fn is_in_subfield(a: &FieldElement, sub: &SubfieldDescription) -> Option<Vec<Q>> {
    sub.coordinates_of(a)
}

/// Checks closure of a finite set of automorphisms under composition.
pub fn check_group(field: &NumberField, group: &[FieldAutomorphism]) -> Result<()> {
    if group.is_empty() || group.iter().any(|g| g.field() != field) {
        return Err(Error::NotAGroup);
    }
    for a in group {
        for b in group {
            let c = a.compose(b)?;
            if !group.contains(&c) {
                return Err(Error::NotAGroup);
            }
        }
    }
    Ok(())
}

/// Fixed field of a finite automorphism group, with a primitive element
/// found among traces `Σ σ(x)`.
pub fn fixed_field(
    field: &NumberField,
    group: &[FieldAutomorphism],
    seed: u64,
) -> Result<SubfieldDescription> {
    check_group(field, group)?;
    let d = field.degree();
    let target = d / group.len();
    if target == 1 {
        return Ok(SubfieldDescription::rationals_in(field));
    }
    let trace = |x: &FieldElement| {
        group
            .iter()
            .fold(field.zero(), |acc, s| &acc + &s.apply_unchecked(x))
    };
    let t = field.generator();
    let mut x = field.one();
    for _ in 1..d {
        x = &x * &t;
        let tr = trace(&x);
        if tr.min_poly().degree() == Some(target) {
            return Ok(SubfieldDescription::new(tr));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_CANDIDATES {
        let coords: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        let tr = trace(&field.from_int_coords(&coords));
        if tr.min_poly().degree() == Some(target) {
            return Ok(SubfieldDescription::new(tr));
        }
    }
    Err(Error::PrimitiveElementNotFound)
}

/// Is `a` fixed by every element of `group`?
pub fn is_fixed(a: &FieldElement, group: &[FieldAutomorphism]) -> bool {
    group.iter().all(|s| &s.apply_unchecked(a) == a)
}

impl SubfieldDescription {
    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }
}
