use super::field::{eval_qpoly, FieldElement, NumberField};
use crate::error::{Error, Result};

/// A field automorphism, determined by the image of the generator `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldAutomorphism {
    field: NumberField,
    image: FieldElement,
    order: usize,
}

impl FieldAutomorphism {
    /// Checks that `image` is a root of the minimal polynomial and computes
    /// the exact order.
    pub fn new(image: FieldElement) -> Result<Self> {
        let field = image.field().clone();
        if !eval_qpoly(field.min_poly(), &image).is_zero() {
            return Err(Error::NotAnAutomorphism);
        }
        let t = field.generator();
        let mut sigma = FieldAutomorphism {
            field: field.clone(),
            image: image.clone(),
            order: 0,
        };
        // iterate sigma^k(t) until it returns to t; the automorphism group
        // has at most `degree` elements
        let mut cur = image;
        for k in 1..=field.degree() {
            if cur == t {
                sigma.order = k;
                return Ok(sigma);
            }
            cur = sigma.apply_unchecked(&cur);
        }
        Err(Error::NotAnAutomorphism)
    }

    pub fn identity(field: &NumberField) -> Self {
        FieldAutomorphism {
            field: field.clone(),
            image: field.generator(),
            order: 1,
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn generator_image(&self) -> &FieldElement {
        &self.image
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.apply_unchecked(a))
    }

    /// Substitutes the generator image into the coordinate polynomial of `a`.
    pub(crate) fn apply_unchecked(&self, a: &FieldElement) -> FieldElement {
        if self.order == 1 {
            return a.clone();
        }
        eval_qpoly(&a.to_poly(), &self.image)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FieldAutomorphism) -> Result<Self> {
        let img = self.apply(&other.image)?;
        Self::new(img)
    }

    pub fn pow(&self, k: usize) -> Self {
        let k = k % self.order;
        let mut cur = self.field.generator();
        for _ in 0..k {
            cur = self.apply_unchecked(&cur);
        }
        let order = self.order / num_integer::gcd(self.order, k.max(1)).max(1);
        FieldAutomorphism {
            field: self.field.clone(),
            image: cur,
            order: if k == 0 { 1 } else { order },
        }
    }

    /// All powers `id, σ, ..., σ^(n-1)`.
    pub fn powers(&self) -> Vec<FieldAutomorphism> {
        (0..self.order).map(|k| self.pow(k)).collect()
    }
}

/// Applies `σ` to `a`, reporting a field mismatch.
pub fn apply_automorphism(sigma: &FieldAutomorphism, a: &FieldElement) -> Result<FieldElement> {
    sigma.apply(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_on_gaussian() {
        let k = NumberField::gaussian();
        let conj = FieldAutomorphism::new(-&k.generator()).unwrap();
        assert_eq!(conj.order(), 2);
        let a = k.from_int_coords(&[3, 2]);
        assert_eq!(conj.apply(&a).unwrap(), k.from_int_coords(&[3, -2]));
        let id = FieldAutomorphism::identity(&k);
        assert_eq!(id.apply(&a).unwrap(), a);
    }

    #[test]
    fn zeta5_squaring_has_order_4() {
        let k = NumberField::cyclotomic_prime(5).unwrap();
        let z = k.generator();
        let sigma = FieldAutomorphism::new(z.pow(2)).unwrap();
        assert_eq!(sigma.order(), 4);
        assert_eq!(sigma.apply(&z).unwrap(), z.pow(2));
        assert_eq!(sigma.pow(2).order(), 2);
        assert_eq!(sigma.pow(2).generator_image(), &z.pow(4));
        // oracle: four substitutions return t
        let mut cur = z.clone();
        for _ in 0..4 {
            cur = eval_qpoly(&cur.to_poly(), &z.pow(2));
        }
        assert_eq!(cur, z);
    }

    #[test]
    fn non_root_rejected() {
        let k = NumberField::gaussian();
        assert_eq!(
            FieldAutomorphism::new(k.from_int(2)),
            Err(Error::NotAnAutomorphism)
        );
    }
}
