//! Cyclic Galois contexts, their action on branch data, and the p-gonal
//! character `σ ↦ k` recording how `σ` rescales multiplicities.

use crate::curve::{isomorphisms_limited, BranchDatum, PGonalCurve};
use crate::error::{Error, Result};
use crate::exactfield::{fixed_field, FieldAutomorphism, NumberField, SubfieldDescription};

/// The group `⟨σ₀⟩` acting on `L`, with base field `K = L^⟨σ₀⟩`.
#[derive(Clone, Debug)]
pub struct GaloisContext {
    field: NumberField,
    generator: FieldAutomorphism,
    base: SubfieldDescription,
}

impl GaloisContext {
    pub fn new(generator: FieldAutomorphism, seed: u64) -> Result<Self> {
        let field = generator.field().clone();
        let base = fixed_field(&field, &generator.powers(), seed)?;
        Ok(GaloisContext {
            field,
            generator,
            base,
        })
    }

    /// Like [`GaloisContext::new`], checking a declared order.
    pub fn with_order(generator: FieldAutomorphism, order: usize, seed: u64) -> Result<Self> {
        if generator.order() != order {
            return Err(Error::NotAGroup);
        }
        Self::new(generator, seed)
    }

    /// The trivial context on `field`.
    pub fn trivial(field: &NumberField) -> Self {
        GaloisContext {
            field: field.clone(),
            generator: FieldAutomorphism::identity(field),
            base: SubfieldDescription::whole(field),
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn generator(&self) -> &FieldAutomorphism {
        &self.generator
    }

    pub fn order(&self) -> usize {
        self.generator.order()
    }

    pub fn base(&self) -> &SubfieldDescription {
        &self.base
    }

    /// `[id, σ₀, σ₀², …]`.
    pub fn elements(&self) -> Vec<FieldAutomorphism> {
        self.generator.powers()
    }

    /// The subgroup generated by `σ₀^e`, with its fixed field as base.
    pub fn subgroup(&self, e: usize, seed: u64) -> Result<Self> {
        Self::new(self.generator.pow(e), seed)
    }
}

/// Branch points moved by `σ`, multiplicities kept.
pub fn curve_galois_image(sigma: &FieldAutomorphism, c: &PGonalCurve) -> Result<PGonalCurve> {
    if sigma.field() != c.field() {
        return Err(Error::FieldMismatch);
    }
    if sigma.is_identity() {
        return Ok(c.clone());
    }
    let branches = c
        .branches()
        .iter()
        .map(|b| Ok(BranchDatum::new(b.point.galois_image(sigma)?, b.multiplicity)))
        .collect::<Result<Vec<_>>>()?;
    c.with_branches(c.field().clone(), branches)
}

/// `values[j]` is the exponent `k` attached to `σ₀^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PGonalCharacter {
    p: u64,
    values: Vec<u64>,
}

impl PGonalCharacter {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&k| k == 1)
    }

    /// `|im χ|`, the multiplicative order of `χ(σ₀)`.
    pub fn image_size(&self) -> usize {
        self.values
            .iter()
            .skip(1)
            .position(|&k| k == 1)
            .map_or(self.values.len(), |i| i + 1)
    }
}

/// Computes the character from witnesses `C → C^σ` for every group element.
///
/// With `resolve_ambiguity`, curves admitting witnesses with several
/// exponents get the character generated by the least exponent for `σ₀`;
/// otherwise that situation is an error.
pub fn pgonal_character(
    c: &PGonalCurve,
    ctx: &GaloisContext,
    resolve_ambiguity: bool,
) -> Result<PGonalCharacter> {
    if c.field() != ctx.field() {
        return Err(Error::FieldMismatch);
    }
    let p = c.p();
    let all: Vec<u64> = (1..p).collect();
    let mut options: Vec<Vec<u64>> = Vec::new();
    for (j, sigma) in ctx.elements().iter().enumerate() {
        let conj = curve_galois_image(sigma, c)?;
        let mut ks = Vec::new();
        for &k in &all {
            // the identity witnesses k = 1 for the trivial element
            if (j == 0 && k == 1) || !isomorphisms_limited(c, &conj, &[k], 1)?.is_empty() {
                ks.push(k);
            }
        }
        if ks.is_empty() {
            return Err(Error::NotQuasiRational(j));
        }
        if ks.len() > 1 && !resolve_ambiguity {
            return Err(Error::AmbiguousCharacter(j));
        }
        options.push(ks);
    }
    let n = options.len();
    let k1 = if n > 1 { options[1][0] } else { 1 };
    let mut values = Vec::with_capacity(n);
    let mut cur = 1u64;
    for (j, ks) in options.iter().enumerate() {
        if !ks.contains(&cur) {
            return Err(Error::CharacterNotMultiplicative(j));
        }
        values.push(cur);
        cur = (cur * k1) % p;
    }
    if n > 0 && cur != 1 {
        return Err(Error::CharacterNotMultiplicative(0));
    }
    Ok(PGonalCharacter { p, values })
}

/// `K₁ = L^{ker χ}` and the context `Γ₁ = ker χ` over it.
pub fn stabilizer_field(
    chi: &PGonalCharacter,
    ctx: &GaloisContext,
    seed: u64,
) -> Result<(SubfieldDescription, GaloisContext)> {
    let e = chi.image_size();
    let sub = ctx.subgroup(e, seed)?;
    debug_assert_eq!(sub.base().degree(), e * ctx.base().degree());
    Ok((sub.base().clone(), sub))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldElement;

    fn conj_ctx() -> GaloisContext {
        let k = NumberField::gaussian();
        GaloisContext::new(FieldAutomorphism::new(-&k.generator()).unwrap(), 0).unwrap()
    }

    #[test]
    fn conjugation_of_branch_data() {
        let ctx = conj_ctx();
        let k = ctx.field().clone();
        let i = k.generator();
        let two_i = i.scale(&crate::exactfield::q(2));
        let c = PGonalCurve::from_finite(
            3,
            &k,
            &[(i.clone(), 1), (-&i, 2), (two_i.clone(), 2), (-&two_i, 1)],
        )
        .unwrap();
        let img = curve_galois_image(ctx.generator(), &c).unwrap();
        let want = PGonalCurve::from_finite(
            3,
            &k,
            &[(-&i, 1), (i.clone(), 2), (-&two_i, 2), (two_i.clone(), 1)],
        )
        .unwrap();
        assert!(img.same_data(&want));
        let id = FieldAutomorphism::identity(&k);
        assert!(curve_galois_image(&id, &c).unwrap().same_data(&c));
    }

    #[test]
    fn order_two_character_with_swapped_classes() {
        let ctx = conj_ctx();
        let k = ctx.field().clone();
        let i = k.generator();
        let two_i = i.scale(&crate::exactfield::q(2));
        let c = PGonalCurve::from_finite(
            3,
            &k,
            &[(i.clone(), 1), (-&i, 2), (two_i.clone(), 1), (-&two_i, 2)],
        )
        .unwrap();
        // four points always carry extra Möbius symmetries, so k is not unique
        assert_eq!(pgonal_character(&c, &ctx, false), Err(Error::AmbiguousCharacter(0)));
        let a = k.from_int_coords(&[1, 1]);
        let b = k.from_int_coords(&[2, 3]);
        let conj = ctx.generator();
        let c = PGonalCurve::from_finite(
            3,
            &k,
            &[
                (i.clone(), 1),
                (-&i, 2),
                (a.clone(), 1),
                (conj.apply(&a).unwrap(), 2),
                (b.clone(), 1),
                (conj.apply(&b).unwrap(), 2),
            ],
        )
        .unwrap();
        let chi = pgonal_character(&c, &ctx, false).unwrap();
        assert_eq!(chi.values(), &[1, 2]);
        assert_eq!(chi.image_size(), 2);
        let (k1, g1) = stabilizer_field(&chi, &ctx, 0).unwrap();
        assert_eq!(k1.degree(), 2);
        assert_eq!(g1.order(), 1);
    }

    #[test]
    fn rational_data_has_trivial_character() {
        let ctx = conj_ctx();
        let k = ctx.field().clone();
        let data: Vec<(FieldElement, u64)> = [1, 2, 3, 5, 8].iter().map(|&a| (k.from_int(a), 1)).collect();
        let c = PGonalCurve::from_finite(2, &k, &data).unwrap();
        let chi = pgonal_character(&c, &ctx, false).unwrap();
        assert!(chi.is_trivial());
        let (k1, g1) = stabilizer_field(&chi, &ctx, 0).unwrap();
        assert!(k1.is_rationals());
        assert_eq!(g1.order(), 2);
    }

    #[test]
    fn injective_character_over_zeta5() {
        let k = NumberField::cyclotomic_prime(5).unwrap();
        let z = k.generator();
        let ctx = GaloisContext::new(FieldAutomorphism::new(z.pow(2)).unwrap(), 0).unwrap();
        let mut data = Vec::new();
        for j in 1..=4u64 {
            data.push((z.pow(j), j));
            data.push((z.pow(j).scale(&crate::exactfield::q(2)), (2 * j) % 5));
        }
        let c = PGonalCurve::from_finite(5, &k, &data).unwrap();
        assert_eq!(c.genus(), 12);
        let chi = pgonal_character(&c, &ctx, false).unwrap();
        assert_eq!(chi.values(), &[1, 3, 4, 2]);
        assert_eq!(chi.image_size(), 4);
        let (k1, g1) = stabilizer_field(&chi, &ctx, 0).unwrap();
        assert_eq!(k1.degree(), 4);
        assert_eq!(g1.order(), 1);
    }

    #[test]
    fn non_quasi_rational_data() {
        let ctx = conj_ctx();
        let k = ctx.field().clone();
        let i = k.generator();
        let data: Vec<(FieldElement, u64)> = vec![
            (k.from_int(0), 1),
            (k.from_int(1), 1),
            (i.clone(), 1),
            (k.from_int(3), 1),
            (k.from_int(7), 1),
        ];
        let c = PGonalCurve::from_finite(2, &k, &data).unwrap();
        assert_eq!(pgonal_character(&c, &ctx, false), Err(Error::NotQuasiRational(1)));
    }
}
