//! Square-root adjunction `K ↦ K(√c)`.
//!
//! The algebra `A = K[u]/(u² − c)` is handled as pairs `x0 + x1·u`. A
//! primitive element `θ = t + λu` of `A` has a squarefree minimal polynomial
//! `M` over Q of degree `2[K:Q]`; `M` is irreducible exactly when `A` is a
//! field, i.e. when `c` is not a square in `K`. Otherwise a coprime split
//! `M = M1·M2` yields the idempotent `(1 ± u/r)/2` of `A ≅ K × K`, which
//! gives the root `r` directly.

use num_traits::Zero;

use super::automorphism::FieldAutomorphism;
use super::factor::find_factor;
use super::field::{eval_qpoly, FieldElement, NumberField};
use super::linalg::solve_in_span;
use super::qpoly::{QPoly, Q};
use crate::error::{Error, Result};

/// Field embedding determined by the image of the source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: NumberField,
    image: FieldElement,
}

impl Embedding {
    pub fn identity(field: &NumberField) -> Self {
        Embedding {
            source: field.clone(),
            image: field.generator(),
        }
    }

    pub fn new(source: NumberField, image: FieldElement) -> Result<Self> {
        if !eval_qpoly(source.min_poly(), &image).is_zero() {
            return Err(Error::NotAnAutomorphism);
        }
        Ok(Embedding { source, image })
    }

    pub fn source(&self) -> &NumberField {
        &self.source
    }

    pub fn target(&self) -> &NumberField {
        self.image.field()
    }

    pub fn generator_image(&self) -> &FieldElement {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.source == *self.target()
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.field() != &self.source {
            return Err(Error::FieldMismatch);
        }
        if self.is_identity() {
            return Ok(a.clone());
        }
        Ok(eval_qpoly(&a.to_poly(), &self.image))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Result<Embedding> {
        Ok(Embedding {
            source: self.source.clone(),
            image: other.apply(&self.image)?,
        })
    }
}

/// Outcome of [`adjoin_sqrt`].
#[derive(Clone, Debug)]
pub struct SqrtAdjunction {
    pub field: NumberField,
    pub embedding: Embedding,
    pub root: FieldElement,
    radicand: FieldElement,
    lambda: Q,
}

impl SqrtAdjunction {
    /// True when the field grew (the radicand was not a square).
    pub fn extended(&self) -> bool {
        !self.embedding.is_identity()
    }

    /// Extends an automorphism of the old field to the new one, fixing the
    /// adjoined root. Requires `σ(c) = c`.
    pub fn extend_automorphism(&self, sigma: &FieldAutomorphism) -> Result<FieldAutomorphism> {
        if sigma.field() != self.embedding.source() {
            return Err(Error::FieldMismatch);
        }
        if sigma.apply(&self.radicand)? != self.radicand {
            return Err(Error::RadicandNotFixed);
        }
        if !self.extended() {
            return Ok(sigma.clone());
        }
        let moved_t = self.embedding.apply(sigma.generator_image())?;
        let image = &moved_t + &self.root.scale(&self.lambda);
        FieldAutomorphism::new(image)
    }
}

#[derive(Clone)]
struct Pair {
    x0: FieldElement,
    x1: FieldElement,
}

impl Pair {
    fn mul(&self, o: &Pair, c: &FieldElement) -> Pair {
        Pair {
            x0: &(&self.x0 * &o.x0) + &(&(&self.x1 * &o.x1) * c),
            x1: &(&self.x0 * &o.x1) + &(&self.x1 * &o.x0),
        }
    }

    fn add(&self, o: &Pair) -> Pair {
        Pair {
            x0: &self.x0 + &o.x0,
            x1: &self.x1 + &o.x1,
        }
    }

    fn vector(&self) -> Vec<Q> {
        let mut v = self.x0.coords().to_vec();
        v.extend_from_slice(self.x1.coords());
        v
    }

    fn rational(k: &NumberField, a: Q) -> Pair {
        Pair {
            x0: k.from_rational(a),
            x1: k.zero(),
        }
    }
}

fn eval_at_pair(p: &QPoly, theta: &Pair, c: &FieldElement) -> Pair {
    let k = c.field();
    let mut acc = Pair::rational(k, Q::zero());
    for coeff in p.coeffs().iter().rev() {
        acc = acc.mul(theta, c).add(&Pair::rational(k, coeff.clone()));
    }
    acc
}

/// Adjoins a square root of `c ≠ 0`. If `c` is already a square the same
/// field is returned with its root; otherwise a field of twice the degree.
pub fn adjoin_sqrt(c: &FieldElement, max_degree: usize) -> Result<SqrtAdjunction> {
    if c.is_zero() {
        return Err(Error::ZeroRadicand);
    }
    let k = c.field();
    let d = k.degree();
    let t = Pair {
        x0: k.generator(),
        x1: k.zero(),
    };
    let u = Pair {
        x0: k.zero(),
        x1: k.one(),
    };

    for lambda in (1..=40).map(|l| Q::from_integer(l.into())) {
        let theta = Pair {
            x0: t.x0.clone(),
            x1: k.from_rational(lambda.clone()),
        };
        let mut powers: Vec<Vec<Q>> = Vec::with_capacity(2 * d + 1);
        let mut cur = Pair::rational(k, Q::from_integer(1.into()));
        let mut min_poly = None;
        for _ in 0..=2 * d {
            let v = cur.vector();
            if let Some(x) = solve_in_span(&powers, &v) {
                let mut coeffs: Vec<Q> = x.into_iter().map(|a| -a).collect();
                coeffs.push(Q::from_integer(1.into()));
                min_poly = Some(QPoly::new(coeffs));
                break;
            }
            powers.push(v);
            cur = cur.mul(&theta, c);
        }
        let Some(m) = min_poly else { continue };
        if m.degree() != Some(2 * d) {
            continue;
        }

        match find_factor(&m) {
            None => {
                if 2 * d > max_degree {
                    return Err(Error::DegreeTooLarge(2 * d, max_degree));
                }
                let big = NumberField::new_unchecked(m);
                let coords_in_big = |p: &Pair| -> FieldElement {
                    let x = solve_in_span(&powers[..2 * d], &p.vector())
                        .expect("power basis spans the algebra");
                    big.from_coords(x).unwrap()
                };
                let image_t = coords_in_big(&t);
                let root = coords_in_big(&u);
                let embedding = Embedding::new(k.clone(), image_t)?;
                debug_assert_eq!(&root * &root, embedding.apply(c)?);
                return Ok(SqrtAdjunction {
                    field: big,
                    embedding,
                    root,
                    radicand: c.clone(),
                    lambda,
                });
            }
            Some(m1) => {
                let (m2, r) = m.div_rem(&m1);
                debug_assert!(r.is_zero());
                let (g, a, _) = m1.xgcd(&m2);
                debug_assert_eq!(g, QPoly::one());
                let e = eval_at_pair(&a.mul(&m1), &theta, c);
                // e = 1/2 ± u/(2r)
                let root = e.x1.scale(&Q::from_integer(2.into())).inv()?;
                if &root * &root != *c {
                    // a split that is not the K × K idempotent; try another λ
                    continue;
                }
                return Ok(SqrtAdjunction {
                    field: k.clone(),
                    embedding: Embedding::identity(k),
                    root,
                    radicand: c.clone(),
                    lambda,
                });
            }
        }
    }
    Err(Error::PrimitiveElementNotFound)
}

/// Square root of `c` inside its own field, if one exists.
pub fn sqrt_in_field(c: &FieldElement) -> Result<Option<FieldElement>> {
    if c.is_zero() {
        return Ok(Some(c.clone()));
    }
    let adj = adjoin_sqrt(c, usize::MAX)?;
    Ok((!adj.extended()).then_some(adj.root))
}
