//! Points of P¹ and Möbius transformations over a number field.
//!
//! Composition follows function notation: `f.compose(&g)` is `f ∘ g`, so
//! `g` acts first.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{Embedding, FieldAutomorphism, FieldElement, NumberField};

/// A point `(x : z)` of P¹, kept normalized: `z = 1` for finite points and
/// `(1 : 0)` for infinity, so structural equality is projective equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    x: FieldElement,
    z: FieldElement,
}

impl ProjPoint {
    pub fn new(x: FieldElement, z: FieldElement) -> Result<Self> {
        if x.field() != z.field() {
            return Err(Error::FieldMismatch);
        }
        if z.is_zero() {
            if x.is_zero() {
                return Err(Error::ZeroPoint);
            }
            return Ok(Self::infinity(x.field()));
        }
        let x = x.try_div(&z)?;
        let one = z.field().one();
        Ok(ProjPoint { x, z: one })
    }

    pub fn finite(x: FieldElement) -> Self {
        let one = x.field().one();
        ProjPoint { x, z: one }
    }

    pub fn infinity(field: &NumberField) -> Self {
        ProjPoint {
            x: field.one(),
            z: field.zero(),
        }
    }

    pub fn from_int(field: &NumberField, n: i64) -> Self {
        Self::finite(field.from_int(n))
    }

    pub fn field(&self) -> &NumberField {
        self.x.field()
    }

    pub fn is_infinity(&self) -> bool {
        self.z.is_zero()
    }

    /// The affine coordinate, if finite.
    pub fn affine(&self) -> Option<&FieldElement> {
        (!self.is_infinity()).then_some(&self.x)
    }

    pub fn x(&self) -> &FieldElement {
        &self.x
    }

    pub fn z(&self) -> &FieldElement {
        &self.z
    }

    pub fn galois_image(&self, sigma: &FieldAutomorphism) -> Result<Self> {
        if self.is_infinity() {
            if sigma.field() != self.field() {
                return Err(Error::FieldMismatch);
            }
            return Ok(self.clone());
        }
        Ok(Self::finite(sigma.apply(&self.x)?))
    }

    pub fn embed(&self, e: &Embedding) -> Result<Self> {
        if self.is_infinity() {
            if e.source() != self.field() {
                return Err(Error::FieldMismatch);
            }
            return Ok(Self::infinity(e.target()));
        }
        Ok(Self::finite(e.apply(&self.x)?))
    }

    /// `x1 z2 − x2 z1`; zero exactly when the points coincide.
    fn det(&self, other: &ProjPoint) -> FieldElement {
        &(&self.x * &other.z) - &(&other.x * &self.z)
    }

    /// Total order: finite points by coordinate vector, then infinity.
    pub fn lex_cmp(&self, other: &ProjPoint) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => self.x.lex_key().cmp(other.x.lex_key()),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.x)
        }
    }
}

/// Cross-ratio `(p1, p2; p3, p4)`; `None` if a denominator vanishes.
pub fn cross_ratio(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint, p4: &ProjPoint) -> Option<FieldElement> {
    let num = &p1.det(p3) * &p2.det(p4);
    let den = &p1.det(p4) * &p2.det(p3);
    num.try_div(&den).ok()
}

/// The map `x ↦ (a x + b) / (c x + d)`, stored as an unnormalized matrix.
#[derive(Clone, Debug)]
pub struct MobiusMap {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

impl PartialEq for MobiusMap {
    /// Projective equality: the two matrices are proportional.
    fn eq(&self, other: &Self) -> bool {
        let v = self.entries();
        let w = other.entries();
        if v[0].field() != w[0].field() {
            return false;
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if &v[i] * &w[j] != &v[j] * &w[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl Eq for MobiusMap {}

impl MobiusMap {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        let f = a.field();
        if b.field() != f || c.field() != f || d.field() != f {
            return Err(Error::FieldMismatch);
        }
        let m = MobiusMap { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(m)
    }

    pub fn from_ints(field: &NumberField, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(
            field.from_int(a),
            field.from_int(b),
            field.from_int(c),
            field.from_int(d),
        )
    }

    pub fn identity(field: &NumberField) -> Self {
        MobiusMap {
            a: field.one(),
            b: field.zero(),
            c: field.zero(),
            d: field.one(),
        }
    }

    pub fn field(&self) -> &NumberField {
        self.a.field()
    }

    /// Row-major `[a, b, c, d]`.
    pub fn entries(&self) -> [FieldElement; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    pub fn det(&self) -> FieldElement {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field())
    }

    /// True when the matrix is a scalar multiple of the identity *as stored*.
    pub fn is_scalar_matrix(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        MobiusMap {
            a: &self.a * s,
            b: &self.b * s,
            c: &self.c * s,
            d: &self.d * s,
        }
    }

    /// Rescales so the first nonzero entry (row-major) is 1.
    pub fn normalized(&self) -> Self {
        let lead = self
            .entries()
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("nonsingular matrix has a nonzero entry");
        self.scale(&lead.inv().unwrap())
    }

    pub fn apply(&self, pt: &ProjPoint) -> Result<ProjPoint> {
        if pt.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let x = &(&self.a * &pt.x) + &(&self.b * &pt.z);
        let z = &(&self.c * &pt.x) + &(&self.d * &pt.z);
        ProjPoint::new(x, z)
    }

    /// Matrix product `self · other`, i.e. `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, o: &MobiusMap) -> Self {
        MobiusMap {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    /// Projective inverse via the adjugate.
    pub fn inverse(&self) -> Self {
        MobiusMap {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// Exact matrix inverse (adjugate divided by the determinant).
    pub fn matrix_inverse(&self) -> Self {
        let di = self.det().inv().expect("nonsingular");
        self.inverse().scale(&di)
    }

    pub fn matrix_add(&self, o: &MobiusMap) -> MobiusMatrix {
        MobiusMatrix([
            &self.a + &o.a,
            &self.b + &o.b,
            &self.c + &o.c,
            &self.d + &o.d,
        ])
    }

    /// Entry-wise action of a field automorphism.
    pub fn galois_image(&self, sigma: &FieldAutomorphism) -> Result<Self> {
        Ok(MobiusMap {
            a: sigma.apply(&self.a)?,
            b: sigma.apply(&self.b)?,
            c: sigma.apply(&self.c)?,
            d: sigma.apply(&self.d)?,
        })
    }

    pub fn embed(&self, e: &Embedding) -> Result<Self> {
        Ok(MobiusMap {
            a: e.apply(&self.a)?,
            b: e.apply(&self.b)?,
            c: e.apply(&self.c)?,
            d: e.apply(&self.d)?,
        })
    }

    /// The map sending `p1, p2, p3` to `0, 1, ∞`.
    fn to_standard(p1: &ProjPoint, p2: &ProjPoint, p3: &ProjPoint) -> Result<Self> {
        let f = p1.field();
        if p2.field() != f || p3.field() != f {
            return Err(Error::FieldMismatch);
        }
        if p1 == p2 || p2 == p3 || p1 == p3 {
            return Err(Error::DegenerateTriple);
        }
        // rows are the linear forms vanishing at p1 and p3, balanced at p2
        let alpha = p2.det(p3);
        let beta = p2.det(p1);
        MobiusMap::new(
            &alpha * &p1.z,
            -&(&alpha * &p1.x),
            &beta * &p3.z,
            -&(&beta * &p3.x),
        )
    }

    /// The unique map with `sources[i] ↦ targets[i]`.
    pub fn from_three_points(sources: [&ProjPoint; 3], targets: [&ProjPoint; 3]) -> Result<Self> {
        let s = Self::to_standard(sources[0], sources[1], sources[2])?;
        let t = Self::to_standard(targets[0], targets[1], targets[2])?;
        t.inverse().compose(&s)
    }
}

/// A possibly singular 2×2 matrix, used while averaging.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMatrix(pub [FieldElement; 4]);

impl MobiusMatrix {
    pub fn zero(field: &NumberField) -> Self {
        MobiusMatrix([field.zero(), field.zero(), field.zero(), field.zero()])
    }

    pub fn from_map(m: &MobiusMap) -> Self {
        MobiusMatrix(m.entries())
    }

    pub fn add(&self, o: &MobiusMatrix) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        MobiusMatrix([a + e, b + f, c + g, d + h])
    }

    pub fn mul(&self, o: &MobiusMatrix) -> Self {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        MobiusMatrix([
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        ])
    }

    pub fn det(&self) -> FieldElement {
        let [a, b, c, d] = &self.0;
        &(a * d) - &(b * c)
    }

    pub fn galois_image(&self, sigma: &FieldAutomorphism) -> Result<Self> {
        let [a, b, c, d] = &self.0;
        Ok(MobiusMatrix([
            sigma.apply(a)?,
            sigma.apply(b)?,
            sigma.apply(c)?,
            sigma.apply(d)?,
        ]))
    }

    pub fn identity(field: &NumberField) -> Self {
        MobiusMatrix([field.one(), field.zero(), field.zero(), field.one()])
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let [a, b, c, d] = &self.0;
        MobiusMatrix([a * s, b * s, c * s, d * s])
    }

    /// Exact inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let di = self.det().inv().ok()?;
        let [a, b, c, d] = &self.0;
        Some(MobiusMatrix([d * &di, -&(b * &di), -&(c * &di), a * &di]))
    }

    /// The scalar `c` when the matrix is `c·I`.
    pub fn scalar_value(&self) -> Option<FieldElement> {
        let [a, b, c, d] = &self.0;
        (b.is_zero() && c.is_zero() && a == d).then(|| a.clone())
    }

    pub fn embed(&self, e: &Embedding) -> Result<Self> {
        let [a, b, c, d] = &self.0;
        Ok(MobiusMatrix([e.apply(a)?, e.apply(b)?, e.apply(c)?, e.apply(d)?]))
    }

    pub fn into_map(self) -> Result<MobiusMap> {
        let [a, b, c, d] = self.0;
        MobiusMap::new(a, b, c, d)
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn mobius_apply(m: &MobiusMap, pt: &ProjPoint) -> Result<ProjPoint> {
    m.apply(pt)
}

pub fn mobius_compose(m1: &MobiusMap, m2: &MobiusMap) -> Result<MobiusMap> {
    m1.compose(m2)
}

pub fn mobius_inverse(m: &MobiusMap) -> MobiusMap {
    m.inverse()
}

pub fn mobius_galois_image(sigma: &FieldAutomorphism, m: &MobiusMap) -> Result<MobiusMap> {
    m.galois_image(sigma)
}

pub fn mobius_from_three_points(pairs: [(&ProjPoint, &ProjPoint); 3]) -> Result<MobiusMap> {
    MobiusMap::from_three_points(
        [pairs[0].0, pairs[1].0, pairs[2].0],
        [pairs[0].1, pairs[1].1, pairs[2].1],
    )
}
