use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::factor::is_irreducible;
use super::linalg::solve_in_span;
use super::qpoly::{QPoly, Q};
use crate::error::{Error, Result};

/// Default cap on user-supplied field degrees.
pub const DEFAULT_MAX_DEGREE: usize = 12;

#[derive(Debug)]
struct FieldData {
    min_poly: QPoly,
    symbol: String,
    /// Coordinates of `t^(d+i)` for `i < d − 1`, used to reduce products.
    reduction: Vec<Vec<Q>>,
}

/// A number field `Q[t]/(m(t))` with `m` monic irreducible.
///
/// Cheap to clone; two handles are the same field when their minimal
/// polynomials agree.
#[derive(Clone, Debug)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.min_poly == other.0.min_poly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Builds a field after checking that `min_poly` is monic, within the
    /// degree cap, and irreducible over Q.
    pub fn new(min_poly: QPoly, max_degree: usize) -> Result<Self> {
        let d = min_poly.degree().ok_or(Error::NotMonic)?;
        if d == 0 || !min_poly.is_monic() {
            return Err(Error::NotMonic);
        }
        if d > max_degree {
            return Err(Error::DegreeTooLarge(d, max_degree));
        }
        if d == 1 {
            return Ok(Self::rationals());
        }
        if !is_irreducible(&min_poly) {
            return Err(Error::ReducibleMinPoly);
        }
        Ok(Self::new_unchecked(min_poly))
    }

    /// For minimal polynomials already known to be irreducible.
    pub(crate) fn new_unchecked(min_poly: QPoly) -> Self {
        debug_assert!(min_poly.is_monic());
        let d = min_poly.degree().unwrap_or(0);
        let mut reduction = Vec::new();
        if d > 1 {
            // t^d = −(m_0 + … + m_{d−1} t^{d−1}), then shift and reduce again
            let mut cur: Vec<Q> = min_poly.coeffs()[..d].iter().map(|c| -c).collect();
            for _ in 0..d - 1 {
                reduction.push(cur.clone());
                let top = cur[d - 1].clone();
                let mut next = vec![Q::zero(); d];
                next[1..d].clone_from_slice(&cur[..d - 1]);
                if !top.is_zero() {
                    for (n, m) in next.iter_mut().zip(min_poly.coeffs()) {
                        *n -= &top * m;
                    }
                }
                cur = next;
            }
        }
        NumberField(Arc::new(FieldData {
            min_poly,
            symbol: "t".into(),
            reduction,
        }))
    }

    /// Q itself, presented as `Q[t]/(t)`.
    pub fn rationals() -> Self {
        Self::new_unchecked(QPoly::x())
    }

    pub fn gaussian() -> Self {
        Self::new_unchecked(QPoly::from_ints(&[1, 0, 1]))
    }

    /// `Q(sqrt d)` for a non-square integer `d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        Self::new(QPoly::from_ints(&[-d, 0, 1]), DEFAULT_MAX_DEGREE)
    }

    /// `Q(zeta_n)` for prime `n`, with minimal polynomial `1 + t + ... + t^(n-1)`.
    pub fn cyclotomic_prime(n: usize) -> Result<Self> {
        Self::new(QPoly::from_ints(&vec![1; n]), DEFAULT_MAX_DEGREE)
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.degree().unwrap()
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.0.min_poly
    }

    pub fn generator_symbol(&self) -> &str {
        &self.0.symbol
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    pub fn name(&self) -> String {
        if self.is_rationals() {
            "Q".into()
        } else {
            format!("Q[t]/({})", self.0.min_poly.to_string().replace('x', "t"))
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: vec![Q::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Q::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(Q::from_integer(n.into()))
    }

    pub fn from_rational(&self, c: Q) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = c;
        e
    }

    /// The class of `t`.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&QPoly::x())
    }

    /// Reduces a polynomial in `t` modulo the minimal polynomial.
    pub fn from_poly(&self, p: &QPoly) -> FieldElement {
        let r = p.rem(self.min_poly());
        let mut coords = r.coeffs().to_vec();
        coords.resize(self.degree(), Q::zero());
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_coords(&self, coords: Vec<Q>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::SchemaError {
                path: "coords".into(),
                message: format!("expected {} coordinates, got {}", self.degree(), coords.len()),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            coords,
        })
    }

    pub fn from_int_coords(&self, coords: &[i64]) -> FieldElement {
        let mut c: Vec<Q> = coords.iter().map(|&x| Q::from_integer(x.into())).collect();
        c.resize(self.degree(), Q::zero());
        FieldElement {
            field: self.clone(),
            coords: c,
        }
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// An element of a [`NumberField`], stored by coordinates on `1, t, ..., t^(d-1)`.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Q>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// `Some(c)` when the element is the rational constant `c`.
    pub fn as_rational(&self) -> Option<Q> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    pub fn to_poly(&self) -> QPoly {
        QPoly::new(self.coords.clone())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 2 {
            // (x + y t)(x − b y − y t) = x² − b x y + c y² for t² + b t + c
            let m = self.field.min_poly().coeffs();
            let (c, b) = (&m[0], &m[1]);
            let (x, y) = (&self.coords[0], &self.coords[1]);
            let norm = x * x - b * x * y + c * y * y;
            let inv = norm.recip();
            return Ok(FieldElement {
                field: self.field.clone(),
                coords: vec![(x - b * y) * &inv, -(y * &inv)],
            });
        }
        let (g, s, _) = self.to_poly().xgcd(self.field.min_poly());
        debug_assert!(g.degree() == Some(0));
        Ok(self.field.from_poly(&s))
    }

    pub fn scale(&self, c: &Q) -> Self {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Minimal polynomial over Q, by the first linear dependency among powers.
    pub fn min_poly(&self) -> QPoly {
        let d = self.field.degree();
        let mut powers: Vec<Vec<Q>> = vec![self.field.one().coords];
        let mut cur = self.field.one();
        for _ in 1..=d {
            cur = &cur * self;
            if let Some(x) = solve_in_span(&powers, &cur.coords) {
                let mut c: Vec<Q> = x.into_iter().map(|v| -v).collect();
                c.push(Q::one());
                return QPoly::new(c);
            }
            powers.push(cur.coords.clone());
        }
        unreachable!("powers of an element span at most the field degree")
    }

    /// Lexicographic key used for deterministic ordering of branch data.
    pub fn lex_key(&self) -> &[Q] {
        &self.coords
    }
}

/// Evaluates a polynomial over Q at a field element.
pub fn eval_qpoly(p: &QPoly, at: &FieldElement) -> FieldElement {
    let mut acc = at.field.zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * at) + &at.field.from_rational(c.clone());
    }
    acc
}

/// The four field operations with explicit error reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn elt_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch in addition");
        FieldElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch in subtraction");
        FieldElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "field mismatch in multiplication");
        let d = self.field.degree();
        if d == 1 {
            return self.field.from_rational(&self.coords[0] * &rhs.coords[0]);
        }
        let mut prod = vec![Q::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let (low, high) = prod.split_at_mut(d);
        for (h, row) in high.iter().zip(&self.field.0.reduction) {
            if h.is_zero() {
                continue;
            }
            for (l, r) in low.iter_mut().zip(row) {
                if !r.is_zero() {
                    *l += h * r;
                }
            }
        }
        prod.truncate(d);
        FieldElement {
            field: self.field.clone(),
            coords: prod,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_poly().to_string().replace('x', "t");
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::qpoly::q;

    #[test]
    fn create_fields() {
        let qi = NumberField::new(QPoly::from_ints(&[1, 0, 1]), 12).unwrap();
        assert_eq!(qi.degree(), 2);
        let rat = NumberField::new(QPoly::from_ints(&[0, 1]), 12).unwrap();
        assert!(rat.is_rationals());
        assert_eq!(
            NumberField::new(QPoly::from_ints(&[-4, 0, 1]), 12),
            Err(Error::ReducibleMinPoly)
        );
        assert_eq!(
            NumberField::new(QPoly::from_ints(&[1, 0, 2]), 12),
            Err(Error::NotMonic)
        );
        let mut big = vec![0i64; 14];
        big[0] = 2;
        big[13] = 1;
        assert_eq!(
            NumberField::new(QPoly::from_ints(&big), 12),
            Err(Error::DegreeTooLarge(13, 12))
        );
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = NumberField::gaussian();
        let a = k.from_int_coords(&[1, 1]);
        let b = k.from_int_coords(&[1, -1]);
        assert_eq!(&a * &b, k.from_int(2));
        let i = k.generator();
        assert_eq!(i.inv().unwrap(), -&i);
        assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sqrt2_square() {
        let k = NumberField::quadratic(2).unwrap();
        let a = k.from_int_coords(&[1, 1]);
        assert_eq!(&a * &a, k.from_int_coords(&[3, 2]));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = NumberField::gaussian().one();
        let b = NumberField::quadratic(2).unwrap().one();
        assert_eq!(elt_arith(&a, &b, ArithOp::Add), Err(Error::FieldMismatch));
        assert_eq!(elt_arith(&a, &a, ArithOp::Div).unwrap(), a);
    }

    #[test]
    fn min_poly_of_zeta5_trace() {
        let k = NumberField::cyclotomic_prime(5).unwrap();
        let z = k.generator();
        let s = &z + &z.pow(4);
        assert_eq!(s.min_poly(), QPoly::from_ints(&[-1, 1, 1]));
        assert_eq!(k.from_rational(q(3)).min_poly(), QPoly::from_ints(&[-3, 1]));
    }
}
