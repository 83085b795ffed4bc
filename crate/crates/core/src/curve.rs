//! Branch data of cyclic p-gonal curves `y^p = ∏ (x − a_j)^{n_j}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{Embedding, FieldElement, NumberField};
use crate::moebius::{MobiusMap, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BranchDatum {
    pub point: ProjPoint,
    pub multiplicity: u64,
}

impl BranchDatum {
    pub fn new(point: ProjPoint, multiplicity: u64) -> Self {
        BranchDatum { point, multiplicity }
    }
}

/// A validated curve. For `p = 2` with an odd number of finite points and
/// no point at infinity listed, the branch at infinity is implied: it is
/// stored like any other branch but left out of serialization and of the
/// polynomial.
#[derive(Clone, Debug)]
pub struct PGonalCurve {
    p: u64,
    field: NumberField,
    branches: Vec<BranchDatum>,
    implied_infinity: bool,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PGonalCurve {
    pub fn new(p: u64, field: NumberField, branches: Vec<BranchDatum>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if branches.iter().any(|b| b.point.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        let mut curve = PGonalCurve {
            p,
            field,
            branches,
            implied_infinity: false,
        };
        let has_inf = curve.branches.iter().any(|b| b.point.is_infinity());
        let sum: u64 = curve.branches.iter().map(|b| b.multiplicity).sum();
        if p == 2 && !has_inf && sum % 2 == 1 && curve.branches.iter().all(|b| b.multiplicity == 1) {
            let inf = ProjPoint::infinity(&curve.field);
            curve.branches.push(BranchDatum::new(inf, 1));
            curve.implied_infinity = true;
        }
        curve_validate(&curve)?;
        Ok(curve)
    }

    /// Convenience constructor from finite points.
    pub fn from_finite(p: u64, field: &NumberField, data: &[(FieldElement, u64)]) -> Result<Self> {
        let branches = data
            .iter()
            .map(|(a, n)| BranchDatum::new(ProjPoint::finite(a.clone()), *n))
            .collect();
        Self::new(p, field.clone(), branches)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// All branches, including an implied point at infinity.
    pub fn branches(&self) -> &[BranchDatum] {
        &self.branches
    }

    /// The branches as they are written in documents.
    pub fn listed_branches(&self) -> &[BranchDatum] {
        if self.implied_infinity {
            &self.branches[..self.branches.len() - 1]
        } else {
            &self.branches
        }
    }

    pub fn implied_infinity(&self) -> bool {
        self.implied_infinity
    }

    /// Number of branch points, counting infinity.
    pub fn m(&self) -> usize {
        self.branches.len()
    }

    pub fn genus(&self) -> i64 {
        curve_genus(self)
    }

    pub fn has_infinity(&self) -> bool {
        self.branches.iter().any(|b| b.point.is_infinity())
    }

    /// Multiplicity at a point, if it is a branch point.
    pub fn multiplicity_at(&self, pt: &ProjPoint) -> Option<u64> {
        self.branches
            .iter()
            .find(|b| &b.point == pt)
            .map(|b| b.multiplicity)
    }

    /// Equality of branch data as sets.
    pub fn same_data(&self, other: &PGonalCurve) -> bool {
        if self.p != other.p || self.field != other.field || self.m() != other.m() {
            return false;
        }
        let map = other.data_map();
        self.branches
            .iter()
            .all(|b| map.get(&b.point) == Some(&b.multiplicity))
    }

    pub(crate) fn data_map(&self) -> HashMap<&ProjPoint, u64> {
        self.branches
            .iter()
            .map(|b| (&b.point, b.multiplicity))
            .collect()
    }

    /// Branches sorted by point, for canonical output.
    pub fn sorted_branches(&self) -> Vec<BranchDatum> {
        let mut v = self.listed_branches().to_vec();
        v.sort_by(|a, b| a.point.lex_cmp(&b.point));
        v
    }

    /// Replaces the branch data, keeping `p` and re-validating.
    pub fn with_branches(&self, field: NumberField, branches: Vec<BranchDatum>) -> Result<Self> {
        Self::new(self.p, field, branches)
    }

    /// The same data viewed in a larger field.
    pub fn embed(&self, e: &Embedding) -> Result<Self> {
        if e.is_identity() && e.source() == &self.field {
            return Ok(self.clone());
        }
        let branches = self
            .branches
            .iter()
            .map(|b| Ok(BranchDatum::new(b.point.embed(e)?, b.multiplicity)))
            .collect::<Result<Vec<_>>>()?;
        self.with_branches(e.target().clone(), branches)
    }

    /// Builds a curve without checking any invariant. Documents and test
    /// harnesses use this to carry data that a certificate check must reject.
    pub fn new_unvalidated(p: u64, field: NumberField, branches: Vec<BranchDatum>) -> Self {
        PGonalCurve {
            p,
            field,
            branches,
            implied_infinity: false,
        }
    }

    /// Branch points `T(a_j)` with multiplicities `k·n_j mod p`.
    pub fn transport(&self, t: &MobiusMap, k: u64) -> Result<Self> {
        if k == 0 || k >= self.p {
            return Err(Error::MultiplicityOutOfRange(k));
        }
        let branches = self
            .branches
            .iter()
            .map(|b| Ok(BranchDatum::new(t.apply(&b.point)?, (k * b.multiplicity) % self.p)))
            .collect::<Result<Vec<_>>>()?;
        self.with_branches(t.field().clone(), branches)
    }

    /// Display form of the homogenized model, e.g. `y^3 z^3 = (x - (1)z)(x - (2)z)^2 ...`.
    pub fn render_equation(&self) -> String {
        let mut factors = Vec::new();
        let mut deg = 0;
        for b in self.sorted_branches() {
            let Some(a) = b.point.affine() else { continue };
            deg += b.multiplicity;
            let base = if a.is_zero() {
                "x".to_string()
            } else {
                format!("(x - ({a})z)")
            };
            if b.multiplicity == 1 {
                factors.push(base);
            } else {
                factors.push(format!("{base}^{}", b.multiplicity));
            }
        }
        let p = self.p;
        let (lhs, rhs_z) = if deg >= p {
            (if deg == p { format!("y^{p}") } else { format!("y^{p} z^{}", deg - p) }, 0)
        } else {
            (format!("y^{p}"), p - deg)
        };
        if rhs_z > 0 {
            factors.push(format!("z^{rhs_z}"));
        }
        format!("{lhs} = {}", factors.join(" "))
    }
}

impl fmt::Display for PGonalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} over {}: ", self.p, self.field)?;
        let parts: Vec<String> = self
            .sorted_branches()
            .iter()
            .map(|b| format!("({}, {})", b.point, b.multiplicity))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Checks every curve invariant.
pub fn curve_validate(c: &PGonalCurve) -> Result<()> {
    let p = c.p;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    for b in &c.branches {
        if b.multiplicity == 0 || b.multiplicity >= p {
            return Err(Error::MultiplicityOutOfRange(b.multiplicity));
        }
    }
    let mut seen = std::collections::HashSet::new();
    for b in &c.branches {
        if !seen.insert(&b.point) {
            return Err(Error::DuplicateBranchPoint);
        }
    }
    let sum: u64 = c.branches.iter().map(|b| b.multiplicity).sum();
    if sum % p != 0 {
        return Err(Error::BadMultiplicitySum);
    }
    let g = curve_genus(c);
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(())
}

pub fn genus_from(m: usize, p: u64) -> i64 {
    (m as i64 - 2) * (p as i64 - 1) / 2
}

pub fn curve_genus(c: &PGonalCurve) -> i64 {
    genus_from(c.m(), c.p)
}

/// Branch points grouped by multiplicity, each class sorted.
pub fn multiplicity_classes(c: &PGonalCurve) -> BTreeMap<u64, Vec<ProjPoint>> {
    let mut out: BTreeMap<u64, Vec<ProjPoint>> = BTreeMap::new();
    for b in &c.branches {
        out.entry(b.multiplicity).or_default().push(b.point.clone());
    }
    for v in out.values_mut() {
        v.sort_by(|a, b| a.lex_cmp(b));
    }
    out
}

/// Moves a branch at infinity to a finite point with `x ↦ 1/(x − s)`, where
/// `s` is the least non-negative integer that is neither a branch point nor
/// in `avoid`. Curves without a branch at infinity come back unchanged.
pub fn normalize_infinity(c: &PGonalCurve, avoid: &[ProjPoint]) -> Result<(PGonalCurve, MobiusMap)> {
    let k = c.field();
    if !c.has_infinity() {
        return Ok((c.clone(), MobiusMap::identity(k)));
    }
    let mut s = 0i64;
    loop {
        let pt = ProjPoint::from_int(k, s);
        if c.multiplicity_at(&pt).is_none() && !avoid.contains(&pt) {
            break;
        }
        s += 1;
    }
    let m = MobiusMap::from_ints(k, 0, 1, 1, -s)?;
    Ok((c.transport(&m, 1)?, m))
}

/// A polynomial over a number field, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldPoly {
    coeffs: Vec<FieldElement>,
}

impl FieldPoly {
    /// Ascending coefficients; must be non-empty.
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty());
        FieldPoly { coeffs }
    }

    pub fn one(field: &NumberField) -> Self {
        FieldPoly {
            coeffs: vec![field.one()],
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Multiplies by `x − a`.
    fn mul_linear(&self, a: &FieldElement) -> Self {
        let k = a.field();
        let mut out = vec![k.zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = &out[i + 1] + c;
            out[i] = &out[i] - &(c * a);
        }
        FieldPoly { coeffs: out }
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = x.field().zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let term = if mono.is_empty() {
                format!("({c})")
            } else if c.is_one() {
                mono
            } else {
                format!("({c})*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// The expanded product `∏ (x − a_j)^{n_j}` over the finite branch points.
pub fn curve_polynomial(c: &PGonalCurve) -> Result<FieldPoly> {
    if c.has_infinity() && !c.implied_infinity {
        return Err(Error::InfinityPresent);
    }
    let mut poly = FieldPoly::one(c.field());
    for b in c.listed_branches() {
        let a = b.point.affine().expect("finite point");
        for _ in 0..b.multiplicity {
            poly = poly.mul_linear(a);
        }
    }
    Ok(poly)
}

/// A Möbius map carrying the first curve's branch points onto the second's,
/// with multiplicities multiplied by `k` modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismWitness {
    pub map: MobiusMap,
    pub scaling_exponent: u64,
}

/// Does `w` carry the data of `c1` onto the data of `c2`?
pub fn witness_holds(c1: &PGonalCurve, c2: &PGonalCurve, w: &IsomorphismWitness) -> bool {
    let p = c1.p;
    let k = w.scaling_exponent;
    if c2.p != p || c1.m() != c2.m() || k == 0 || k >= p {
        return false;
    }
    if w.map.field() != c1.field() || c1.field() != c2.field() {
        return false;
    }
    carries_data(c1, &c2.data_map(), p, w)
}

fn carries_data(c1: &PGonalCurve, target: &HashMap<&ProjPoint, u64>, p: u64, w: &IsomorphismWitness) -> bool {
    let k = w.scaling_exponent;
    c1.branches.iter().all(|b| match w.map.apply(&b.point) {
        Ok(img) => target.get(&img) == Some(&((k * b.multiplicity) % p)),
        Err(_) => false,
    })
}

/// The three source points used to pin down candidate maps: the first points
/// when branches are sorted by class size, multiplicity and coordinates.
fn anchor_points(c: &PGonalCurve) -> Vec<BranchDatum> {
    let classes = multiplicity_classes(c);
    let mut order: Vec<(usize, u64)> = classes.iter().map(|(n, v)| (v.len(), *n)).collect();
    order.sort();
    let mut out = Vec::new();
    for (_, n) in order {
        for pt in &classes[&n] {
            if out.len() == 4 {
                return out;
            }
            out.push(BranchDatum::new(pt.clone(), n));
        }
    }
    out
}

/// `(a₃ − a₀)(a₂ − a₁) / ((a₃ − a₁)(a₂ − a₀))`, the image of the fourth anchor
/// under the map sending the first three to `0, ∞, 1`, when all are finite.
fn standard_coordinate(anchors: &[BranchDatum]) -> Option<FieldElement> {
    if anchors.len() < 4 {
        return None;
    }
    let a: Vec<&FieldElement> = anchors.iter().map(|b| b.point.affine()).collect::<Option<_>>()?;
    let num = &(a[3] - a[0]) * &(a[2] - a[1]);
    let den = &(a[3] - a[1]) * &(a[2] - a[0]);
    num.try_div(&den).ok()
}

/// The point with standard coordinate `lambda` relative to the finite
/// triple `t`, i.e. the image of the fourth anchor under the map carrying
/// the anchors to `t`. `None` when some target is infinite.
fn fourth_image(lambda: &FieldElement, t: [&ProjPoint; 3]) -> Option<Result<ProjPoint>> {
    let (t0, t1, t2) = (t[0].affine()?, t[1].affine()?, t[2].affine()?);
    let d21 = t2 - t1;
    let d20 = t2 - t0;
    let ld20 = lambda * &d20;
    let num = &(t0 * &d21) - &(t1 * &ld20);
    let den = &d21 - &ld20;
    Some(ProjPoint::new(num, den))
}

fn class_profile(c: &PGonalCurve, k: u64) -> Vec<(u64, usize)> {
    let mut v: Vec<(u64, usize)> = multiplicity_classes(c)
        .iter()
        .map(|(n, pts)| ((n * k) % c.p, pts.len()))
        .collect();
    v.sort();
    v
}

/// Every witness `c1 → c2` whose exponent lies in `exponents`, each map listed
/// once, ordered by exponent and then by search order.
pub fn isomorphisms(c1: &PGonalCurve, c2: &PGonalCurve, exponents: &[u64]) -> Result<Vec<IsomorphismWitness>> {
    isomorphisms_limited(c1, c2, exponents, usize::MAX)
}

/// As [`isomorphisms`], stopping once `limit` witnesses are found.
pub fn isomorphisms_limited(
    c1: &PGonalCurve,
    c2: &PGonalCurve,
    exponents: &[u64],
    limit: usize,
) -> Result<Vec<IsomorphismWitness>> {
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch);
    }
    let mut found: Vec<IsomorphismWitness> = Vec::new();
    if c1.p != c2.p || c1.m() != c2.m() {
        return Ok(found);
    }
    let p = c1.p;
    let anchors = anchor_points(c1);
    let target = c2.data_map();
    let target_profile = class_profile(c2, 1);
    let lambda = standard_coordinate(&anchors);
    for &k in exponents {
        if k == 0 || k >= p || class_profile(c1, k) != target_profile {
            continue;
        }
        let candidates: Vec<Vec<&ProjPoint>> = anchors
            .iter()
            .map(|a| {
                let want = (a.multiplicity * k) % p;
                c2.branches
                    .iter()
                    .filter(|b| b.multiplicity == want)
                    .map(|b| &b.point)
                    .collect()
            })
            .collect();
        for t0 in &candidates[0] {
            for t1 in &candidates[1] {
                if t1 == t0 {
                    continue;
                }
                for t2 in &candidates[2] {
                    if t2 == t0 || t2 == t1 {
                        continue;
                    }
                    // the fourth anchor rejects almost every wrong triple
                    if let Some(fourth) = anchors.get(3) {
                        let img = match &lambda {
                            Some(l) => fourth_image(l, [t0, t1, t2]),
                            None => None,
                        };
                        let img = match img {
                            Some(pt) => pt?,
                            None => MobiusMap::from_three_points(
                                [&anchors[0].point, &anchors[1].point, &anchors[2].point],
                                [t0, t1, t2],
                            )?
                            .apply(&fourth.point)?,
                        };
                        if target.get(&img) != Some(&((fourth.multiplicity * k) % p)) {
                            continue;
                        }
                    }
                    let map = MobiusMap::from_three_points(
                        [&anchors[0].point, &anchors[1].point, &anchors[2].point],
                        [t0, t1, t2],
                    )?;
                    let w = IsomorphismWitness {
                        map,
                        scaling_exponent: k,
                    };
                    if carries_data(c1, &target, p, &w) && !found.iter().any(|f| f.map == w.map) {
                        found.push(w);
                        if found.len() >= limit {
                            return Ok(found);
                        }
                    }
                }
            }
        }
    }
    Ok(found)
}

/// The first witness found with exponents tried in increasing order.
pub fn are_isomorphic(c1: &PGonalCurve, c2: &PGonalCurve) -> Result<Option<IsomorphismWitness>> {
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch);
    }
    for k in 1..c1.p {
        if let Some(w) = isomorphisms_limited(c1, c2, &[k], 1)?.into_iter().next() {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Multiplicative inverse modulo the prime `p`.
pub fn inverse_mod(k: u64, p: u64) -> u64 {
    (1..p).find(|j| (j * k) % p == 1).expect("unit modulo a prime")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::QPoly;

    fn ints(p: u64, data: &[(i64, u64)]) -> Result<PGonalCurve> {
        let k = NumberField::rationals();
        let d: Vec<(FieldElement, u64)> = data.iter().map(|(a, n)| (k.from_int(*a), *n)).collect();
        PGonalCurve::from_finite(p, &k, &d)
    }

    fn coeff_ints(poly: &FieldPoly) -> Vec<i64> {
        poly.coeffs()
            .iter()
            .map(|c| {
                let r = c.as_rational().unwrap();
                assert!(r.is_integer());
                i64::try_from(r.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn validation_examples() {
        let c = ints(2, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]).unwrap();
        assert_eq!(c.genus(), 2);
        assert!(c.implied_infinity());
        let k = NumberField::gaussian();
        let i = k.generator();
        let short = PGonalCurve::from_finite(3, &k, &[(i.clone(), 1), (-&i, 2)]);
        assert_eq!(short.unwrap_err(), Error::GenusTooSmall(0));
        assert_eq!(ints(3, &[(1, 1), (2, 1), (3, 1)]).unwrap_err(), Error::GenusTooSmall(1));
        assert_eq!(ints(3, &[(1, 1), (2, 1), (3, 2)]).unwrap_err(), Error::BadMultiplicitySum);
        assert_eq!(ints(4, &[(1, 1), (2, 3)]).unwrap_err(), Error::NotPrime(4));
        assert_eq!(
            ints(3, &[(1, 1), (1, 2), (2, 1), (3, 2)]).unwrap_err(),
            Error::DuplicateBranchPoint
        );
    }

    #[test]
    fn genera_of_wootton_tuples() {
        assert_eq!(genus_from(3, 7), 3);
        assert_eq!(genus_from(4, 5), 4);
        let klein = PGonalCurve::new(
            7,
            NumberField::rationals(),
            vec![
                BranchDatum::new(ProjPoint::from_int(&NumberField::rationals(), 0), 2),
                BranchDatum::new(ProjPoint::from_int(&NumberField::rationals(), 1), 1),
                BranchDatum::new(ProjPoint::infinity(&NumberField::rationals()), 4),
            ],
        )
        .unwrap();
        assert_eq!(klein.genus(), 3);
        assert_eq!(multiplicity_classes(&klein).len(), 3);
        assert_eq!(curve_polynomial(&klein).unwrap_err(), Error::InfinityPresent);
    }

    #[test]
    fn classes() {
        let c = ints(3, &[(1, 1), (2, 1), (3, 2), (4, 2)]).unwrap();
        let cl = multiplicity_classes(&c);
        let q = NumberField::rationals();
        assert_eq!(cl[&1], vec![ProjPoint::from_int(&q, 1), ProjPoint::from_int(&q, 2)]);
        assert_eq!(cl[&2], vec![ProjPoint::from_int(&q, 3), ProjPoint::from_int(&q, 4)]);
    }

    #[test]
    fn polynomials() {
        let c = ints(2, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]).unwrap();
        assert_eq!(coeff_ints(&curve_polynomial(&c).unwrap()), vec![0, 24, -50, 35, -10, 1]);
        let c = ints(3, &[(1, 1), (-1, 2), (2, 2), (-2, 1)]).unwrap();
        // (x-1)(x+1)^2(x-2)^2(x+2), expanded independently over Q
        let mut oracle = QPoly::one();
        for (a, n) in [(1, 1), (-1, 2), (2, 2), (-2, 1)] {
            for _ in 0..n {
                oracle = oracle.mul(&QPoly::from_ints(&[-a, 1]));
            }
        }
        let got = curve_polynomial(&c).unwrap();
        let want: Vec<i64> = oracle
            .coeffs()
            .iter()
            .map(|r| i64::try_from(r.to_integer()).unwrap())
            .collect();
        assert_eq!(coeff_ints(&got), want);
        let k = NumberField::cyclotomic_prime(5).unwrap();
        let z = k.generator();
        let roots: Vec<(FieldElement, u64)> = (0..5).map(|j| (z.pow(j), 1)).collect();
        let f = PGonalCurve::from_finite(5, &k, &roots).unwrap();
        let poly = curve_polynomial(&f).unwrap();
        let mut want = vec![k.zero(); 6];
        want[0] = k.from_int(-1);
        want[5] = k.one();
        assert_eq!(poly.coeffs(), &want[..]);
    }

    #[test]
    fn infinity_normalization() {
        let q = NumberField::rationals();
        let c = PGonalCurve::new(
            2,
            q.clone(),
            (0..5)
                .map(|j| BranchDatum::new(ProjPoint::from_int(&q, j), 1))
                .chain(std::iter::once(BranchDatum::new(ProjPoint::infinity(&q), 1)))
                .collect(),
        )
        .unwrap();
        let (n, m) = normalize_infinity(&c, &[]).unwrap();
        assert_eq!(m, MobiusMap::from_ints(&q, 0, 1, 1, -5).unwrap());
        assert!(!n.has_infinity());
        let back = n.transport(&m.inverse(), 1).unwrap();
        assert!(back.same_data(&c));
        let plain = ints(2, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1)]).unwrap();
        let (same, id) = normalize_infinity(&plain, &[]).unwrap();
        assert!(id.is_identity());
        assert!(same.same_data(&plain));
    }

    #[test]
    fn klein_infinity_moves_with_sum_preserved() {
        let q = NumberField::rationals();
        let c = PGonalCurve::new(
            7,
            q.clone(),
            vec![
                BranchDatum::new(ProjPoint::from_int(&q, 0), 2),
                BranchDatum::new(ProjPoint::from_int(&q, 1), 1),
                BranchDatum::new(ProjPoint::infinity(&q), 4),
            ],
        )
        .unwrap();
        let (n, m) = normalize_infinity(&c, &[]).unwrap();
        assert_eq!(m, MobiusMap::from_ints(&q, 0, 1, 1, -2).unwrap());
        assert!(!n.has_infinity());
        let total: u64 = n.branches().iter().map(|b| b.multiplicity).sum();
        assert_eq!(total % 7, 0);
        assert_eq!(curve_polynomial(&n).unwrap().degree(), 7);
    }

    #[test]
    fn isomorphism_examples() {
        let c = ints(3, &[(1, 1), (2, 1), (3, 2), (5, 2), (7, 1), (11, 2)]).unwrap();
        let w = are_isomorphic(&c, &c).unwrap().unwrap();
        assert!(w.map.is_identity());
        assert_eq!(w.scaling_exponent, 1);

        let q = NumberField::rationals();
        let neg = MobiusMap::from_ints(&q, -1, 0, 0, 1).unwrap();
        let c2 = c.transport(&neg, 1).unwrap();
        let w = are_isomorphic(&c, &c2).unwrap().unwrap();
        assert_eq!(w.map, neg);

        let doubled = c.transport(&MobiusMap::identity(&q), 2).unwrap();
        let w = are_isomorphic(&c, &doubled).unwrap().unwrap();
        assert_eq!(w.scaling_exponent, 2);
        assert!(w.map.is_identity());

        let other = ints(3, &[(1, 1), (2, 1), (3, 2), (5, 2), (7, 1), (13, 2)]).unwrap();
        assert!(are_isomorphic(&c, &other).unwrap().is_none());
    }

    #[test]
    fn hyperelliptic_with_implied_infinity_matches_explicit_form() {
        let q = NumberField::rationals();
        let odd = ints(2, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]).unwrap();
        let inv = MobiusMap::from_ints(&q, 0, 1, 1, 0).unwrap();
        let moved = odd.transport(&inv, 1).unwrap();
        assert!(moved.has_infinity());
        assert!(are_isomorphic(&odd, &moved).unwrap().is_some());
    }
}
